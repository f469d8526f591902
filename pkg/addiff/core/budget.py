"""
Thread-safe resource budgets.

Bounds the number of explored states of the explicit algorithms and the
number of decision-diagram nodes of the symbolic ones.
"""

import logging
import threading
from typing import Optional

from .models.base import BudgetExceededError

logger = logging.getLogger(__name__)

WARN_FRACTION = 0.9


class ResourceBudget:
    """Thread-safe counter that raises once a limit is passed"""

    def __init__(self, limit: Optional[int], resource: str = "states", name: Optional[str] = None):
        """
        Initialize the budget

        Args:
            limit: Maximum allowed usage, None for unlimited
            resource: What is counted, used in error messages
            name: Optional name for logging purposes
        """
        self.limit = limit
        self.resource = resource
        self.name = name or "ResourceBudget"
        self.used = 0
        self.peak = 0
        self._warned = False
        self.lock = threading.Lock()

    def consume(self, amount: int = 1) -> None:
        """Add to the usage counter"""
        with self.lock:
            self.used += amount
            self._update(self.used)

    def observe(self, current: int) -> None:
        """Record a gauge reading such as the live node count of a manager"""
        with self.lock:
            self._update(current)

    def _update(self, value: int) -> None:
        self.peak = max(self.peak, value)
        if self.limit is None:
            return
        if value > self.limit:
            raise BudgetExceededError(
                f"{self.name}: {self.resource} budget of {self.limit} exceeded ({value})",
                resource=self.resource,
                limit=self.limit,
            )
        if not self._warned and value >= WARN_FRACTION * self.limit:
            self._warned = True
            logger.warning(f"{self.name}: {value} of {self.limit} {self.resource} used")

    def get_stats(self) -> dict:
        """
        Get current budget statistics

        Returns:
            Dictionary with current stats
        """
        with self.lock:
            return {
                "name": self.name,
                "resource": self.resource,
                "limit": self.limit,
                "used": self.used,
                "peak": self.peak,
                "remaining": None if self.limit is None else max(0, self.limit - self.used),
            }

    def reset(self) -> None:
        """Reset the usage counters"""
        with self.lock:
            self.used = 0
            self.peak = 0
            self._warned = False
            logger.debug(f"{self.name}: budget reset")
