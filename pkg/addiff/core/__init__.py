"""
Core package: models, configuration, budgets, the .ad text format, the
decision-diagram engine and file storage.
"""

from .budget import ResourceBudget
from .config import Settings

__all__ = ["ResourceBudget", "Settings"]
