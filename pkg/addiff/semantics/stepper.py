"""
Explicit operational semantics of an activity diagram.

A state records the last executed node, its action label, the variable
values and the token marking. Markings are always stored stabilized: after
an action has run, pseudo nodes fire until none is enabled, so tokens only
rest on edges into actions, final nodes and waiting joins.
"""

import itertools
import logging
import random
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ..core.models.base import StabilizationError, StateConstructionError
from ..core.models.diagram import ActivityDiagram, Node
from ..core.models.enums import NodeKind
from ..core.models.expr import Value, evaluate, format_value
from ..core.models.state import FIN_LABEL, INIT_LABEL, AdState

logger = logging.getLogger(__name__)


class StateSpace:
    """Successor computation for one validated diagram, with a successor cache"""

    def __init__(self, ad: ActivityDiagram):
        self.ad = ad
        self.nodes: Dict[str, Node] = ad.node_map()
        self.outgoing: Dict[str, List[int]] = {node.id: ad.outgoing(node.id) for node in ad.nodes}
        self.incoming: Dict[str, List[int]] = {node.id: ad.incoming(node.id) for node in ad.nodes}
        self.local_domains = {decl.name: decl.domain for decl in ad.local_vars}
        self.routing_nodes = [node for node in ad.nodes if node.kind.is_routing]
        self._cache: Dict[AdState, Tuple[AdState, ...]] = {}

        initials = ad.nodes_of_kind(NodeKind.INITIAL)
        if len(initials) != 1:
            raise StateConstructionError(f"diagram '{ad.name}' needs exactly one initial node")
        self.initial_node = initials[0]

    # markings

    def _enabled(self, tokens: Set[int]) -> List[Node]:
        enabled = []
        for node in self.routing_nodes:
            incoming = self.incoming[node.id]
            if node.kind is NodeKind.JOIN:
                if incoming and all(edge in tokens for edge in incoming):
                    enabled.append(node)
            elif any(edge in tokens for edge in incoming):
                enabled.append(node)
        return enabled

    def _emit(self, tokens: Set[int], edge: int, node_id: str) -> None:
        if edge in tokens:
            raise StateConstructionError(
                f"unsafe marking: {self.ad.transitions[edge].label} already holds a token", node=node_id
            )
        tokens.add(edge)

    def _fire(self, node: Node, tokens: Set[int], env: Mapping[str, Value]) -> None:
        incoming = self.incoming[node.id]
        outgoing = self.outgoing[node.id]

        if node.kind is NodeKind.JOIN:
            tokens.difference_update(incoming)
            self._emit(tokens, outgoing[0], node.id)
            return

        consumed = next(edge for edge in incoming if edge in tokens)
        tokens.discard(consumed)
        if node.kind is NodeKind.FORK:
            for edge in outgoing:
                self._emit(tokens, edge, node.id)
        elif node.kind is NodeKind.MERGE:
            self._emit(tokens, outgoing[0], node.id)
        else:
            chosen = [edge for edge in outgoing if evaluate(self.ad.transitions[edge].guard, env) is True]
            if not chosen:
                raise StateConstructionError(f"no guard of decision '{node.id}' holds", node=node.id)
            self._emit(tokens, chosen[0], node.id)

    def stabilize(
        self, marking: Iterable[int], env: Mapping[str, Value], rng: Optional[random.Random] = None
    ) -> Tuple[int, ...]:
        """
        Fire enabled pseudo nodes until none is enabled.

        Args:
            marking: Transitions holding a token
            env: Variable values guards are evaluated on
            rng: Picks the firing order at random when given

        Returns:
            The stable marking, sorted

        Raises:
            StabilizationError: If a marking recurs before the tokens come to rest
            StateConstructionError: On an unsafe marking or a decision with no true guard
        """
        tokens = set(marking)
        seen = {frozenset(tokens)}
        while True:
            enabled = self._enabled(tokens)
            if not enabled:
                return tuple(sorted(tokens))
            node = rng.choice(enabled) if rng is not None else enabled[0]
            self._fire(node, tokens, env)
            key = frozenset(tokens)
            if key in seen:
                raise StabilizationError("pseudo nodes cycle without reaching an action", node=node.id)
            seen.add(key)

    # states

    def initial_states(self) -> List[AdState]:
        """One initial state per input assignment, in canonical order"""
        names = [decl.name for decl in self.ad.input_vars]
        local_values = tuple((decl.name, decl.domain.minimum) for decl in self.ad.local_vars)
        start = self.outgoing[self.initial_node.id]

        states = []
        for combo in itertools.product(*(decl.domain.values() for decl in self.ad.input_vars)):
            inputs = tuple(zip(names, combo))
            marking = self.stabilize(start, dict(inputs + local_values))
            states.append(AdState(self.initial_node.id, INIT_LABEL, inputs, local_values, marking))
        return states

    def _execute(self, state: AdState, edge: int, node: Node, rng: Optional[random.Random]) -> AdState:
        env = state.env
        updates: Dict[str, Value] = {}
        # assignments read the pre-state
        for assignment in node.assignments:
            value = evaluate(assignment.expr, env)
            domain = self.local_domains.get(assignment.var)
            if domain is None or not domain.contains(value):
                raise StateConstructionError(
                    f"value {format_value(value)} is outside the domain {domain} of '{assignment.var}'",
                    node=node.id,
                    variable=assignment.var,
                )
            updates[assignment.var] = value
        local_values = tuple((name, updates.get(name, value)) for name, value in state.local_values)

        tokens = set(state.marking)
        tokens.discard(edge)
        self._emit(tokens, self.outgoing[node.id][0], node.id)
        marking = self.stabilize(tokens, dict(state.inputs + local_values), rng)
        return AdState(node.id, node.action_name or node.id, state.inputs, local_values, marking)

    def successors(self, state: AdState, rng: Optional[random.Random] = None) -> Tuple[AdState, ...]:
        """
        Compute the states reachable in one step.

        Each token resting on an edge into an action runs that action; a token
        on an edge into a final node ends the run.

        Args:
            state: A state of this diagram
            rng: Randomizes the pseudo-node firing order when given (results are not cached)

        Returns:
            The successors in canonical order; empty only for final states

        Raises:
            StateConstructionError: On out-of-domain assignments or a deadlocked state
        """
        if state.is_final:
            return ()
        if rng is None and state in self._cache:
            return self._cache[state]

        result: Set[AdState] = set()
        for edge in state.marking:
            target = self.nodes[self.ad.transitions[edge].trg]
            if target.kind is NodeKind.FINAL:
                result.add(AdState(target.id, FIN_LABEL, state.inputs, state.local_values, ()))
            elif target.is_action:
                result.add(self._execute(state, edge, target, rng))

        if not result:
            raise StateConstructionError(f"state {state} has no successor", node=state.acnode)
        ordered = tuple(sorted(result, key=AdState.sort_key))
        if rng is None:
            self._cache[state] = ordered
        return ordered


def initial_states(ad: ActivityDiagram) -> List[AdState]:
    """Return the initial states of a validated diagram, one per input assignment"""
    return StateSpace(ad).initial_states()


def stabilize(
    marking: Iterable[int],
    env: Mapping[str, Value],
    ad: ActivityDiagram,
    rng: Optional[random.Random] = None,
) -> Tuple[int, ...]:
    """Fire the pseudo nodes of ad on a marking until none is enabled"""
    return StateSpace(ad).stabilize(marking, env, rng)


def successors(state: AdState, ad: ActivityDiagram) -> Tuple[AdState, ...]:
    """Return the one-step successors of a state of ad"""
    return StateSpace(ad).successors(state)
