"""
Decision-diagram manager and symbolic set algebra.

Wraps a `dd` BDD with a fixed variable order (no reordering), primed copies
of state variables, a live-node budget and the relational products used by
the differencing fixpoint. The CUDD bindings are used when `dd` was built
with them, the pure-Python `dd.autoref` otherwise.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

try:
    from dd import cudd as _bdd
except ImportError:
    from dd import autoref as _bdd
from graphviz import Digraph

from ..budget import ResourceBudget
from ..models.enums import PrimeDirection

logger = logging.getLogger(__name__)

PRIME = "'"


class SymbolicSet:
    """A set of assignments, held as the root of a BDD in one manager"""

    __slots__ = ("manager", "node")

    def __init__(self, manager: "DdManager", node):
        self.manager = manager
        self.node = node

    def _other(self, other: "SymbolicSet"):
        if other.manager is not self.manager:
            raise ValueError("symbolic sets belong to different managers")
        return other.node

    def __and__(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.manager.wrap(self.node & self._other(other))

    def __or__(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.manager.wrap(self.node | self._other(other))

    def __xor__(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.manager.wrap(self.manager.bdd.apply("xor", self.node, self._other(other)))

    def __sub__(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.manager.wrap(self.node & ~self._other(other))

    def __invert__(self) -> "SymbolicSet":
        return self.manager.wrap(~self.node)

    def implies(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.manager.wrap(self.manager.bdd.apply("->", self.node, self._other(other)))

    def iff(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.manager.wrap(self.manager.bdd.apply("<->", self.node, self._other(other)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolicSet):
            return NotImplemented
        return self.manager is other.manager and self.node == other.node

    def __hash__(self) -> int:
        return hash(self.node)

    @property
    def is_empty(self) -> bool:
        return self.node == self.manager.bdd.false

    @property
    def is_universal(self) -> bool:
        return self.node == self.manager.bdd.true

    @property
    def support(self) -> frozenset:
        return frozenset(self.manager.bdd.support(self.node))

    def __repr__(self) -> str:
        return f"SymbolicSet(support={sorted(self.support)})"


@dataclass
class FunctionalStep:
    """
    A deterministic partition in functional form.

    The partition holds exactly where guard holds and every primed bit equals
    its update, a function of the unprimed bits.
    """

    guard: SymbolicSet
    updates: Dict[str, SymbolicSet]


@dataclass
class TransitionRelation:
    """A partitioned transition relation over unprimed and primed variables"""

    parts: List[SymbolicSet] = field(default_factory=list)
    unprimed: Tuple[str, ...] = ()
    primed: Tuple[str, ...] = ()
    steps: Optional[List[Optional[FunctionalStep]]] = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.parts)


class DdManager:
    """
    Owner of one BDD and its variable order.

    A manager must not be shared between threads; concurrent computations
    use one manager each.
    """

    def __init__(self, node_budget: Optional[int] = None, name: str = "DdManager"):
        self.bdd = _bdd.BDD()
        self.bdd.configure(reordering=False)
        self.budget = ResourceBudget(node_budget, resource="nodes", name=name)
        self.order: List[str] = []
        self.primed_names: Dict[str, str] = {}

    # variables

    def declare(self, *names: str) -> None:
        """Declare variables at the bottom of the current order"""
        fresh = [name for name in names if name not in self.bdd.vars]
        if fresh:
            self.bdd.declare(*fresh)
            self.order.extend(fresh)

    def declare_state_bits(self, *names: str) -> None:
        """Declare each state bit immediately followed by its primed copy"""
        for name in names:
            self.declare(name, name + PRIME)
            self.primed_names[name] = name + PRIME

    def primed(self, name: str) -> str:
        return self.primed_names[name]

    def level(self, name: str) -> int:
        return self.bdd.level_of_var(name)

    def in_order(self, names: Iterable[str]) -> List[str]:
        return sorted(set(names), key=self.level)

    # constructors

    def wrap(self, node) -> SymbolicSet:
        self._check_budget()
        return SymbolicSet(self, node)

    def _check_budget(self) -> None:
        size = len(self.bdd)
        if self.budget.limit is not None and size > self.budget.limit:
            self.collect_garbage()
            size = len(self.bdd)
        self.budget.observe(size)

    @property
    def true(self) -> SymbolicSet:
        return SymbolicSet(self, self.bdd.true)

    @property
    def false(self) -> SymbolicSet:
        return SymbolicSet(self, self.bdd.false)

    def var(self, name: str) -> SymbolicSet:
        return SymbolicSet(self, self.bdd.var(name))

    def literal(self, name: str, value: bool) -> SymbolicSet:
        node = self.bdd.var(name)
        return SymbolicSet(self, node if value else ~node)

    def cube(self, assignment: Mapping[str, bool]) -> SymbolicSet:
        """The set fixing the given bits to the given values"""
        node = self.bdd.true
        for name, value in assignment.items():
            bit = self.bdd.var(name)
            node = node & (bit if value else ~bit)
        return self.wrap(node)

    def conjoin(self, sets: Iterable[SymbolicSet]) -> SymbolicSet:
        result = self.true
        for s in sets:
            result = result & s
        return result

    def disjoin(self, sets: Iterable[SymbolicSet]) -> SymbolicSet:
        result = self.false
        for s in sets:
            result = result | s
        return result

    # quantification and renaming

    def exists(self, s: SymbolicSet, names: Iterable[str]) -> SymbolicSet:
        support = s.support
        names = [name for name in names if name in support]
        if not names:
            return s
        return self.wrap(self.bdd.exist(names, s.node))

    def forall(self, s: SymbolicSet, names: Iterable[str]) -> SymbolicSet:
        support = s.support
        names = [name for name in names if name in support]
        if not names:
            return s
        return self.wrap(self.bdd.forall(names, s.node))

    def rename(self, s: SymbolicSet, mapping: Mapping[str, str]) -> SymbolicSet:
        support = s.support
        mapping = {old: new for old, new in mapping.items() if old in support}
        if not mapping:
            return s
        return self.wrap(self.bdd.let(mapping, s.node))

    def rename_primed(self, s: SymbolicSet, direction: PrimeDirection = PrimeDirection.TO_PRIMED) -> SymbolicSet:
        """
        Swap a set between the unprimed and the primed copy of its state bits.

        Args:
            s: Set to rename
            direction: TO_PRIMED renames x to x', TO_UNPRIMED renames x' to x

        Returns:
            The renamed set
        """
        if direction is PrimeDirection.TO_PRIMED:
            return self.rename(s, self.primed_names)
        return self.rename(s, {primed: name for name, primed in self.primed_names.items()})

    # models

    def sat_count(self, s: SymbolicSet, names: Sequence[str]) -> int:
        """
        Count the assignments to names that belong to s.

        Raises:
            ValueError: If s depends on a variable outside names
        """
        block = set(names)
        outside = s.support - block
        if outside:
            raise ValueError(f"set depends on variables outside the block: {sorted(outside)}")
        if s.is_empty:
            return 0
        return self.bdd.count(s.node, nvars=len(block))

    def pick_one(self, s: SymbolicSet, names: Sequence[str]) -> Dict[str, bool]:
        """
        Return the lexicographically smallest assignment to names in s.

        Variables are read in manager order with False before True; variables
        outside names are projected away first.

        Raises:
            ValueError: If the projection of s to names is empty
        """
        ordered = self.in_order(names)
        node = self.exists(s, s.support - set(ordered)).node
        if node == self.bdd.false:
            raise ValueError("cannot pick from an empty set")
        assignment: Dict[str, bool] = {}
        for name in ordered:
            low = self.bdd.let({name: False}, node)
            if low != self.bdd.false:
                assignment[name] = False
                node = low
            else:
                assignment[name] = True
                node = self.bdd.let({name: True}, node)
        return assignment

    def enumerate(self, s: SymbolicSet, names: Sequence[str]) -> Iterator[Dict[str, bool]]:
        """Yield every assignment to names in s, in lexicographic order"""
        ordered = self.in_order(names)
        root = self.exists(s, s.support - set(ordered)).node
        false = self.bdd.false

        def walk(node, index: int, prefix: Dict[str, bool]) -> Iterator[Dict[str, bool]]:
            if node == false:
                return
            if index == len(ordered):
                yield dict(prefix)
                return
            name = ordered[index]
            for value in (False, True):
                prefix[name] = value
                yield from walk(self.bdd.let({name: value}, node), index + 1, prefix)
            del prefix[name]

        yield from walk(root, 0, {})

    # relational products

    def compose(self, s: SymbolicSet, updates: Mapping[str, SymbolicSet]) -> SymbolicSet:
        """Substitute each variable named in updates by its function, all at once"""
        definitions = {name: f.node for name, f in updates.items()}
        if not definitions:
            return s
        return self.wrap(self.bdd.let(definitions, s.node))

    def functional_step(self, part: SymbolicSet, relation: TransitionRelation) -> Optional[FunctionalStep]:
        """
        Split a partition into its enabling guard and one update per primed bit.

        Returns:
            The functional form, or None when some enabled state has more than
            one successor under part
        """
        guard = self.exists(part, relation.primed)
        updates: Dict[str, SymbolicSet] = {}
        for name, primed in zip(relation.unprimed, relation.primed):
            high = self.exists(part & self.var(primed), relation.primed)
            # frame bits and constants keep their small form
            for candidate in (self.false, self.true, self.var(name)):
                if (guard & candidate) == high:
                    high = candidate
                    break
            updates[primed] = high
        rebuilt = guard & self.conjoin(self.var(primed).iff(f) for primed, f in updates.items())
        if rebuilt != part:
            return None
        return FunctionalStep(guard, updates)

    def functional_steps(self, relation: TransitionRelation) -> List[Optional[FunctionalStep]]:
        if relation.steps is None:
            relation.steps = [self.functional_step(part, relation) for part in relation.parts]
            kept = sum(step is not None for step in relation.steps)
            logger.debug(f"{kept} of {len(relation.parts)} partitions are functional")
        return relation.steps

    def image(self, s: SymbolicSet, relation: TransitionRelation) -> SymbolicSet:
        """Successors of s under relation, over the unprimed variables"""
        result = self.false
        for part in relation.parts:
            step = self.exists(s & part, relation.unprimed)
            result = result | step
        return self.rename_primed(result, PrimeDirection.TO_UNPRIMED)

    def rel_image_pre(
        self, z: SymbolicSet, relation1: TransitionRelation, relation2: TransitionRelation
    ) -> SymbolicSet:
        """
        Pairs where the first side has a step into z whatever the second side does.

        Computes exists s1' (T1 and forall s2' (T2 -> z')) with z' the primed
        copy of z, one partition at a time. A functional partition with guard
        g and updates f turns the quantifiers into a substitution: the second
        side contributes not g or z'[f], the first side g and U[f].

        Args:
            z: Set over the unprimed variables of both sides
            relation1: Transition relation of the first side
            relation2: Transition relation of the second side

        Returns:
            The set over the unprimed variables of both sides
        """
        z_primed = self.rename_primed(z, PrimeDirection.TO_PRIMED)
        universal = self.true
        for part, step in zip(relation2.parts, self.functional_steps(relation2)):
            if step is None:
                universal = universal & self.forall(part.implies(z_primed), relation2.primed)
            else:
                universal = universal & (~step.guard | self.compose(z_primed, step.updates))
        result = self.false
        for part, step in zip(relation1.parts, self.functional_steps(relation1)):
            if step is None:
                result = result | self.exists(part & universal, relation1.primed)
            else:
                result = result | (step.guard & self.compose(universal, step.updates))
        return result

    def collect_garbage(self) -> None:
        # CUDD collects on its own
        collect = getattr(self.bdd, "collect_garbage", None)
        if collect is not None:
            collect()

    @property
    def node_count(self) -> int:
        return len(self.bdd)

    # debugging

    def to_dot(self, s: SymbolicSet, name: str = "bdd") -> str:
        """
        Render a set as a DOT graph of its decision nodes.

        Low edges are dashed, high edges solid; complemented edges are
        expanded so every drawn node is a plain Shannon decision.
        """
        graph = Digraph(name=name, node_attr={"shape": "circle", "fontsize": "10"})
        graph.node("0", shape="box")
        graph.node("1", shape="box")
        ids: Dict[object, str] = {}

        def visit(node) -> str:
            if node == self.bdd.false:
                return "0"
            if node == self.bdd.true:
                return "1"
            if node in ids:
                return ids[node]
            top = min(self.bdd.support(node), key=self.level)
            node_id = f"n{len(ids)}"
            ids[node] = node_id
            graph.node(node_id, label=top)
            graph.edge(node_id, visit(self.bdd.let({top: False}, node)), style="dashed")
            graph.edge(node_id, visit(self.bdd.let({top: True}, node)))
            return node_id

        visit(s.node)
        return graph.source

    def get_stats(self) -> dict:
        stats = self.budget.get_stats()
        stats["variables"] = len(self.order)
        stats["live_nodes"] = len(self.bdd)
        return stats
