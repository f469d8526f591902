"""
Well-formedness checks for activity diagrams.

validate() reports structural and typing violations; check_guard_exclusivity()
reports decision nodes whose guards overlap or leave some assignment
uncovered. Both return diagnostics sorted by rule, element and message, so
the result does not depend on declaration order.
"""

import itertools
import logging
from collections import Counter
from math import prod
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from ..core.config import DEFAULT_DOMAIN_LIMIT, DEFAULT_ENUMERATION_LIMIT
from ..core.models.base import Diagnostic, DiagramValidationError, ExpressionError, sorted_diagnostics
from ..core.models.diagram import ActivityDiagram, Node, VarDecl
from ..core.models.enums import DomainKind, NodeKind, Rule, VarKind
from ..core.models.expr import BOOL_TYPE, Expr, evaluate, format_expr, free_vars, type_check
from ..core.symbolic.encoding import FiniteVar, compile_guards
from ..core.symbolic.manager import DdManager

logger = logging.getLogger(__name__)


class _Checker:
    """Collects the diagnostics of one diagram"""

    def __init__(self, ad: ActivityDiagram, domain_limit: int):
        self.ad = ad
        self.domain_limit = domain_limit
        self.diagnostics: List[Diagnostic] = []
        self.kinds: Dict[str, NodeKind] = {}
        for node in ad.nodes:
            self.kinds.setdefault(node.id, node.kind)

    def report(self, rule: Rule, element: str, message: str) -> None:
        self.diagnostics.append(Diagnostic(rule, element, message))

    # declarations

    def check_declarations(self) -> None:
        for name, count in Counter(d.name for d in self.ad.variables).items():
            if count > 1:
                self.report(Rule.DUPLICATE_VARIABLE, name, f"variable declared {count} times")
        for decl in self.ad.variables:
            self.check_domain(decl)

    def check_domain(self, decl: VarDecl) -> None:
        domain = decl.domain
        if domain.kind is DomainKind.INT:
            if domain.lo is None or domain.hi is None or domain.lo > domain.hi:
                self.report(Rule.INVALID_DOMAIN, decl.name, f"empty integer range {domain.lo}..{domain.hi}")
            elif domain.cardinality > self.domain_limit:
                self.report(
                    Rule.INVALID_DOMAIN,
                    decl.name,
                    f"range of {domain.cardinality} values exceeds the limit of {self.domain_limit}",
                )
        elif domain.kind is DomainKind.ENUM:
            if not domain.literals:
                self.report(Rule.INVALID_DOMAIN, decl.name, "enumeration without literals")
            for literal, count in Counter(domain.literals).items():
                if count > 1:
                    self.report(Rule.INVALID_DOMAIN, decl.name, f"literal '{literal}' repeated")

    # graph structure

    def check_nodes(self) -> None:
        for node_id, count in Counter(n.id for n in self.ad.nodes).items():
            if count > 1:
                self.report(Rule.DUPLICATE_NODE, node_id, f"node declared {count} times")

        initials = [n for n in self.ad.nodes if n.kind is NodeKind.INITIAL]
        if len(initials) != 1:
            self.report(Rule.INITIAL_COUNT, self.ad.name, f"expected exactly one initial node, found {len(initials)}")
        if not any(n.kind is NodeKind.FINAL for n in self.ad.nodes):
            self.report(Rule.FINAL_MISSING, self.ad.name, "diagram has no final node")

        for node in self.ad.nodes:
            if node.is_action and not node.action_name:
                self.report(Rule.ACTION_NAME, node.id, "action node without an action name")
            if not node.is_action and node.action_name:
                self.report(Rule.ACTION_NAME, node.id, f"{node.kind.value} node carries an action name")
            if not node.is_action and node.assignments:
                self.report(Rule.ASSIGNMENT_ON_PSEUDO, node.id, f"{node.kind.value} node has assignments")

    def check_transitions(self) -> bool:
        """Check endpoints and guards; returns False if an endpoint is unknown"""
        endpoints_ok = True
        for transition in self.ad.transitions:
            for end in (transition.src, transition.trg):
                if end not in self.kinds:
                    self.report(Rule.UNKNOWN_ENDPOINT, transition.label, f"node '{end}' is not declared")
                    endpoints_ok = False
            src = self.kinds.get(transition.src)
            trg = self.kinds.get(transition.trg)
            if src is None or trg is None:
                continue
            if src.is_pseudo and trg.is_pseudo:
                self.report(
                    Rule.ADJACENT_PSEUDO, transition.label, f"{src.value} node connected directly to {trg.value} node"
                )
            if transition.has_guard and src is not NodeKind.DECISION:
                self.report(Rule.GUARD_ON_NON_DECISION, transition.label, f"guard on a transition leaving a {src.value} node")
        return endpoints_ok

    def check_arity(self) -> None:
        """In and out degrees per node kind; an action may have several incoming transitions, an implicit merge"""
        for node in self.ad.nodes:
            ins = len(self.ad.incoming(node.id))
            outs = len(self.ad.outgoing(node.id))
            kind = node.kind
            if kind is NodeKind.INITIAL:
                if ins:
                    self.report(Rule.INITIAL_INCOMING, node.id, f"initial node has {ins} incoming transition(s)")
                if outs != 1:
                    self.report(Rule.INITIAL_OUTGOING, node.id, f"initial node needs one outgoing transition, has {outs}")
            elif kind is NodeKind.FINAL:
                if outs:
                    self.report(Rule.FINAL_OUTGOING, node.id, f"final node has {outs} outgoing transition(s)")
                if not ins:
                    self.report(Rule.ARITY, node.id, "final node has no incoming transition")
            elif kind in (NodeKind.DECISION, NodeKind.FORK):
                if ins != 1 or outs < 2:
                    self.report(Rule.ARITY, node.id, f"{kind.value} needs 1 incoming and at least 2 outgoing, has {ins}/{outs}")
            elif kind in (NodeKind.MERGE, NodeKind.JOIN):
                if ins < 2 or outs != 1:
                    self.report(Rule.ARITY, node.id, f"{kind.value} needs at least 2 incoming and 1 outgoing, has {ins}/{outs}")
            elif ins < 1 or outs != 1:
                self.report(Rule.ARITY, node.id, f"action needs at least 1 incoming and 1 outgoing, has {ins}/{outs}")

    # fork/join regions

    def successors(self, node_id: str) -> List[str]:
        return [self.ad.transitions[i].trg for i in self.ad.outgoing(node_id)]

    def explore_branch(self, fork: Node, start: str) -> Tuple[Set[str], Set[str], Set[str], bool]:
        """
        Walk one fork branch up to the joins closing it.

        Returns the nodes inside the region, the joins reached at depth zero,
        the action names met and whether the walk stayed balanced.
        """
        depth_limit = len(self.ad.nodes_of_kind(NodeKind.FORK)) + 1
        region: Set[str] = set()
        joins: Set[str] = set()
        actions: Set[str] = set()
        balanced = True
        seen: Set[Tuple[str, int]] = set()
        stack = [(start, 0)]
        while stack:
            node_id, depth = stack.pop()
            if (node_id, depth) in seen:
                continue
            seen.add((node_id, depth))
            kind = self.kinds[node_id]
            if kind is NodeKind.JOIN and depth == 0:
                joins.add(node_id)
                continue
            if node_id == fork.id:
                self.report(Rule.FORK_JOIN_BALANCE, fork.id, "a branch loops back to its own fork")
                balanced = False
                continue
            region.add(node_id)
            if kind is NodeKind.FINAL:
                self.report(Rule.FORK_JOIN_BALANCE, fork.id, f"final node '{node_id}' inside the fork region")
                balanced = False
                continue
            if kind is NodeKind.ACTION:
                actions.add(self.ad.node(node_id).action_name or node_id)
            next_depth = depth + (1 if kind is NodeKind.FORK else -1 if kind is NodeKind.JOIN else 0)
            if next_depth > depth_limit:
                self.report(Rule.FORK_JOIN_BALANCE, fork.id, "forks nest without matching joins")
                return region, joins, actions, False
            for succ in sorted(self.successors(node_id), reverse=True):
                stack.append((succ, next_depth))
        return region, joins, actions, balanced

    def check_forks(self) -> None:
        matched: Dict[str, List[str]] = {}
        for fork in sorted(self.ad.nodes_of_kind(NodeKind.FORK), key=lambda n: n.id):
            branches = sorted(self.successors(fork.id))
            region: Set[str] = set()
            joins: Set[str] = set()
            branch_actions: List[Set[str]] = []
            balanced = True
            for start in branches:
                branch_region, branch_joins, actions, ok = self.explore_branch(fork, start)
                region |= branch_region
                joins |= branch_joins
                branch_actions.append(actions)
                balanced = balanced and ok
            if not balanced:
                continue

            if len(joins) != 1:
                if joins:
                    self.report(Rule.FORK_JOIN_BALANCE, fork.id, "branches end in different joins: " + ", ".join(sorted(joins)))
                else:
                    self.report(Rule.FORK_JOIN_BALANCE, fork.id, "fork has no matching join")
                continue
            join = next(iter(joins))
            matched.setdefault(join, []).append(fork.id)
            join_ins = len(self.ad.incoming(join))
            if join_ins != len(branches):
                self.report(
                    Rule.FORK_JOIN_BALANCE,
                    fork.id,
                    f"fork has {len(branches)} branches but join '{join}' has {join_ins} incoming transitions",
                )

            allowed = region | {fork.id}
            for node_id in sorted(region | {join}):
                for edge in self.ad.incoming(node_id):
                    src = self.ad.transitions[edge].src
                    if src not in allowed:
                        self.report(
                            Rule.FORK_REGION_ENTRY,
                            self.ad.transitions[edge].label,
                            f"transition enters the region of fork '{fork.id}' from outside",
                        )

            for (i, first), (j, second) in itertools.combinations(enumerate(branch_actions), 2):
                for action in sorted(first & second):
                    self.report(
                        Rule.REPEATED_FORK_ACTION,
                        fork.id,
                        f"action '{action}' occurs on the branches starting at '{branches[i]}' and '{branches[j]}'",
                    )

        for join, forks in matched.items():
            if len(forks) > 1:
                self.report(Rule.FORK_JOIN_BALANCE, join, "join closes several forks: " + ", ".join(sorted(forks)))
        for join in self.ad.nodes_of_kind(NodeKind.JOIN):
            if join.id not in matched and self.ad.incoming(join.id):
                self.report(Rule.FORK_JOIN_BALANCE, join.id, "join is not preceded by a matching fork")

    # variables

    def check_assignments(self) -> None:
        decls = {d.name: d for d in self.ad.variables}
        for node in self.ad.nodes:
            for assignment in node.assignments:
                decl = decls.get(assignment.var)
                element = f"{node.id}.{assignment.var}"
                if decl is None:
                    self.report(Rule.UNDECLARED_VARIABLE, element, f"assignment to undeclared variable '{assignment.var}'")
                elif decl.kind is VarKind.INPUT:
                    self.report(Rule.ASSIGNMENT_TO_INPUT, element, f"input variable '{assignment.var}' is immutable")
                result = type_check(assignment.expr, self.ad.variables)
                if isinstance(result, list):
                    self.diagnostics.extend(result)
                elif decl is not None and result != decl.domain.value_type:
                    self.report(
                        Rule.TYPE_MISMATCH,
                        element,
                        f"assigns {result} to '{assignment.var}' of type {decl.domain.value_type}",
                    )

        for transition in self.ad.transitions:
            result = type_check(transition.guard, self.ad.variables)
            if isinstance(result, list):
                self.diagnostics.extend(result)
            elif result != BOOL_TYPE:
                self.report(Rule.TYPE_MISMATCH, transition.label, f"guard has type {result}, expected bool")

    def check_first_action(self) -> None:
        initials = self.ad.nodes_of_kind(NodeKind.INITIAL)
        if len(initials) != 1 or not self.ad.local_vars:
            return
        outgoing = self.ad.outgoing(initials[0].id)
        if len(outgoing) != 1:
            return
        first_id = self.ad.transitions[outgoing[0]].trg
        first = self.ad.node_map().get(first_id)
        assigned: FrozenSet[str] = frozenset()
        if first is not None and first.is_action:
            assigned = frozenset(a.var for a in first.assignments)
        for decl in self.ad.local_vars:
            if decl.name not in assigned:
                self.report(
                    Rule.LOCAL_NOT_INITIALIZED,
                    decl.name,
                    f"local variable is not assigned by the first action '{first_id}'",
                )


def validate(ad: ActivityDiagram, domain_limit: int = DEFAULT_DOMAIN_LIMIT) -> List[Diagnostic]:
    """
    Check a diagram against the well-formedness rules.

    Args:
        ad: Diagram to check
        domain_limit: Largest accepted integer range

    Returns:
        Sorted diagnostics, empty iff the diagram is well-formed
    """
    checker = _Checker(ad, domain_limit)
    checker.check_declarations()
    checker.check_nodes()
    endpoints_ok = checker.check_transitions()
    if endpoints_ok:
        checker.check_arity()
        duplicates = any(d.rule is Rule.DUPLICATE_NODE for d in checker.diagnostics)
        if not duplicates:
            checker.check_forks()
        checker.check_first_action()
    checker.check_assignments()

    diagnostics = sorted_diagnostics(checker.diagnostics)
    if diagnostics:
        logger.debug(f"{ad.name}: {len(diagnostics)} validation diagnostic(s)")
    return diagnostics


def _decision_variables(ad: ActivityDiagram, guards: List[Expr]) -> List[VarDecl]:
    names: Set[str] = set()
    for guard in guards:
        names |= free_vars(guard)
    return [decl for decl in ad.variables if decl.name in names]


def _guard_label(guard: Expr) -> str:
    return f"[{format_expr(guard)}]"


def _enumerate_decision(
    guards: List[Expr], decls: List[VarDecl]
) -> Tuple[Dict[Tuple[int, int], tuple], Optional[tuple]]:
    """Overlapping guard pairs and an uncovered assignment, first witness each"""
    overlaps: Dict[Tuple[int, int], tuple] = {}
    uncovered: Optional[tuple] = None
    names = [decl.name for decl in decls]
    for combo in itertools.product(*(decl.domain.values() for decl in decls)):
        env = dict(zip(names, combo))
        holding = [i for i, guard in enumerate(guards) if evaluate(guard, env) is True]
        for pair in itertools.combinations(holding, 2):
            overlaps.setdefault(pair, tuple(zip(names, combo)))
        if not holding and uncovered is None:
            uncovered = tuple(zip(names, combo))
    return overlaps, uncovered


def _symbolic_decision(
    guards: List[Expr], decls: List[VarDecl]
) -> Tuple[Dict[Tuple[int, int], tuple], Optional[tuple]]:
    manager = DdManager(name="guards")
    variables = {decl.name: FiniteVar.create(decl.name, decl.domain.values(), "") for decl in decls}
    for var in variables.values():
        manager.declare(*var.bits)
    valid = manager.conjoin(var.valid(manager) for var in variables.values())
    holds = compile_guards(manager, variables, guards)
    bits = [bit for var in variables.values() for bit in var.bits]

    def witness(s) -> tuple:
        assignment = manager.pick_one(s, bits)
        return tuple((name, var.decode(assignment)) for name, var in variables.items())

    overlaps: Dict[Tuple[int, int], tuple] = {}
    for i, j in itertools.combinations(range(len(guards)), 2):
        both = holds[i] & holds[j] & valid
        if not both.is_empty:
            overlaps[(i, j)] = witness(both)
    uncovered_set = valid - manager.disjoin(holds)
    uncovered = None if uncovered_set.is_empty else witness(uncovered_set)
    return overlaps, uncovered


def check_guard_exclusivity(
    ad: ActivityDiagram, enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT
) -> List[Diagnostic]:
    """
    Report decision nodes whose guards overlap or are not exhaustive.

    Only the variables read by a decision's guards are enumerated; above
    enumeration_limit assignments the check runs on decision diagrams.
    Witnesses are the smallest assignments in declaration order.

    Args:
        ad: A diagram without structural diagnostics
        enumeration_limit: Largest assignment space checked by enumeration

    Returns:
        Sorted diagnostics
    """
    diagnostics: List[Diagnostic] = []
    for node in ad.nodes_of_kind(NodeKind.DECISION):
        guards = [ad.transitions[i].guard for i in ad.outgoing(node.id)]
        decls = _decision_variables(ad, guards)
        if any(isinstance(type_check(guard, ad.variables), list) for guard in guards):
            continue
        space = prod(decl.domain.cardinality for decl in decls)
        try:
            if space <= enumeration_limit:
                overlaps, uncovered = _enumerate_decision(guards, decls)
            else:
                logger.debug(f"{ad.name}: checking decision '{node.id}' symbolically ({space} assignments)")
                overlaps, uncovered = _symbolic_decision(guards, decls)
        except ExpressionError as e:
            logger.debug(f"{ad.name}: skipping decision '{node.id}': {e}")
            continue

        for (i, j), witness in sorted(overlaps.items()):
            diagnostics.append(
                Diagnostic(
                    Rule.GUARD_OVERLAP,
                    node.id,
                    f"guards {_guard_label(guards[i])} and {_guard_label(guards[j])} both hold",
                    witness,
                )
            )
        if uncovered is not None:
            diagnostics.append(Diagnostic(Rule.GUARD_NOT_EXHAUSTIVE, node.id, "no guard holds", uncovered))
    return sorted_diagnostics(diagnostics)


def ensure_well_formed(
    ad: ActivityDiagram,
    domain_limit: int = DEFAULT_DOMAIN_LIMIT,
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> ActivityDiagram:
    """
    Validate a diagram and its decision guards.

    Raises:
        DiagramValidationError: With every diagnostic found
    """
    diagnostics = validate(ad, domain_limit)
    if not diagnostics:
        diagnostics = check_guard_exclusivity(ad, enumeration_limit)
    if diagnostics:
        raise DiagramValidationError(f"diagram '{ad.name}' is not well-formed", diagnostics=diagnostics)
    return ad
