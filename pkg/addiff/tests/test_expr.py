"""
Unit tests for guard and assignment expressions.
"""

import itertools
import random
import unittest

import pytest

from addiff.core.models.base import ExpressionError
from addiff.core.models.diagram import Domain, VarDecl
from addiff.core.models.enums import Rule, VarKind
from addiff.core.models.expr import (
    BOOL_TYPE,
    INT_TYPE,
    TRUE,
    BinOp,
    Const,
    EnumLiteral,
    Not,
    Var,
    conjoin,
    evaluate,
    format_expr,
    free_vars,
    type_check,
)

COLORS = Domain.enumeration("red", "green", "blue")
RED, GREEN = COLORS.literal("red"), COLORS.literal("green")


@pytest.mark.unit
class TestEvaluate(unittest.TestCase):
    """Test strict evaluation"""

    def test_arithmetic_and_comparison(self):
        """Test integer operators combine with comparisons"""
        expr = BinOp("<", BinOp("+", Var("c"), Const(1)), Const(3))
        self.assertIs(evaluate(expr, {"c": 1}), True)
        self.assertIs(evaluate(expr, {"c": 2}), False)

    def test_logical_operators(self):
        """Test conjunction, disjunction and negation"""
        expr = BinOp("|", BinOp("&", Var("a"), Not(Var("b"))), Var("b"))
        self.assertIs(evaluate(expr, {"a": True, "b": False}), True)
        self.assertIs(evaluate(expr, {"a": False, "b": False}), False)

    def test_enum_order_follows_declaration(self):
        """Test literals compare by declaration index"""
        self.assertIs(evaluate(BinOp("<", Const(RED), Const(GREEN)), {}), True)
        self.assertIs(evaluate(BinOp(">=", Var("c"), Const(GREEN)), {"c": RED}), False)

    def test_literals_of_different_enumerations_differ(self):
        """Test equal names from different enumerations are not equal values"""
        other = EnumLiteral(0, "red", ("red", "black"))
        self.assertNotEqual(RED, other)
        with self.assertRaises(ExpressionError):
            evaluate(BinOp("=", Const(RED), Const(other)), {})

    def test_unbound_variable(self):
        """Test evaluation fails on a missing variable"""
        with self.assertRaises(ExpressionError) as ctx:
            evaluate(Var("x"), {})
        self.assertIn("x", str(ctx.exception))

    def test_ill_typed_operands(self):
        """Test evaluation rejects mixed operand types"""
        with self.assertRaises(ExpressionError):
            evaluate(BinOp("&", Const(True), Const(1)), {})
        with self.assertRaises(ExpressionError):
            evaluate(BinOp("+", Const(True), Const(1)), {})
        with self.assertRaises(ExpressionError):
            evaluate(Not(Const(3)), {})

    def test_order_on_booleans_is_undefined(self):
        """Test '<' is rejected on booleans"""
        with self.assertRaises(ExpressionError):
            evaluate(BinOp("<", Const(False), Const(True)), {})

    def test_bool_is_not_int(self):
        """Test booleans never compare equal to integers"""
        with self.assertRaises(ExpressionError):
            evaluate(BinOp("=", Const(True), Const(1)), {})


COMPARE = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}
ENVIRONMENTS = [
    {"p": p, "q": q, "n": n, "m": m, "color": color}
    for p, q, n, m, color in itertools.product((False, True), (False, True), range(4), range(4), COLORS.values())
]


class ExprGenerator:
    """Random well-typed expressions paired with a plain Python evaluation"""

    def __init__(self, rng):
        self.rng = rng

    def boolean(self, depth):
        choice = self.rng.randrange(6 if depth > 0 else 2)
        if choice == 0:
            name = self.rng.choice(("p", "q"))
            return Var(name), lambda env: env[name]
        if choice == 1:
            value = self.rng.random() < 0.5
            return Const(value), lambda env: value
        if choice == 2:
            expr, fn = self.boolean(depth - 1)
            return Not(expr), lambda env: not fn(env)
        if choice == 3:
            op = self.rng.choice(("&", "|"))
            (left, lf), (right, rf) = self.boolean(depth - 1), self.boolean(depth - 1)
            if op == "&":
                return BinOp(op, left, right), lambda env: lf(env) and rf(env)
            return BinOp(op, left, right), lambda env: lf(env) or rf(env)
        if choice == 4:
            op = self.rng.choice(tuple(COMPARE))
            (left, lf), (right, rf) = self.integer(depth - 1), self.integer(depth - 1)
            return BinOp(op, left, right), lambda env: COMPARE[op](lf(env), rf(env))
        op = self.rng.choice(tuple(COMPARE))
        literal = self.rng.choice(COLORS.values())
        expr = BinOp(op, Var("color"), Const(literal))
        return expr, lambda env: COMPARE[op](env["color"].index, literal.index)

    def integer(self, depth):
        choice = self.rng.randrange(3 if depth > 0 else 2)
        if choice == 0:
            name = self.rng.choice(("n", "m"))
            return Var(name), lambda env: env[name]
        if choice == 1:
            value = self.rng.randrange(-2, 5)
            return Const(value), lambda env: value
        op = self.rng.choice(("+", "-"))
        (left, lf), (right, rf) = self.integer(depth - 1), self.integer(depth - 1)
        if op == "+":
            return BinOp(op, left, right), lambda env: lf(env) + rf(env)
        return BinOp(op, left, right), lambda env: lf(env) - rf(env)


@pytest.mark.unit
class TestRandomExpressions(unittest.TestCase):
    """Test evaluation of generated expressions over every environment"""

    def setUp(self):
        """Set up 150 random boolean expressions"""
        generator = ExprGenerator(random.Random(11))
        self.cases = [generator.boolean(4) for _ in range(150)]

    def test_matches_plain_evaluation(self):
        """Test evaluate agrees with a direct Python evaluation"""
        for expr, fn in self.cases:
            for env in ENVIRONMENTS:
                self.assertIs(evaluate(expr, env), fn(env), f"{format_expr(expr)} under {env}")

    def test_depends_only_on_free_variables(self):
        """Test changing variables outside free_vars leaves the value alone"""
        rng = random.Random(5)
        for expr, _ in self.cases:
            free = free_vars(expr)
            for env in rng.sample(ENVIRONMENTS, 20):
                expected = evaluate(expr, env)
                restricted = {name: value for name, value in env.items() if name in free}
                self.assertIs(evaluate(expr, restricted), expected, format_expr(expr))
                changed = dict(env)
                for name in set(env) - free:
                    changed[name] = rng.choice([other[name] for other in ENVIRONMENTS])
                self.assertIs(evaluate(expr, changed), expected, format_expr(expr))


@pytest.mark.unit
class TestTypeCheck(unittest.TestCase):
    """Test static typing"""

    def setUp(self):
        """Set up declarations"""
        self.decls = [
            VarDecl(name="flag", domain=Domain.boolean(), kind=VarKind.INPUT),
            VarDecl(name="n", domain=Domain.integer(0, 3), kind=VarKind.LOCAL),
            VarDecl(name="color", domain=COLORS, kind=VarKind.INPUT),
        ]

    def test_well_typed(self):
        """Test well-typed expressions get their type"""
        guard = BinOp("&", Var("flag"), BinOp("=", Var("color"), Const(RED)))
        self.assertEqual(type_check(guard, self.decls), BOOL_TYPE)
        self.assertEqual(type_check(BinOp("-", Var("n"), Const(1)), self.decls), INT_TYPE)

    def test_mapping_declarations(self):
        """Test a name-to-type mapping is accepted"""
        self.assertEqual(type_check(Not(Var("b")), {"b": BOOL_TYPE}), BOOL_TYPE)

    def test_mismatch(self):
        """Test mixed comparisons are reported"""
        result = type_check(BinOp("=", Var("n"), Var("flag")), self.decls)
        self.assertIsInstance(result, list)
        self.assertEqual(result[0].rule, Rule.TYPE_MISMATCH)

    def test_undeclared(self):
        """Test unknown variables are reported"""
        result = type_check(BinOp("&", Var("flag"), Var("ghost")), self.decls)
        self.assertEqual([d.rule for d in result], [Rule.UNDECLARED_VARIABLE])
        self.assertEqual(result[0].element, "ghost")

    def test_order_on_bool(self):
        """Test ordering operators are rejected on booleans"""
        result = type_check(BinOp("<=", Var("flag"), Const(True)), self.decls)
        self.assertEqual(result[0].rule, Rule.TYPE_MISMATCH)


@pytest.mark.unit
class TestFormatting(unittest.TestCase):
    """Test rendering with minimal parentheses"""

    def test_left_associative_minus(self):
        """Test only a right-nested difference is parenthesized"""
        left = BinOp("-", BinOp("-", Const(1), Const(2)), Const(3))
        right = BinOp("-", Const(1), BinOp("-", Const(2), Const(3)))
        self.assertEqual(format_expr(left), "1 - 2 - 3")
        self.assertEqual(format_expr(right), "1 - (2 - 3)")

    def test_precedence(self):
        """Test looser operators are parenthesized"""
        expr = BinOp("&", BinOp("|", Var("a"), Var("b")), Var("c"))
        self.assertEqual(format_expr(expr), "(a | b) & c")
        expr = BinOp("|", BinOp("&", Var("a"), Var("b")), Var("c"))
        self.assertEqual(format_expr(expr), "a & b | c")

    def test_negation(self):
        """Test negation of compound expressions"""
        self.assertEqual(format_expr(Not(BinOp("&", Var("a"), Var("b")))), "!(a & b)")
        self.assertEqual(format_expr(Not(Not(Var("a")))), "!!a")

    def test_nested_comparison(self):
        """Test comparisons never chain unparenthesized"""
        expr = BinOp("=", BinOp("<", Var("a"), Var("b")), Const(True))
        self.assertEqual(format_expr(expr), "(a < b) = true")

    def test_values(self):
        """Test constants render in the concrete syntax"""
        self.assertEqual(format_expr(Const(False)), "false")
        self.assertEqual(format_expr(Const(GREEN)), "green")
        self.assertEqual(format_expr(BinOp("+", Var("n"), Const(-1))), "n + -1")


@pytest.mark.unit
class TestHelpers(unittest.TestCase):
    """Test free variables and conjunction"""

    def test_free_vars(self):
        """Test variables are collected from every subexpression"""
        expr = BinOp("&", Not(Var("a")), BinOp("<", Var("n"), Const(2)))
        self.assertEqual(free_vars(expr), frozenset({"a", "n"}))
        self.assertEqual(free_vars(Const(1)), frozenset())

    def test_conjoin(self):
        """Test the empty conjunction and left nesting"""
        self.assertEqual(conjoin(), TRUE)
        self.assertEqual(conjoin(Var("a")), Var("a"))
        self.assertEqual(conjoin(Var("a"), Var("b"), Var("c")), BinOp("&", BinOp("&", Var("a"), Var("b")), Var("c")))


if __name__ == "__main__":
    unittest.main()
