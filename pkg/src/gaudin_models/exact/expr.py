"""Parsing of exact scalars and eps-expressions from text."""
from __future__ import annotations

import ast
from fractions import Fraction

from .numberfield import NumberField
from .poly import EPS


class ExpressionError(ValueError):
    pass


def _evaluate(node, env):
    if isinstance(node, ast.Expression):
        return _evaluate(node.body, env)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ExpressionError(f"unsupported constant {node.value!r}")
        if isinstance(node.value, float):
            return Fraction(repr(node.value))
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ExpressionError(f"unknown name {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _evaluate(node.operand, env)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        a = _evaluate(node.left, env)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ExpressionError("exponents must be integer literals")
            return a ** node.right.value
        b = _evaluate(node.right, env)
        ops = {ast.Add: lambda: a + b, ast.Sub: lambda: a - b,
               ast.Mult: lambda: a * b, ast.Div: lambda: a / b}
        for kind, fn in ops.items():
            if isinstance(node.op, kind):
                try:
                    return fn()
                except ZeroDivisionError as exc:
                    raise ExpressionError("division by zero") from exc
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in env:
        fn = env[node.func.id]
        if callable(fn) and len(node.args) == 1 and not node.keywords:
            arg = _evaluate(node.args[0], env)
            if isinstance(arg, Fraction) and arg.denominator == 1:
                return fn(int(arg))
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def parse_expression(text: str, env: dict | None = None):
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}") from exc
    return _evaluate(tree, env or {})


def parse_eps(text: str):
    """Rational function of eps, e.g. ``"(eps+1)/2"``; constants stay Fractions."""
    return parse_expression(text, {"eps": EPS})


def parse_scalar(text, field: NumberField | None = None):
    """Exact scalar from ``"p/q"``, or from ``"a+b*sqrt(d)"`` / ``"a+b*g"`` given a field."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ExpressionError(f"scalar must be a string, got {type(text).__name__}")
    try:
        return Fraction(text)
    except ValueError:
        pass
    if field is None:
        raise ExpressionError(f"{text!r} is not a rational number")
    env = {"g": field.gen}
    if field.sqrt_of is not None:
        env["sqrt"] = field.sqrt
    return parse_expression(text, env)


def format_scalar(x) -> str:
    """``"p/q"`` (or ``"p"``) for rationals; readable exact form otherwise."""
    return str(x)
