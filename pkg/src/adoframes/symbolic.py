"""A small exact expression engine.

Expressions are immutable trees over rational constants, named variables,
sums, products, integer powers and a fixed set of elementary functions.
They support exact differentiation, substitution, vectorized numeric
evaluation and a prefix text form such as ``(* z (cos w))``.
"""

from dataclasses import dataclass
from fractions import Fraction
import re

import numpy as np

from .errors import InputError

__all__ = [
    "Expr",
    "Const",
    "Var",
    "Add",
    "Mul",
    "Pow",
    "Func",
    "FUNCTIONS",
    "const",
    "var",
    "add",
    "mul",
    "power",
    "func",
    "as_expr",
    "differentiate",
    "substitute",
    "evaluate",
    "free_symbols",
    "to_prefix",
    "parse",
    "expr_equal",
]

FUNCTIONS = ("exp", "sin", "cos", "tan", "sec", "sinh", "cosh", "tanh",
             "sech", "cot", "csc")


class Expr:
    """Base class; use the module level constructors to build trees."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, mul(Const(Fraction(-1)), as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), mul(Const(Fraction(-1)), self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return mul(self, power(as_expr(other), -1))

    def __rtruediv__(self, other):
        return mul(as_expr(other), power(self, -1))

    def __neg__(self):
        return mul(Const(Fraction(-1)), self)

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, np.integer)):
            raise InputError("only integer powers are supported")
        return power(self, int(exponent))

    def __str__(self):
        return to_prefix(self)


@dataclass(frozen=True, eq=True, repr=True)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True, eq=True, repr=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, eq=True, repr=True)
class Add(Expr):
    terms: tuple


@dataclass(frozen=True, eq=True, repr=True)
class Mul(Expr):
    factors: tuple


@dataclass(frozen=True, eq=True, repr=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True, eq=True, repr=True)
class Func(Expr):
    name: str
    arg: Expr


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def const(value):
    return Const(Fraction(value))


def var(name):
    return Var(name)


def as_expr(value):
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, np.integer, Fraction)):
        return Const(Fraction(value))
    if isinstance(value, str):
        return parse(value)
    raise InputError(f"cannot convert {value!r} to an expression")


def _split_coeff(term):
    """Return (rational coefficient, remaining factors tuple)."""
    if isinstance(term, Const):
        return term.value, ()
    if isinstance(term, Mul):
        c = Fraction(1)
        rest = []
        for f in term.factors:
            if isinstance(f, Const):
                c *= f.value
            else:
                rest.append(f)
        return c, tuple(rest)
    return Fraction(1), (term,)


def add(*terms):
    flat = []
    for t in terms:
        t = as_expr(t)
        if isinstance(t, Add):
            flat.extend(t.terms)
        else:
            flat.append(t)
    const_sum = Fraction(0)
    acc = {}
    for t in flat:
        c, rest = _split_coeff(t)
        if not rest:
            const_sum += c
        else:
            acc[rest] = acc.get(rest, Fraction(0)) + c
    out = []
    for rest, c in acc.items():
        if c == 0:
            continue
        if c == 1:
            out.append(rest[0] if len(rest) == 1 else Mul(rest))
        else:
            out.append(Mul((Const(c),) + rest))
    if const_sum != 0:
        out.insert(0, Const(const_sum))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return Add(tuple(out))


def _base_exp(f):
    if isinstance(f, Pow):
        return f.base, f.exponent
    return f, 1


def mul(*factors):
    flat = []
    for f in factors:
        f = as_expr(f)
        if isinstance(f, Mul):
            flat.extend(f.factors)
        else:
            flat.append(f)
    c = Fraction(1)
    powers = {}
    for f in flat:
        if isinstance(f, Const):
            c *= f.value
            continue
        b, e = _base_exp(f)
        powers[b] = powers.get(b, 0) + e
    if c == 0:
        return ZERO
    out = []
    for b in sorted(powers, key=to_prefix):
        e = powers[b]
        if e == 0:
            continue
        out.append(b if e == 1 else Pow(b, e))
    if c != 1 or not out:
        out.insert(0, Const(c))
    if len(out) == 1:
        return out[0]
    return Mul(tuple(out))


def power(base, exponent):
    base = as_expr(base)
    exponent = int(exponent)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        if base.value == 0 and exponent < 0:
            raise ZeroDivisionError("zero raised to a negative power")
        return Const(base.value ** exponent)
    if isinstance(base, Pow):
        return power(base.base, base.exponent * exponent)
    if isinstance(base, Mul):
        return mul(*[power(f, exponent) for f in base.factors])
    return Pow(base, exponent)


_AT_ZERO = {"exp": 1, "sin": 0, "cos": 1, "tan": 0, "sec": 1, "sinh": 0,
            "cosh": 1, "tanh": 0, "sech": 1}


def func(name, arg):
    if name not in FUNCTIONS:
        raise InputError(f"unknown function {name!r}")
    arg = as_expr(arg)
    if isinstance(arg, Const) and arg.value == 0 and name in _AT_ZERO:
        return Const(Fraction(_AT_ZERO[name]))
    return Func(name, arg)


# -- calculus ---------------------------------------------------------------

def _func_derivative(name, u):
    f = lambda n: func(n, u)  # noqa: E731
    if name == "exp":
        return f("exp")
    if name == "sin":
        return f("cos")
    if name == "cos":
        return -f("sin")
    if name == "tan":
        return power(f("sec"), 2)
    if name == "sec":
        return f("sec") * f("tan")
    if name == "sinh":
        return f("cosh")
    if name == "cosh":
        return f("sinh")
    if name == "tanh":
        return power(f("sech"), 2)
    if name == "sech":
        return -(f("sech") * f("tanh"))
    if name == "cot":
        return -power(f("csc"), 2)
    if name == "csc":
        return -(f("csc") * f("cot"))
    raise InputError(f"unknown function {name!r}")


def differentiate(e, v):
    """Exact derivative of ``e`` with respect to the variable named ``v``."""
    name = v.name if isinstance(v, Var) else v
    e = as_expr(e)
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == name else ZERO
    if isinstance(e, Add):
        return add(*[differentiate(t, name) for t in e.terms])
    if isinstance(e, Mul):
        terms = []
        for i, f in enumerate(e.factors):
            df = differentiate(f, name)
            if df == ZERO:
                continue
            terms.append(mul(*e.factors[:i], df, *e.factors[i + 1:]))
        return add(*terms)
    if isinstance(e, Pow):
        db = differentiate(e.base, name)
        if db == ZERO:
            return ZERO
        return mul(Const(Fraction(e.exponent)), power(e.base, e.exponent - 1), db)
    if isinstance(e, Func):
        du = differentiate(e.arg, name)
        if du == ZERO:
            return ZERO
        return mul(_func_derivative(e.name, e.arg), du)
    raise InputError(f"not an expression: {e!r}")


def substitute(e, mapping):
    """Replace variables by expressions or numbers, rebuilding the tree."""
    e = as_expr(e)
    repl = {k: as_expr(v) for k, v in mapping.items()}

    def walk(node):
        if isinstance(node, Const):
            return node
        if isinstance(node, Var):
            return repl.get(node.name, node)
        if isinstance(node, Add):
            return add(*[walk(t) for t in node.terms])
        if isinstance(node, Mul):
            return mul(*[walk(f) for f in node.factors])
        if isinstance(node, Pow):
            return power(walk(node.base), node.exponent)
        if isinstance(node, Func):
            return func(node.name, walk(node.arg))
        raise InputError(f"not an expression: {node!r}")

    return walk(e)


def free_symbols(e):
    e = as_expr(e)
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Const):
        return set()
    if isinstance(e, (Add, Mul)):
        children = e.terms if isinstance(e, Add) else e.factors
        return set().union(*[free_symbols(c) for c in children])
    if isinstance(e, Pow):
        return free_symbols(e.base)
    return free_symbols(e.arg)


_NUMPY = {
    "exp": np.exp, "sin": np.sin, "cos": np.cos, "tan": np.tan,
    "sec": lambda u: 1.0 / np.cos(u), "sinh": np.sinh, "cosh": np.cosh,
    "tanh": np.tanh, "sech": lambda u: 1.0 / np.cosh(u),
    "cot": lambda u: 1.0 / np.tan(u), "csc": lambda u: 1.0 / np.sin(u),
}


def evaluate(e, env):
    """Evaluate numerically; ``env`` maps names to floats or arrays."""
    e = as_expr(e)
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise InputError(f"no value for variable {e.name!r}") from None
    if isinstance(e, Add):
        out = evaluate(e.terms[0], env)
        for t in e.terms[1:]:
            out = out + evaluate(t, env)
        return out
    if isinstance(e, Mul):
        out = evaluate(e.factors[0], env)
        for f in e.factors[1:]:
            out = out * evaluate(f, env)
        return out
    if isinstance(e, Pow):
        b = evaluate(e.base, env)
        if e.exponent < 0:
            return 1.0 / (b ** (-e.exponent))
        return b ** e.exponent
    if isinstance(e, Func):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return _NUMPY[e.name](evaluate(e.arg, env))
    raise InputError(f"not an expression: {e!r}")


# -- prefix text form -------------------------------------------------------

def _fmt_const(value):
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_prefix(e):
    e = as_expr(e)
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Add):
        return "(+ " + " ".join(to_prefix(t) for t in e.terms) + ")"
    if isinstance(e, Mul):
        return "(* " + " ".join(to_prefix(f) for f in e.factors) + ")"
    if isinstance(e, Pow):
        return f"(^ {to_prefix(e.base)} {e.exponent})"
    return f"({e.name} {to_prefix(e.arg)})"


_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")
_NUMBER = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"cannot tokenize {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse(text):
    """Parse the prefix text form.

    ``-`` is negation with one argument and subtraction with two, ``/`` is
    division and ``^`` takes an integer exponent.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty expression")
    node, pos = _parse_at(tokens, 0)
    if pos != len(tokens):
        raise InputError(f"trailing tokens in {text!r}")
    return node


def _parse_at(tokens, pos):
    tok = tokens[pos]
    if tok == ")":
        raise InputError("unexpected ')'")
    if tok != "(":
        if _NUMBER.match(tok):
            return Const(Fraction(tok)), pos + 1
        if _NAME.match(tok):
            return Var(tok), pos + 1
        raise InputError(f"bad token {tok!r}")
    if pos + 1 >= len(tokens):
        raise InputError("unbalanced parentheses")
    op = tokens[pos + 1]
    pos += 2
    args = []
    while True:
        if pos >= len(tokens):
            raise InputError("unbalanced parentheses")
        if tokens[pos] == ")":
            pos += 1
            break
        node, pos = _parse_at(tokens, pos)
        args.append(node)
    return _apply(op, args), pos


def _apply(op, args):
    if op == "+":
        return add(*args)
    if op == "*":
        return mul(*args)
    if op == "-":
        if len(args) == 1:
            return -args[0]
        if len(args) == 2:
            return args[0] - args[1]
    elif op == "/":
        if len(args) == 2:
            return args[0] / args[1]
    elif op == "^":
        if len(args) == 2 and isinstance(args[1], Const) \
                and args[1].value.denominator == 1:
            return power(args[0], int(args[1].value))
        raise InputError("'^' needs an integer exponent")
    elif op in FUNCTIONS:
        if len(args) == 1:
            return func(op, args[0])
    else:
        raise InputError(f"unknown operator {op!r}")
    raise InputError(f"wrong number of arguments for {op!r}")


# -- randomized identity testing -------------------------------------------

def expr_equal(e1, e2, box, trials=20, tol=1e-9, seed=0, resample_cap=200,
               env=None):
    """Compare two expressions at seeded random points.

    Parameters
    ----------
    e1, e2 : Expr or str
    box : dict
        Variable name to ``(low, high)`` sampling interval.
    trials : int
        Number of accepted sample points.
    tol : float
        Pass when ``|e1 - e2| <= tol * (1 + |e1|)`` at every point.
    env : dict, optional
        Fixed values for further variables (parameters).

    Returns
    -------
    equal : bool
    witness : dict or None
        The first failing point, with both values, when unequal.
    """
    e1, e2 = as_expr(e1), as_expr(e2)
    rng = np.random.default_rng(seed)
    names = sorted(box)
    total = trials + resample_cap
    # points are drawn in the same order a sequential sampler would use
    draws = rng.uniform(size=(total, len(names)))
    cols = {n: box[n][0] + (box[n][1] - box[n][0]) * draws[:, i]
            for i, n in enumerate(names)}
    full = dict(env or {})
    full.update(cols)
    with np.errstate(all="ignore"):
        v1 = np.broadcast_to(np.asarray(evaluate(e1, full), dtype=complex), (total,))
        v2 = np.broadcast_to(np.asarray(evaluate(e2, full), dtype=complex), (total,))
    ok = np.isfinite(v1) & np.isfinite(v2) & (np.abs(v1) <= 1e12)
    idx = np.flatnonzero(ok)[:trials]
    if len(idx) < trials:
        raise NumericDomainExhausted(
            f"only {len(idx)} of {trials} sample points were regular")
    bad = idx[np.abs(v1[idx] - v2[idx]) > tol * (1 + np.abs(v1[idx]))]
    if len(bad):
        k = bad[0]
        point = {n: float(cols[n][k]) for n in names}
        return False, {"point": point, "lhs": float(v1[k].real), "rhs": float(v2[k].real)}
    return True, None


class NumericDomainExhausted(InputError):
    """Too many sample points hit singularities of the expressions."""
