"""Exact rationals, sparse multivariate polynomials, monomial orders and free-module vectors."""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))
ZERO = mpq(0)
ONE = mpq(1)


def rational(value) -> mpq:
    """Coerce ints, strings like "3/4", Fractions and mpq values to an exact rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ZeroDivisionError("zero denominator")
            return mpq(int(num), int(den))
        return mpq(int(text))
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    return mpq(value)


def format_rational(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class VariableMismatch(ValueError):
    pass


# ---------------------------------------------------------------- monomial orders

@dataclass(frozen=True)
class MonomialOrder:
    """A term order on exponent tuples; ``key`` maps exponents to a tuple, larger key = larger monomial.

    kind is one of "grevlex", "lex", "wgrevlex" (needs ``weights``) or "elim"
    (grevlex on the first ``block`` variables, ties broken by grevlex on the rest).
    """

    kind: str = "grevlex"
    weights: tuple[int, ...] | None = None
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "wgrevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wgrevlex":
            if not self.weights or any(w < 1 for w in self.weights):
                raise ValueError("weighted orders need positive integer weights")

    def key(self, exps: tuple[int, ...]) -> tuple:
        kind = self.kind
        if kind == "grevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        if kind == "lex":
            return exps
        if kind == "wgrevlex":
            return (sum(w * e for w, e in zip(self.weights, exps)), tuple(-e for e in reversed(exps)))
        head, tail = exps[: self.block], exps[self.block:]
        return (sum(head), tuple(-e for e in reversed(head)), sum(tail), tuple(-e for e in reversed(tail)))

    def is_degree_compatible(self) -> bool:
        return self.kind == "grevlex"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def order_from_name(name: str, nvars: int = 0) -> MonomialOrder:
    if name in ("grevlex", "lex"):
        return MonomialOrder(name)
    raise ValueError(f"unknown order {name!r}; expected grevlex or lex")


# ---------------------------------------------------------------- polynomials

def _add_into(acc: dict, other: Mapping, scale=ONE):
    for mon, c in other.items():
        v = acc.get(mon, ZERO) + scale * c
        if v:
            acc[mon] = v
        else:
            acc.pop(mon, None)


def monomial_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b: tuple, a: tuple) -> tuple:
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with rational coefficients over a fixed tuple of variable names."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None, variables: Sequence[str] = ()):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for mon, c in (terms or {}).items():
            mon = tuple(mon)
            if len(mon) != n:
                raise VariableMismatch(f"monomial {mon} does not match {n} variables")
            c = rational(c)
            if c:
                clean[mon] = clean.get(mon, ZERO) + c
                if not clean[mon]:
                    del clean[mon]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, variables: tuple) -> "Polynomial":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw({}, tuple(variables))

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        c = rational(c)
        return cls._raw({(0,) * len(variables): c} if c else {}, variables)

    @classmethod
    def variable(cls, which, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        idx = variables.index(which) if isinstance(which, str) else int(which)
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls._raw({exps: ONE}, variables)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "Polynomial":
        return parse_polynomial(text, variables)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def order(self) -> int:
        """Lowest total degree of a term (the 𝔪-adic order)."""
        if not self.terms:
            raise ValueError("the zero polynomial has no order")
        return min(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self.terms.items() if sum(m) == d}, self.variables)

    def lowest_form(self) -> "Polynomial":
        if not self.terms:
            raise ValueError("the zero polynomial has no lowest form")
        return self.homogeneous_component(self.order())

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[tuple, mpq]:
        mon = max(self.terms, key=order.key)
        return mon, self.terms[mon]

    def evaluate(self, point: Sequence) -> mpq:
        if len(point) != len(self.variables):
            raise ValueError(f"point has {len(point)} coordinates, ring has {len(self.variables)} variables")
        pt = [rational(a) for a in point]
        total = ZERO
        for mon, c in self.terms.items():
            v = c
            for a, e in zip(pt, mon):
                if e:
                    v *= a ** e
            total += v
        return total

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return Polynomial._raw(acc, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms, -ONE)
        return Polynomial._raw(acc, self.variables)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = rational(other)
            if not c:
                return Polynomial.zero(self.variables)
            return Polynomial._raw({m: c * v for m, v in self.terms.items()}, self.variables)
        self._check(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = acc.get(m, ZERO) + c1 * c2
                if v:
                    acc[m] = v
                else:
                    del acc[m]
        return Polynomial._raw(acc, self.variables)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, mon: tuple, c=ONE) -> "Polynomial":
        return Polynomial._raw({monomial_mul(m, mon): c * v for m, v in self.terms.items()}, self.variables)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == Polynomial.constant(other, self.variables)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # display
    def sorted_terms(self) -> list[tuple[tuple, mpq]]:
        """Terms in display order: descending total degree, then descending lex."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {list(self.variables)!r})"


def format_monomial(mon: tuple, variables: Sequence[str]) -> str:
    parts = []
    for name, e in zip(variables, mon):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for i, (mon, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(mon, p.variables)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if i == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


class PolynomialSyntaxError(ValueError):
    pass


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse the printed grammar (and ordinary + - * ^ / arithmetic with parentheses)."""
    variables = tuple(variables)
    src = text.replace("−", "-").replace("^", "**").strip()
    if not src:
        raise PolynomialSyntaxError("empty polynomial")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse {text!r}") from exc

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Polynomial.constant(node.value, variables)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise PolynomialSyntaxError(f"unknown variable {node.id!r}")
            return Polynomial.variable(node.id, variables)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise PolynomialSyntaxError("division only by nonzero constants")
                return left * (ONE / right.constant_term())
            if isinstance(node.op, ast.Pow):
                if not right.is_constant() or right.constant_term().denominator != 1:
                    raise PolynomialSyntaxError("exponents must be non-negative integers")
                return left ** int(right.constant_term())
        raise PolynomialSyntaxError(f"unsupported syntax in {text!r}")

    return walk(tree)


def poly_arithmetic(p: Polynomial, q: Polynomial, which: str) -> Polynomial:
    if p.variables != q.variables:
        raise VariableMismatch(f"{p.variables} vs {q.variables}")
    if which == "add":
        return p + q
    if which == "sub":
        return p - q
    if which == "mul":
        return p * q
    raise ValueError(f"unknown operation {which!r}")


def evaluate(p: Polynomial, point: Sequence) -> mpq:
    return p.evaluate(point)


def lowest_form(p: Polynomial) -> Polynomial:
    return p.lowest_form()


def variables_of(names: Iterable[str]) -> list[Polynomial]:
    names = tuple(names)
    return [Polynomial.variable(i, names) for i in range(len(names))]


# ---------------------------------------------------------------- free-module vectors

class FreeVector:
    """An element of a graded free module S^r, stored as a tuple of polynomials."""

    __slots__ = ("components", "degrees")

    def __init__(self, components: Sequence[Polynomial], degrees: Sequence[int] | None = None):
        comps = tuple(components)
        if not comps:
            raise ValueError("a free vector needs at least one component")
        ring = comps[0].variables
        for c in comps:
            if c.variables != ring:
                raise VariableMismatch("components live in different rings")
        self.components = comps
        self.degrees = tuple(degrees) if degrees is not None else (0,) * len(comps)
        if len(self.degrees) != len(comps):
            raise ValueError("degree list length differs from rank")

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def variables(self):
        return self.components[0].variables

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "FreeVector"):
        return FreeVector([a + b for a, b in zip(self.components, other.components)], self.degrees)

    def __sub__(self, other: "FreeVector"):
        return FreeVector([a - b for a, b in zip(self.components, other.components)], self.degrees)

    def scale(self, f) -> "FreeVector":
        return FreeVector([f * c for c in self.components], self.degrees)

    def __eq__(self, other):
        return isinstance(other, FreeVector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __repr__(self):
        return "FreeVector([" + ", ".join(str(c) for c in self.components) + "])"

    def to_terms(self) -> dict:
        """Flatten to {(component, exponents): coefficient}."""
        out = {}
        for k, c in enumerate(self.components):
            for m, v in c.terms.items():
                out[(k, m)] = v
        return out

    @classmethod
    def from_terms(cls, terms: Mapping, rank: int, variables: Sequence[str], degrees=None) -> "FreeVector":
        buckets: list[dict] = [{} for _ in range(rank)]
        for (k, m), v in terms.items():
            buckets[k][m] = v
        return cls([Polynomial._raw(b, tuple(variables)) for b in buckets], degrees)
