"""Gröbner bases for ideals and submodules of free modules, and module invariants built on them.

Elements are handled internally as dicts ``{(component, exponents): coefficient}``; ideals are
rank-one modules.  Public functions accept and return :class:`Polynomial` / :class:`FreeVector`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .polycore import (
    GREVLEX,
    ONE,
    ZERO,
    FreeVector,
    MonomialOrder,
    Polynomial,
    divides,
    format_polynomial,
    monomial_div,
    monomial_lcm,
    monomial_mul,
    parse_polynomial,
    rational,
)


class InconsistentSubquotient(ValueError):
    """Raised when the image generators are not contained in the kernel generators' span."""


class NotHomogeneous(ValueError):
    pass


# ---------------------------------------------------------------- term orders on free modules

class ModuleOrder:
    """Total order on terms (component, exponents).

    kind "top": degree (with component shifts) first when the monomial order is graded, then the
    monomial order, then component.
    kind "pot": component priority first (earlier in ``priority`` is larger), then the monomial order.
    kind "local": lowest shifted degree is largest; ties by the monomial order, then component.
    """

    def __init__(self, kind: str = "top", monomial: MonomialOrder = GREVLEX,
                 shifts: Sequence[int] | None = None, priority: Sequence[int] | None = None):
        if kind not in ("top", "pot", "local"):
            raise ValueError(kind)
        self.kind = kind
        self.monomial = monomial
        self.shifts = tuple(shifts) if shifts is not None else None
        self.rank_of = None
        if priority is not None:
            self.rank_of = {c: i for i, c in enumerate(priority)}
        self._memo: dict = {}

    def shift(self, comp: int) -> int:
        return self.shifts[comp] if self.shifts else 0

    def __call__(self, term):
        k = self._memo.get(term)
        if k is None:
            comp, exps = term
            mk = self.monomial.key(exps)
            if self.kind == "top":
                # only a degree-compatible order may be prefixed by the (shifted) degree
                k = (sum(exps) + self.shift(comp), mk, -comp) if self.monomial.is_degree_compatible() \
                    else (mk, -comp)
            elif self.kind == "pot":
                pos = self.rank_of[comp] if self.rank_of is not None else comp
                k = (-pos, mk)
            else:
                k = (-(sum(exps) + self.shift(comp)), mk, -comp)
            self._memo[term] = k
        return k


# ---------------------------------------------------------------- raw engine

class _Element:
    __slots__ = ("poly", "lt", "sugar")

    def __init__(self, poly: dict, lt, sugar: int):
        self.poly = poly
        self.lt = lt
        self.sugar = sugar


def _leading(poly: dict, order: ModuleOrder):
    return max(poly, key=order)


def _make_monic(poly: dict, lt) -> dict:
    c = poly[lt]
    if c == 1:
        return poly
    inv = ONE / c
    return {t: v * inv for t, v in poly.items()}


def _sub_multiple(f: dict, g: dict, q: tuple, c, cap=None, order=None):
    """f -= c * q * g in place; terms above the degree cap are discarded."""
    for (k, m), v in g.items():
        mm = tuple(a + b for a, b in zip(m, q))
        if cap is not None and sum(mm) + order.shift(k) > cap:
            continue
        t = (k, mm)
        nv = f.get(t, ZERO) - c * v
        if nv:
            f[t] = nv
        else:
            f.pop(t, None)


def _poly_sugar(poly: dict, order: ModuleOrder) -> int:
    return max(sum(m) + order.shift(k) for (k, m) in poly)


class _Reducer:
    """Holds the current basis and finds reducers by leading-term divisibility."""

    def __init__(self, order: ModuleOrder, cap: int | None = None):
        self.order = order
        self.cap = cap
        self.elements: list[_Element] = []
        self.by_comp: dict[int, list[int]] = {}

    def add(self, el: _Element) -> int:
        self.elements.append(el)
        idx = len(self.elements) - 1
        self.by_comp.setdefault(el.lt[0], []).append(idx)
        return idx

    def remove(self, idx: int):
        comp = self.elements[idx].lt[0]
        self.by_comp[comp].remove(idx)

    def find(self, term):
        comp, exps = term
        for idx in self.by_comp.get(comp, ()):
            e = self.elements[idx]
            if divides(e.lt[1], exps):
                return e
        return None

    def top_reduce(self, f: dict, sugar: int):
        order = self.order
        while f:
            lt = max(f, key=order)
            g = self.find(lt)
            if g is None:
                return f, lt, sugar
            q = monomial_div(lt[1], g.lt[1])
            sugar = max(sugar, sum(q) + g.sugar)
            _sub_multiple(f, g.poly, q, f[lt], self.cap, order)
        return f, None, sugar

    def full_reduce(self, f: dict) -> dict:
        order = self.order
        rem = {}
        f = dict(f)
        while f:
            lt = max(f, key=order)
            g = self.find(lt)
            if g is None:
                rem[lt] = f.pop(lt)
                continue
            q = monomial_div(lt[1], g.lt[1])
            _sub_multiple(f, g.poly, q, f[lt], self.cap, order)
        return rem


def _truncate(poly: dict, order: ModuleOrder, cap: int | None) -> dict:
    if cap is None:
        return poly
    return {t: v for t, v in poly.items() if sum(t[1]) + order.shift(t[0]) <= cap}


def buchberger(gens: Iterable[dict], order: ModuleOrder, cap: int | None = None,
               ideal_case: bool = False) -> list[dict]:
    """Reduced Gröbner basis (standard basis modulo terms above ``cap`` when given)."""
    red = _Reducer(order, cap)
    pairs: list[tuple[int, int, tuple, int]] = []
    active: list[int] = []
    use_product = ideal_case and cap is None

    def lcm_of(i, j):
        return monomial_lcm(red.elements[i].lt[1], red.elements[j].lt[1])

    def insert(poly: dict, sugar: int):
        nonlocal pairs, active
        lt = _leading(poly, order)
        poly = _make_monic(poly, lt)
        h = red.add(_Element(poly, lt, sugar))
        hel = red.elements[h]
        comp = lt[0]
        cands = [g for g in active if red.elements[g].lt[0] == comp]
        lcms = {g: lcm_of(h, g) for g in cands}

        def coprime(g):
            return use_product and all(not (a and b) for a, b in zip(hel.lt[1], red.elements[g].lt[1]))

        kept = []
        pending = list(cands)
        while pending:
            g1 = pending.pop(0)
            l1 = lcms[g1]
            if coprime(g1):
                kept.append(g1)
                continue
            if any(divides(lcms[g2], l1) for g2 in pending) or any(divides(lcms[g2], l1) for g2 in kept):
                continue
            kept.append(g1)
        new_pairs = []
        for g in kept:
            if not coprime(g):
                l = lcms[g]
                el_g = red.elements[g]
                s = max(sum(monomial_div(l, el_g.lt[1])) + el_g.sugar, sum(monomial_div(l, hel.lt[1])) + hel.sugar)
                new_pairs.append((g, h, l, s))
        survivors = []
        for (a, b, l, s) in pairs:
            if (red.elements[a].lt[0] == comp and divides(hel.lt[1], l)
                    and lcm_of(a, h) != l and lcm_of(b, h) != l):
                continue
            survivors.append((a, b, l, s))
        pairs = survivors + new_pairs
        still = []
        for g in active:
            eg = red.elements[g]
            if eg.lt[0] == comp and divides(hel.lt[1], eg.lt[1]):
                red.remove(g)
            else:
                still.append(g)
        active = still + [h]

    for g in gens:
        g = _truncate(dict(g), order, cap)
        if not g:
            continue
        sugar = _poly_sugar(g, order)
        g, lt, sugar = red.top_reduce(g, sugar)
        if g:
            insert(g, sugar)

    while pairs:
        best = min(range(len(pairs)), key=lambda i: (pairs[i][3], sum(pairs[i][2])))
        a, b, l, s = pairs.pop(best)
        ea, eb = red.elements[a], red.elements[b]
        comp = ea.lt[0]
        spoly = {}
        qa = monomial_div(l, ea.lt[1])
        qb = monomial_div(l, eb.lt[1])
        for (k, m), v in ea.poly.items():
            mm = monomial_mul(m, qa)
            if cap is not None and sum(mm) + order.shift(k) > cap:
                continue
            spoly[(k, mm)] = v
        _sub_multiple(spoly, eb.poly, qb, ONE, cap, order)
        if not spoly:
            continue
        spoly, lt, sugar = red.top_reduce(spoly, s)
        if spoly:
            insert(spoly, sugar)

    # minimal + reduced
    basis = [red.elements[i] for i in active]
    final = _Reducer(order, cap)
    for el in basis:
        final.add(el)
    out = []
    for idx, el in enumerate(basis):
        final.remove(idx)
        tail = dict(el.poly)
        lead_c = tail.pop(el.lt)
        reduced_tail = final.full_reduce(tail) if tail else {}
        reduced_tail[el.lt] = lead_c
        poly = _make_monic(reduced_tail, el.lt)
        final.elements[idx] = _Element(poly, el.lt, el.sugar)
        final.by_comp.setdefault(el.lt[0], []).append(idx)
        out.append(poly)
    out.sort(key=lambda p: order(_leading(p, order)))
    return out


def normal_form_raw(f: dict, basis: Sequence[dict], order: ModuleOrder, cap: int | None = None) -> dict:
    red = _Reducer(order, cap)
    for g in basis:
        lt = _leading(g, order)
        red.add(_Element(_make_monic(g, lt), lt, 0))
    return red.full_reduce(_truncate(dict(f), order, cap))


# ---------------------------------------------------------------- conversions

def _poly_to_raw(p: Polynomial) -> dict:
    return {(0, m): c for m, c in p.terms.items()}


def _raw_to_poly(raw: dict, variables) -> Polynomial:
    return Polynomial._raw({m: c for (k, m), c in raw.items()}, tuple(variables))


def _vec_to_raw(v) -> dict:
    if isinstance(v, FreeVector):
        return v.to_terms()
    out = {}
    for k, c in enumerate(v):
        for m, val in c.terms.items():
            out[(k, m)] = val
    return out


def _raw_to_vec(raw: dict, rank: int, variables, degrees=None) -> FreeVector:
    return FreeVector.from_terms(raw, rank, variables, degrees)


def _raw_project(raw: dict, start: int, stop: int) -> dict:
    return {(k - start, m): c for (k, m), c in raw.items() if start <= k < stop}


def _raw_shift(raw: dict, offset: int) -> dict:
    return {(k + offset, m): c for (k, m), c in raw.items()}


def _raw_scale(raw: dict, poly_terms: dict) -> dict:
    out: dict = {}
    for (k, m), c in raw.items():
        for m2, c2 in poly_terms.items():
            t = (k, monomial_mul(m, m2))
            v = out.get(t, ZERO) + c * c2
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def _raw_add(a: dict, b: dict, scale=ONE) -> dict:
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, ZERO) + scale * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _component_poly(raw: dict, comp: int) -> dict:
    return {m: c for (k, m), c in raw.items() if k == comp}


def _is_constant_entry(raw: dict, comp: int):
    entry = _component_poly(raw, comp)
    if len(entry) == 1:
        (m, c), = entry.items()
        if not any(m):
            return c
    return None


# ---------------------------------------------------------------- public Gröbner API

def groebner_basis(gens: Sequence, order: MonomialOrder = GREVLEX, module_order: str = "top",
                   shifts: Sequence[int] | None = None):
    """Reduced Gröbner basis of an ideal (Polynomial input) or submodule (FreeVector input)."""
    gens = list(gens)
    if not gens:
        return []
    if isinstance(gens[0], Polynomial):
        variables = gens[0].variables
        raw = buchberger([_poly_to_raw(g) for g in gens], ModuleOrder("top", order), ideal_case=True)
        return [_raw_to_poly(r, variables) for r in raw]
    rank = gens[0].rank
    variables = gens[0].variables
    degrees = gens[0].degrees
    raw = buchberger([g.to_terms() for g in gens], ModuleOrder(module_order, order, shifts or degrees))
    return [_raw_to_vec(r, rank, variables, degrees) for r in raw]


def normal_form(f, basis: Sequence, order: MonomialOrder = GREVLEX, module_order: str = "top",
                shifts: Sequence[int] | None = None):
    """Remainder of f on division by a Gröbner basis; zero iff f lies in the span."""
    if isinstance(f, Polynomial):
        raw = normal_form_raw(_poly_to_raw(f), [_poly_to_raw(b) for b in basis], ModuleOrder("top", order))
        return _raw_to_poly(raw, f.variables)
    mo = ModuleOrder(module_order, order, shifts or f.degrees)
    raw = normal_form_raw(f.to_terms(), [b.to_terms() for b in basis], mo)
    return _raw_to_vec(raw, f.rank, f.variables, f.degrees)


def s_pairs_reduce_to_zero(basis: Sequence, order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion, checked on every pair with matching leading components."""
    if not basis:
        return True
    if isinstance(basis[0], Polynomial):
        raws = [_poly_to_raw(b) for b in basis]
    else:
        raws = [b.to_terms() for b in basis]
    mo = ModuleOrder("top", order, None if isinstance(basis[0], Polynomial) else basis[0].degrees)
    lts = [_leading(r, mo) for r in raws]
    for i, j in itertools.combinations(range(len(raws)), 2):
        if lts[i][0] != lts[j][0]:
            continue
        l = monomial_lcm(lts[i][1], lts[j][1])
        sp = _raw_scale(raws[i], {monomial_div(l, lts[i][1]): ONE / raws[i][lts[i]]})
        sp = _raw_add(sp, _raw_scale(raws[j], {monomial_div(l, lts[j][1]): ONE / raws[j][lts[j]]}), -ONE)
        if sp and normal_form_raw(sp, raws, mo):
            return False
    return True


# ---------------------------------------------------------------- ideals

class Ideal:
    """An ideal of k[variables] given by generators, with a cached Gröbner basis per order."""

    def __init__(self, generators: Sequence[Polynomial], variables: Sequence[str] | None = None,
                 certified_degree: int | None = None):
        if variables is None:
            if not generators:
                raise ValueError("need variables for the zero ideal")
            variables = generators[0].variables
        self.variables = tuple(variables)
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = parse_polynomial(g, self.variables)
            if g.variables != self.variables:
                raise ValueError("generator in the wrong ring")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)
        self.certified_degree = certified_degree
        self._gb: dict = {}

    @classmethod
    def parse(cls, texts: Sequence[str], variables: Sequence[str]) -> "Ideal":
        return cls([parse_polynomial(t, variables) for t in texts], variables)

    @classmethod
    def maximal(cls, variables: Sequence[str]) -> "Ideal":
        return cls([Polynomial.variable(i, variables) for i in range(len(variables))], variables)

    @classmethod
    def unit(cls, variables: Sequence[str]) -> "Ideal":
        return cls([Polynomial.constant(1, variables)], variables)

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> list[Polynomial]:
        if order not in self._gb:
            self._gb[order] = groebner_basis(self.generators, order) if self.generators else []
        return self._gb[order]

    def reduce(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return normal_form(f, self.groebner_basis(order), order)

    def contains(self, f) -> bool:
        if isinstance(f, str):
            f = parse_polynomial(f, self.variables)
        return self.reduce(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return (self.variables == other.variables and self.contains_ideal(other)
                and other.contains_ideal(self))

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.groebner_basis())

    def is_weight_homogeneous(self, weights: Sequence[int]) -> bool:
        def ok(p):
            return len({sum(w * e for w, e in zip(weights, m)) for m in p.terms}) <= 1
        return all(ok(g) for g in self.groebner_basis(MonomialOrder("wgrevlex", tuple(weights))))

    def zero_set_contains(self, point: Sequence) -> bool:
        return ideal_zero_set_test(self, point)

    def intersect(self, other: "Ideal") -> "Ideal":
        return intersect_ideals([self, other])

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators, self.variables)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.generators for b in other.generators], self.variables)

    def power(self, k: int) -> "Ideal":
        result = Ideal.unit(self.variables)
        for _ in range(k):
            result = result * self
        return Ideal(result.groebner_basis(), self.variables)

    def colon(self, f: Polynomial) -> "Ideal":
        """(I : f) via the kernel of [f | I]."""
        if f.is_zero():
            return Ideal.unit(self.variables)
        cols = [FreeVector([f])] + [FreeVector([g]) for g in self.generators]
        syz = syzygies(cols)
        return Ideal([s[0] for s in syz], self.variables)

    def hilbert_series(self, D: int = 12) -> "HilbertSeries":
        return hilbert_series(FPModule.cyclic(self), D)

    def minimal_generators(self) -> list[Polynomial]:
        return self.groebner_basis()

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(format_polynomial(g) for g in self.groebner_basis()) + ")"

    __repr__ = __str__

    def to_json(self) -> dict:
        out = {
            "variables": list(self.variables),
            "generators": [format_polynomial(g) for g in self.groebner_basis()],
            "relations": [],
            "degrees": [],
        }
        if self.certified_degree is not None:
            out["certified_degree"] = self.certified_degree
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Ideal":
        variables = data["variables"]
        return cls([parse_polynomial(g, variables) for g in data["generators"]], variables)


def ideal_zero_set_test(I: Ideal, point: Sequence) -> bool:
    if len(point) != len(I.variables):
        raise ValueError("point has the wrong number of coordinates")
    return all(g.evaluate(point) == 0 for g in I.generators)


def intersect_ideals(ideals: Sequence[Ideal]) -> Ideal:
    """Intersection by eliminating the first r components of the module generated by
    (1,…,1,1) and the generators of I_j placed in component j."""
    ideals = list(ideals)
    variables = ideals[0].variables
    if any(I.is_zero() for I in ideals):
        return Ideal([], variables)
    nonunit = [I for I in ideals if not I.is_unit()]
    if not nonunit:
        return Ideal.unit(variables)
    if len(nonunit) == 1:
        return Ideal(nonunit[0].groebner_basis(), variables)
    r = len(nonunit)
    zero_mon = (0,) * len(variables)
    gens = [{(k, zero_mon): ONE for k in range(r + 1)}]
    for j, I in enumerate(nonunit):
        for g in I.generators:
            gens.append({(j, m): c for m, c in g.terms.items()})
    order = ModuleOrder("pot", GREVLEX)
    gb = buchberger(gens, order)
    keep = [_component_poly(g, r) for g in gb if _leading(g, order)[0] == r]
    return Ideal([Polynomial._raw(p, variables) for p in keep], variables)


# ---------------------------------------------------------------- syzygies

def _columns_to_raw(columns) -> tuple[list[dict], int, tuple]:
    cols = list(columns)
    if cols and isinstance(cols[0], FreeVector):
        return [c.to_terms() for c in cols], cols[0].rank, cols[0].variables
    raise TypeError("expected a list of FreeVector columns")


def matrix_columns(rows: Sequence[Sequence[Polynomial]]) -> list[FreeVector]:
    """Turn a row-major matrix of polynomials into its list of columns."""
    if not rows:
        return []
    return [FreeVector([rows[i][j] for i in range(len(rows))]) for j in range(len(rows[0]))]


def syzygies_raw(cols: Sequence[dict], rank: int) -> list[dict]:
    """Generators of the kernel of S^len(cols) -> S^rank, as raw vectors."""
    n = len(cols)
    if n == 0:
        return []
    zero_mon = next(((0,) * len(m) for c in cols for (_, m) in c), None)
    if zero_mon is None:
        raise ValueError("all columns are zero; pass the variable count explicitly")
    gens = [dict(c) for c in cols]
    for j, g in enumerate(gens):
        g[(rank + j, zero_mon)] = ONE
    order = ModuleOrder("pot", GREVLEX)
    gb = buchberger(gens, order)
    out = []
    for g in gb:
        if _leading(g, order)[0] >= rank:
            out.append(_raw_project(g, rank, rank + n))
    return out


def syzygies(columns, variables: Sequence[str] | None = None) -> list[FreeVector]:
    """Columns generating ker(M) for M given by its columns (FreeVector) or rows (list of lists)."""
    cols = list(columns)
    if not cols:
        return []
    if not isinstance(cols[0], FreeVector):
        cols = matrix_columns(cols)
    raw, rank, vars_ = _columns_to_raw(cols)
    n = len(raw)
    nz = [j for j in range(n) if raw[j]]
    out = []
    zero_mon = (0,) * len(vars_)
    for j in range(n):
        if not raw[j]:
            out.append({(j, zero_mon): ONE})
    if nz:
        sub = syzygies_raw([raw[j] for j in nz], rank)
        for s in sub:
            out.append({(nz[k], m): c for (k, m), c in s.items()})
    mo = ModuleOrder("top", GREVLEX)
    out = buchberger(out, mo) if out else []
    return [_raw_to_vec(s, n, vars_) for s in out]


# ---------------------------------------------------------------- finitely presented modules

@dataclass
class FPModule:
    """coker(relations) for a free module on ``ngens`` generators of the given degrees.

    ``representatives`` optionally records, for each generator, a vector in an ambient free
    module that the generator stands for (e.g. a Koszul cycle).
    """

    variables: tuple
    ngens: int
    relations: list = field(default_factory=list)  # raw vectors over components 0..ngens-1
    degrees: list = field(default_factory=list)
    homogeneous: bool = True
    representatives: list | None = None
    names: list | None = None

    # constructors
    @classmethod
    def from_vectors(cls, relations: Sequence[FreeVector], ngens: int, variables: Sequence[str],
                     degrees: Sequence[int] | None = None) -> "FPModule":
        m = cls(tuple(variables), ngens, [r.to_terms() for r in relations if not r.is_zero()])
        m.degrees, m.homogeneous = infer_degrees(m.relations, ngens, degrees)
        return m

    @classmethod
    def cyclic(cls, I: Ideal) -> "FPModule":
        rels = [_poly_to_raw(g) for g in I.generators]
        m = cls(I.variables, 1, rels)
        m.degrees, m.homogeneous = infer_degrees(rels, 1, [0])
        return m

    @classmethod
    def free(cls, rank: int, variables: Sequence[str], degrees: Sequence[int] | None = None) -> "FPModule":
        return cls(tuple(variables), rank, [], list(degrees or [0] * rank), True)

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "FPModule":
        return cls(tuple(variables), 0, [], [], True)

    # queries
    def is_zero(self) -> bool:
        return self.ngens == 0

    def relation_vectors(self) -> list[FreeVector]:
        if self.ngens == 0:
            return []
        return [_raw_to_vec(r, self.ngens, self.variables, self.degrees) for r in self.relations]

    def relation_matrix(self) -> list[list[Polynomial]]:
        """Row-major g x m presentation matrix."""
        vecs = self.relation_vectors()
        return [[v[i] for v in vecs] for i in range(self.ngens)]

    def groebner_relations(self, order: str = "top") -> list[dict]:
        if not self.relations:
            return []
        return buchberger(self.relations, ModuleOrder(order, GREVLEX, self.degrees))

    def is_cyclic(self) -> bool:
        return self.ngens == 1

    def as_cyclic_ideal(self) -> Ideal:
        if self.ngens != 1:
            raise ValueError("module is not cyclic")
        return Ideal([Polynomial._raw(_component_poly(r, 0), self.variables) for r in self.relations],
                      self.variables)

    def describe(self) -> str:
        if self.ngens == 0:
            return "0"
        ring = "k[" + ",".join(self.variables) + "]"
        if self.ngens == 1:
            I = self.as_cyclic_ideal()
            return ring if I.is_zero() else f"{ring}/{I}"
        return f"coker of a {self.ngens}x{len(self.relations)} matrix over {ring}"

    def __str__(self):
        return self.describe()

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "generators": list(self.names) if self.names else [f"g{i + 1}" for i in range(self.ngens)],
            "relations": [[format_polynomial(c) for c in v] for v in self.relation_vectors()],
            "degrees": list(self.degrees),
            "homogeneous": self.homogeneous,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FPModule":
        variables = data["variables"]
        ngens = len(data["generators"])
        rels = [FreeVector([parse_polynomial(e, variables) for e in col]) for col in data["relations"]]
        return cls.from_vectors(rels, ngens, variables, data.get("degrees") or None)


def _vector_degree(raw: dict):
    """S-degree of a vector if every term has the same total degree, else None."""
    degs = {sum(m) for (_, m) in raw}
    return degs.pop() if len(degs) == 1 else None


def infer_degrees(relations: Sequence[dict], ngens: int, candidates: Sequence | None = None):
    """Generator degrees making every relation homogeneous, and whether that is possible.

    Candidate degrees (None allowed) are tried first; otherwise degrees are propagated along
    relations, anchored at a generator's candidate degree or 0.
    """
    cand = list(candidates) if candidates is not None else [None] * ngens

    def homogeneous_with(degs):
        for r in relations:
            if len({sum(m) + degs[k] for (k, m) in r}) > 1:
                return False
        return True

    if all(c is not None for c in cand) and homogeneous_with(cand):
        return list(cand), True
    # propagate offsets
    assigned: list = [None] * ngens
    consistent = True
    edges: dict[int, list] = {i: [] for i in range(ngens)}
    for r in relations:
        comps = {}
        for (k, m) in r:
            comps.setdefault(k, set()).add(sum(m))
        if any(len(s) > 1 for s in comps.values()):
            consistent = False
            continue
        items = [(k, s.pop()) for k, s in comps.items()]
        for (k1, e1), (k2, e2) in zip(items, items[1:]):
            # e1 + d1 = e2 + d2
            edges[k1].append((k2, e1 - e2))
            edges[k2].append((k1, e2 - e1))
    for start in range(ngens):
        if assigned[start] is not None:
            continue
        assigned[start] = cand[start] if cand[start] is not None else 0
        stack = [start]
        comp_members = [start]
        while stack:
            a = stack.pop()
            for b, off in edges[a]:
                val = assigned[a] + off
                if assigned[b] is None:
                    assigned[b] = val
                    stack.append(b)
                    comp_members.append(b)
                elif assigned[b] != val:
                    consistent = False
        known = [cand[i] for i in comp_members if cand[i] is not None]
        if known and consistent:
            low = min(known)
            shift = low - min(assigned[i] for i in comp_members if cand[i] is not None)
            for i in comp_members:
                assigned[i] += shift
    if consistent and homogeneous_with(assigned):
        return assigned, True
    return [c if c is not None else 0 for c in cand], False


def _representative_degree(rep: dict | None):
    if rep is None or not rep:
        return None
    return _vector_degree(rep)


def _representative_order(rep: dict | None) -> int:
    if not rep:
        return 0
    return min(sum(m) for (_, m) in rep)


def minimalize(module: FPModule) -> FPModule:
    """Remove generators that a relation with a nonzero constant entry expresses in terms of others.

    Among candidates the generator of highest (preliminary) degree is eliminated, ties going to
    the larger index, so low-degree representatives survive.
    """
    ngens = module.ngens
    reps = list(module.representatives) if module.representatives is not None else [None] * ngens
    names = list(module.names) if module.names else None
    prelim = []
    for i in range(ngens):
        d = _representative_degree(reps[i])
        if d is None:
            d = _representative_order(reps[i]) if reps[i] else (module.degrees[i] if module.degrees else 0)
        prelim.append(d)
    alive = list(range(ngens))
    rels = [dict(r) for r in module.relations if r]
    while True:
        if not alive:
            rels = []
            break
        if rels:
            rels = buchberger(rels, ModuleOrder("top", GREVLEX, [prelim[i] if i < len(prelim) else 0 for i in range(ngens)]))
        best = None
        for ri, r in enumerate(rels):
            comps = {k for (k, _) in r}
            for k in comps:
                c = _is_constant_entry(r, k)
                if c is not None:
                    cand = (prelim[k], k)
                    if best is None or cand > best[0]:
                        best = (cand, ri, k, c)
        if best is None:
            break
        _, ri, k, c = best
        pivot = rels.pop(ri)
        new_rels = []
        for r in rels:
            entry = _component_poly(r, k)
            if entry:
                # r -= (entry / c) * pivot
                r = _raw_add(r, _raw_scale(pivot, {m: v / c for m, v in entry.items()}), -ONE)
            if r:
                new_rels.append(r)
        rels = new_rels
        alive.remove(k)
    # re-index
    index = {old: new for new, old in enumerate(alive)}
    out_rels = []
    for r in rels:
        rr = {(index[k], m): c for (k, m), c in r.items()}
        if rr:
            out_rels.append(rr)
    cand = [_representative_degree(reps[i]) for i in alive]
    if module.representatives is None and module.degrees:
        cand = [module.degrees[i] for i in alive]
    result = FPModule(module.variables, len(alive), out_rels,
                      representatives=[reps[i] for i in alive] if module.representatives is not None else None,
                      names=[names[i] for i in alive] if names else None)
    result.degrees, result.homogeneous = infer_degrees(out_rels, len(alive), cand)
    if out_rels:
        result.relations = buchberger(out_rels, ModuleOrder("top", GREVLEX, result.degrees))
    return result


def subquotient_presentation(kernel_gens: Sequence, image_gens: Sequence,
                             variables: Sequence[str] | None = None, check: bool = True) -> FPModule:
    """Presentation of span(kernel_gens) / span(image_gens), minimalized."""
    K = [g.to_terms() if isinstance(g, FreeVector) else dict(g) for g in kernel_gens]
    I = [g.to_terms() if isinstance(g, FreeVector) else dict(g) for g in image_gens]
    if variables is None:
        sample = next((v for v in list(kernel_gens) + list(image_gens) if isinstance(v, FreeVector)), None)
        if sample is None:
            raise ValueError("variables required")
        variables = sample.variables
    variables = tuple(variables)
    K = [k for k in K if k]
    I = [v for v in I if v]
    if not K:
        if I:
            raise InconsistentSubquotient("nonzero image inside a zero kernel")
        return FPModule.zero(variables)
    rank = 1 + max(k for v in K + I for (k, _) in v)
    if check and I:
        order = ModuleOrder("top", GREVLEX)
        kgb = buchberger(K, order)
        for v in I:
            if normal_form_raw(v, kgb, order):
                raise InconsistentSubquotient("image generator not contained in the kernel span")
    p = len(K)
    zero_mon = (0,) * len(variables)
    rels = []
    if I or p > 1:
        syz = syzygies_raw(K + I, rank)
        for s in syz:
            proj = _raw_project(s, 0, p)
            if proj:
                rels.append(proj)
    module = FPModule(variables, p, rels, representatives=K)
    module.degrees = [_representative_degree(k) or 0 for k in K]
    return minimalize(module)


# ---------------------------------------------------------------- annihilators, minors, exterior powers

def colon_generator(module: FPModule, i: int) -> Ideal:
    """(relations : e_i) as an ideal: GB with component i ranked lowest."""
    variables = module.variables
    if not module.relations:
        return Ideal([], variables)
    priority = [k for k in range(module.ngens) if k != i] + [i]
    order = ModuleOrder("pot", GREVLEX, priority=priority)
    gb = buchberger(module.relations, order)
    gens = [Polynomial._raw(_component_poly(g, i), variables) for g in gb if _leading(g, order)[0] == i]
    return Ideal(gens, variables)


def annihilator(module: FPModule) -> Ideal:
    variables = module.variables
    if module.ngens == 0:
        return Ideal.unit(variables)
    return intersect_ideals([colon_generator(module, i) for i in range(module.ngens)])


def _det_cache_minors(rows: Sequence[Sequence[Polynomial]], t: int, variables) -> list[Polynomial]:
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    zero = Polynomial.zero(variables)

    @lru_cache(maxsize=None)
    def det(rsel: tuple, csel: tuple) -> Polynomial:
        if len(rsel) == 1:
            return rows[rsel[0]][csel[0]]
        r0 = rsel[0]
        total = zero
        for idx, c in enumerate(csel):
            entry = rows[r0][c]
            if entry.is_zero():
                continue
            sub = det(rsel[1:], csel[:idx] + csel[idx + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            total = total + term if idx % 2 == 0 else total - term
        return total

    out = []
    seen = set()
    for rsel in itertools.combinations(range(nrows), t):
        for csel in itertools.combinations(range(ncols), t):
            d = det(rsel, csel)
            if not d.is_zero() and d not in seen:
                seen.add(d)
                out.append(d)
    return out


def minors_ideal(matrix: Sequence[Sequence[Polynomial]], t: int, variables: Sequence[str] | None = None) -> Ideal:
    """Ideal of t x t minors of a row-major polynomial matrix; (1) for t <= 0, (0) if t is too big."""
    if variables is None:
        variables = matrix[0][0].variables
    variables = tuple(variables)
    if t <= 0:
        return Ideal.unit(variables)
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if t > min(nrows, ncols):
        return Ideal([], variables)
    return Ideal(_det_cache_minors(matrix, t, variables), variables)


def fitting_ideal(module: FPModule, s: int) -> Ideal:
    g = module.ngens
    if s >= g:
        return Ideal.unit(module.variables)
    mat = module.relation_matrix()
    if not module.relations:
        return Ideal([], module.variables)
    return minors_ideal(mat, g - s, module.variables)


def exterior_power(module: FPModule, s: int) -> FPModule:
    """⋀^s of coker(phi): generators are s-subsets, relations are phi_j ∧ e_J for (s-1)-subsets J."""
    if s < 1:
        raise ValueError("s must be at least 1")
    g = module.ngens
    subsets = list(itertools.combinations(range(g), s))
    index = {J: i for i, J in enumerate(subsets)}
    rels = []
    for r in module.relations:
        for J in itertools.combinations(range(g), s - 1):
            out: dict = {}
            for (k, m), c in r.items():
                if k in J:
                    continue
                merged = tuple(sorted(J + (k,)))
                sign = -1 if sum(1 for j in J if j < k) % 2 else 1
                t = (index[merged], m)
                v = out.get(t, ZERO) + sign * c
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
            if out:
                rels.append(out)
    degs = [sum(module.degrees[i] for i in J) for J in subsets] if module.degrees else None
    result = FPModule(module.variables, len(subsets), rels)
    result.degrees, result.homogeneous = infer_degrees(rels, len(subsets), degs)
    return result


# ---------------------------------------------------------------- Hilbert series

def _poly_mul_int(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _minimal_monomials(gens) -> tuple:
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


@lru_cache(maxsize=None)
def _numerator(gens: tuple) -> tuple:
    """Numerator N of Hilb(S/L) = N / (1-t)^n for the monomial ideal L, as sorted (deg, coeff) pairs."""
    gens = _minimal_monomials(gens)
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    # pairwise coprime generators give a complete intersection
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(not (supports[i] & supports[j]) for i in range(len(gens)) for j in range(i + 1, len(gens))):
        acc = {0: 1}
        for g in gens:
            acc = _poly_mul_int(acc, {0: 1, sum(g): -1})
        return tuple(sorted(acc.items()))
    # N(L) = N(L') - t^deg(m) N(L' : m), with m a generator sharing a variable with another
    shared = next(i for i in range(len(gens) - 1, -1, -1)
                  if any(supports[i] & supports[j] for j in range(len(gens)) if j != i))
    m = gens[shared]
    rest = gens[:shared] + gens[shared + 1:]
    base = _numerator(rest)
    colon = _numerator(tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
    acc = dict(base)
    dm = sum(m)
    for d, c in colon:
        acc[d + dm] = acc.get(d + dm, 0) - c
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def monomial_hilbert_numerator(gens: Sequence[tuple], nvars: int) -> dict:
    if not gens:
        return {0: 1}
    return dict(_numerator(tuple(tuple(g) for g in gens)))


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1-t)^denominator with an integer Laurent numerator starting at t^low."""

    numerator: tuple
    denominator: int
    low: int = 0

    @classmethod
    def from_dict(cls, coeffs: dict, denominator: int) -> "HilbertSeries":
        coeffs = {k: v for k, v in coeffs.items() if v}
        if not coeffs:
            return cls((), denominator, 0)
        low = min(coeffs)
        high = max(coeffs)
        return cls(tuple(coeffs.get(i, 0) for i in range(low, high + 1)), denominator, low)

    def numerator_dict(self) -> dict:
        return {self.low + i: c for i, c in enumerate(self.numerator) if c}

    def reduced(self) -> "HilbertSeries":
        num = list(self.numerator)
        den = self.denominator
        while den > 0 and num and sum(num) == 0:
            # divide by (1 - t)
            q = []
            acc = 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = q
            den -= 1
        while num and num[-1] == 0:
            num.pop()
        low = self.low
        while num and num[0] == 0:
            num.pop(0)
            low += 1
        return HilbertSeries(tuple(num), den, low if num else 0)

    def expansion(self, D: int) -> list[int]:
        """Coefficients of t^0..t^D."""
        out = [0] * (D + 1)
        n = self.denominator
        for d, c in self.numerator_dict().items():
            for k in range(0, D + 1 - d) if d <= D else ():
                if d + k < 0:
                    continue
                out[d + k] += c * (comb(k + n - 1, n - 1) if n > 0 else (1 if k == 0 else 0))
        return out

    @property
    def dimension(self) -> int:
        return self.reduced().denominator

    @property
    def multiplicity(self) -> int:
        return sum(self.reduced().numerator)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        a, b = self.reduced(), other.reduced()
        return (a.numerator, a.denominator, a.low) == (b.numerator, b.denominator, b.low)

    def __hash__(self):
        r = self.reduced()
        return hash((r.numerator, r.denominator, r.low))

    def __str__(self):
        r = self.reduced()
        num = _format_int_poly(r.numerator_dict())
        if r.denominator == 0:
            return num
        den = "(1 - t)" if r.denominator == 1 else f"(1 - t)^{r.denominator}"
        if len(r.numerator_dict()) > 1:
            num = f"({num})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        r = self.reduced()
        return {"numerator": {str(k): v for k, v in sorted(r.numerator_dict().items())},
                "denominator_exponent": r.denominator, "text": str(self)}


def _format_int_poly(coeffs: dict) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, (d, c) in enumerate(sorted(coeffs.items())):
        mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def parse_hilbert(text: str, nvars: int | None = None) -> HilbertSeries:
    """Parse forms like "1+2t", "t/(1-t)^2", "(2-t)/(1-t)^3", "3/(1-t)^2"."""
    t = text.replace(" ", "").replace("−", "-")
    den = 0
    if "/(1-t)" in t:
        num_txt, den_txt = t.split("/(1-t)")
        den = int(den_txt[1:]) if den_txt.startswith("^") else 1
    else:
        num_txt = t
    if num_txt.startswith("(") and num_txt.endswith(")"):
        num_txt = num_txt[1:-1]
    p = parse_polynomial(num_txt.replace("t", "*t").lstrip("*").replace("+*", "+").replace("-*", "-")
                         .replace("(*", "("), ("t",))
    coeffs = {m[0]: int(c) for m, c in p.terms.items()}
    return HilbertSeries.from_dict(coeffs, den)


def leading_module(module: FPModule, degrees: Sequence[int] | None = None) -> dict[int, list[tuple]]:
    degs = list(degrees if degrees is not None else module.degrees)
    order = ModuleOrder("top", GREVLEX, degs)
    out: dict[int, list] = {i: [] for i in range(module.ngens)}
    if module.relations:
        for g in buchberger(module.relations, order):
            comp, exps = _leading(g, order)
            out[comp].append(exps)
    return out


def _series_from_leading(module: FPModule, degs: Sequence[int]) -> HilbertSeries:
    n = len(module.variables)
    lead = leading_module(module, degs)
    total: dict = {}
    for comp, mons in lead.items():
        num = monomial_hilbert_numerator(mons, n)
        for d, c in num.items():
            total[d + degs[comp]] = total.get(d + degs[comp], 0) + c
    return HilbertSeries.from_dict(total, n)


def hilbert_series(module: FPModule, D: int = 12) -> HilbertSeries:
    """Hilbert series of a graded module via the leading-term module of a degree-compatible basis."""
    if not module.homogeneous:
        raise NotHomogeneous("module is not graded; use graded_dims_truncated with an explicit bound")
    return _series_from_leading(module, module.degrees)


def leading_term_hilbert_series(module: FPModule) -> HilbertSeries:
    """Hilbert series of S^g / LT(relations) under graded reverse lex (generators in their stated degrees).

    For non-graded modules this is the series of the leading-term module, not of an associated graded.
    """
    return _series_from_leading(module, module.degrees or [0] * module.ngens)


def truncated_standard_basis(relations: Sequence[dict], ngens: int, D: int,
                             shifts: Sequence[int] | None = None) -> list[dict]:
    """Standard basis of relations + 𝔪^{D+1}·F under the lowest-degree-first order."""
    order = ModuleOrder("local", GREVLEX, shifts or [0] * ngens)
    return buchberger(list(relations), order, cap=D)


def graded_dims_truncated(module: FPModule, D: int, use_degrees: bool = False) -> list[int]:
    """dim 𝔪^k M / 𝔪^{k+1} M for k = 0..D (generators in filtration 0).

    With ``use_degrees`` the filtration starts each generator at its degree, which recovers the
    Hilbert function of a graded module.
    """
    n = len(module.variables)
    shifts = list(module.degrees) if use_degrees else [0] * module.ngens
    order = ModuleOrder("local", GREVLEX, shifts)
    sb = truncated_standard_basis(module.relations, module.ngens, D, shifts) if module.relations else []
    lead: dict[int, list] = {i: [] for i in range(module.ngens)}
    for g in sb:
        comp, exps = _leading(g, order)
        lead[comp].append(exps)
    dims = [0] * (D + 1)
    for comp, mons in lead.items():
        num = monomial_hilbert_numerator(mons, n)
        series = HilbertSeries.from_dict({d + shifts[comp]: c for d, c in num.items()}, n)
        for k, v in enumerate(series.expansion(D)):
            dims[k] += v
    return dims


def initial_lowest_ideal(I: Ideal, D: int = 12) -> Ideal:
    """Ideal of lowest forms of elements of I, correct in degrees <= D."""
    if D < 1:
        raise ValueError("D must be at least 1")
    variables = I.variables
    if I.is_zero():
        return Ideal([], variables, certified_degree=D)
    order = ModuleOrder("local", GREVLEX, [0])
    sb = buchberger([_poly_to_raw(g) for g in I.generators], order, cap=D)
    forms = []
    for g in sb:
        p = _raw_to_poly(g, variables)
        forms.append(p.lowest_form())
    J = Ideal(forms, variables, certified_degree=D)
    return Ideal(J.groebner_basis(), variables, certified_degree=D)


def lowest_forms_oracle(I: Ideal, D: int) -> list[list[Polynomial]]:
    """Degree-by-degree spanning sets of In(I)_d, d = 0..D, by plain linear algebra.

    The space (I + 𝔪^{D+1})/𝔪^{D+1} is spanned by truncated products m*g; row reduction with
    columns sorted by increasing degree exposes, for every row, its lowest form.
    """
    from .linalg import rref

    variables = I.variables
    n = len(variables)
    monos = []
    for d in range(D + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            monos.append(tuple(e))
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in I.generators:
        for m in monos:
            row = [ZERO] * len(monos)
            nz = False
            for gm, c in g.terms.items():
                mm = monomial_mul(gm, m)
                if sum(mm) <= D:
                    row[col[mm]] = c
                    nz = True
            if nz:
                rows.append(row)
    if not rows:
        return [[] for _ in range(D + 1)]
    red, pivots = rref(rows)
    by_degree: list[list[Polynomial]] = [[] for _ in range(D + 1)]
    for row, p in zip(red, pivots):
        d = sum(monos[p])
        form = {monos[j]: row[j] for j in range(len(monos)) if row[j] and sum(monos[j]) == d}
        by_degree[d].append(Polynomial._raw(form, variables))
    return by_degree


def graded_dims_oracle(module: FPModule, D: int) -> list[int]:
    """dim 𝔪^k M/𝔪^{k+1}M by linear algebra on F/𝔪^{D+1}F (small cases only)."""
    from .linalg import rref

    n = len(module.variables)
    g = module.ngens
    monos = []
    for d in range(D + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            monos.append(tuple(e))
    terms = [(k, m) for m in monos for k in range(g)]
    col = {t: i for i, t in enumerate(terms)}
    rows = []
    for r in module.relations:
        for m in monos:
            row = [ZERO] * len(terms)
            nz = False
            for (k, rm), c in r.items():
                mm = monomial_mul(rm, m)
                if sum(mm) <= D:
                    row[col[(k, mm)]] = c
                    nz = True
            if nz:
                rows.append(row)
    # 𝔪^k M / 𝔪^{k+1} M: dim = (#terms of degree k) - (#pivots of lowest degree k)
    counts = [0] * (D + 1)
    for (k, m) in terms:
        counts[sum(m)] += 1
    if rows:
        red, pivots = rref(rows)
        for p in pivots:
            counts[sum(terms[p][1])] -= 1
    return counts
