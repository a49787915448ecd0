"""Independent oracles for the test-suite.

Nothing here calls into the engine's Gröbner or linear algebra code: ideals go through sympy,
ranks through sympy matrices over QQ, and series through brute-force monomial counting.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import sympy as sp


def to_sympy(poly, symbols=None):
    """Engine polynomial -> sympy expression, built from the raw term dictionary."""
    if symbols is None:
        symbols = sp.symbols(poly.variables)
    expr = sp.Integer(0)
    for mon, c in poly.terms.items():
        term = sp.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(symbols, mon):
            term *= s ** e
        expr += term
    return expr


def sympy_groebner(polys, variables, order="grevlex"):
    symbols = sp.symbols(variables)
    exprs = [to_sympy(p, symbols) for p in polys]
    return sp.groebner(exprs, *symbols, order=order, domain=sp.QQ), symbols


def ideals_equal(gens_a, gens_b, variables) -> bool:
    """Mutual membership through sympy's reduced Gröbner bases."""
    Ga, symbols = sympy_groebner(gens_a, variables)
    Gb, _ = sympy_groebner(gens_b, variables)
    return list(Ga.exprs) == list(Gb.exprs)


def ideal_contains(gens, f, variables) -> bool:
    G, symbols = sympy_groebner(gens, variables)
    return G.contains(to_sympy(f, symbols))


def rank_qq(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return sp.Matrix([[sp.Rational(int(c.numerator), int(c.denominator)) if hasattr(c, "numerator") else c
                       for c in row] for row in rows]).rank()


def monomials(n: int, d: int):
    """Exponent tuples of total degree d in n variables."""
    for cut in itertools.combinations(range(d + n - 1), n - 1):
        prev, exps = -1, []
        for c in cut:
            exps.append(c - prev - 1)
            prev = c
        exps.append(d + n - 1 - prev - 1)
        yield tuple(exps)


def monomial_quotient_dims(gens, n: int, D: int) -> list[int]:
    """dim_k (k[x]/(monomials))_d for d = 0..D by counting standard monomials."""
    out = []
    for d in range(D + 1):
        count = 0
        for m in monomials(n, d):
            if not any(all(a >= b for a, b in zip(m, g)) for g in gens):
                count += 1
        out.append(count)
    return out


def rational_series(numerator, exponent: int, D: int, low: int = 0) -> list[int]:
    """Coefficients of t^low·numerator(t)/(1-t)^exponent up to t^D."""
    out = [0] * (D + 1)
    for i, c in enumerate(numerator):
        for d in range(D + 1 - i - low):
            out[i + low + d] += c * (comb(exponent - 1 + d, d) if exponent else int(d == 0))
    return out


def necklace_count(r: int, n: int) -> int:
    """Number of aperiodic necklaces of length n over r letters (Lyndon words), by brute force."""
    seen, count = set(), 0
    for word in itertools.product(range(r), repeat=n):
        rotations = {word[i:] + word[:i] for i in range(n)}
        canon = min(rotations)
        if canon in seen:
            continue
        seen.add(canon)
        if len(rotations) == n:
            count += 1
    return count


def free_lie_dims_from_pbw(r: int, N: int) -> list[int]:
    """φ_1..φ_N of the free Lie algebra on r generators from ∏(1-t^n)^{-φ_n} = 1/(1-rt), solved
    degree by degree with truncated power series."""
    phis = []
    for n in range(1, N + 1):
        # coefficient of t^n in ∏_{k<n}(1-t^k)^{-φ_k}; then φ_n = r^n - that coefficient
        series = [Fraction(1)] + [Fraction(0)] * n
        for k, phi in enumerate(phis, start=1):
            if phi == 0:
                continue
            factor = [Fraction(0)] * (n + 1)
            for j in range(0, n // k + 1):
                factor[j * k] = Fraction(comb(phi + j - 1, j))
            series = [sum(series[i] * factor[m - i] for i in range(m + 1)) for m in range(n + 1)]
        phis.append(int(r ** n - series[n]))
    return phis


def initial_forms_by_linear_algebra(gens, variables, D: int) -> dict[int, list]:
    """Degree-p parts of the tangent cone ideal In(I) for p <= D, computed in k[x]/𝔪^{D+1}.

    Every element of I has its truncation in V = span{m·g mod 𝔪^{D+1}}, and the lowest forms of
    order <= D agree; so In(I)_p is the degree-p part of (V ∩ 𝔪^p) modulo 𝔪^{p+1}.
    Returns p -> list of coefficient rows over the degree-p monomials.
    """
    n = len(variables)
    symbols = sp.symbols(variables)
    basis = [m for d in range(D + 1) for m in monomials(n, d)]
    where = {m: k for k, m in enumerate(basis)}
    rows = []
    for g in gens:
        poly = sp.Poly(to_sympy(g, symbols), *symbols)
        for d in range(D + 1):
            for m in monomials(n, d):
                row = [sp.Integer(0)] * len(basis)
                for exps, c in poly.terms():
                    total = tuple(a + b for a, b in zip(exps, m))
                    if sum(total) <= D:
                        row[where[total]] += c
                if any(row):
                    rows.append(row)
    # order columns by increasing degree; the echelon form then exposes lowest forms
    M = sp.Matrix(rows) if rows else sp.zeros(0, len(basis))
    R, pivots = M.rref()
    out = {}
    for p in range(D + 1):
        cols = [where[m] for m in monomials(n, p)]
        forms = []
        for r in range(R.rows):
            row = R.row(r)
            if not any(row):
                continue
            lead = next(j for j in range(len(basis)) if row[j] != 0)
            if sum(basis[lead]) == p:
                forms.append([row[c] for c in cols])
        out[p] = forms
    return out


def homogeneous_ideal_part(gens, variables, p: int) -> list:
    """Rows spanning I_p for an ideal generated by homogeneous polynomials."""
    n = len(variables)
    symbols = sp.symbols(variables)
    target = list(monomials(n, p))
    where = {m: k for k, m in enumerate(target)}
    rows = []
    for g in gens:
        poly = sp.Poly(to_sympy(g, symbols), *symbols)
        degs = {sum(e) for e, _ in poly.terms()}
        assert len(degs) == 1, "tangent cone generators must be homogeneous"
        d = degs.pop()
        if d > p:
            continue
        for m in monomials(n, p - d):
            row = [sp.Integer(0)] * len(target)
            for exps, c in poly.terms():
                row[where[tuple(a + b for a, b in zip(exps, m))]] += c
            rows.append(row)
    return rows


def same_row_space(a: list, b: list, width: int) -> bool:
    ra = sp.Matrix(a).rank() if a else 0
    rb = sp.Matrix(b).rank() if b else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    return sp.Matrix(a + b).rank() == ra
