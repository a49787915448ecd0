"""Resonance ideals, Chen ranks, closed-form rank sequences and the cross-check suite.

Two gradings show up here.  Chen ranks read the 𝔪-adic associated graded of 𝔅_1 with all
generators in degree 0.  The Euler-characteristic and coefficientwise comparisons instead use
the filtration 𝔅_i inherits from A_i ⊗ 𝔪^p, computed as

    dim gr_p(Z/B) = dim (F / In B)_p - dim (F / In Z)_p

for cycles Z and boundaries B inside F = A_i ⊗ S.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from . import linalg
from .cdga import (CDGA, SimplicialComplex, builtin_cdga, catalog_keys, cohomology, cohomology_algebra,
                   cohomology_quadratic_data, coproduct, exterior_cdga, hirsch_extension, quadratic_cdga,
                   tensor_product, truncate)
from .groebner import (FPModule, HilbertSeries, Ideal, NotHomogeneous, annihilator, exterior_power,
                       graded_dims_truncated, hilbert_series, initial_lowest_ideal, minimalize, minors_ideal,
                       leading_term_hilbert_series)
from .koszul import (CapTooSmall, _data, aomoto_dims, b1_presentation, cochain_koszul_module, crowell_cokernel,
                     koszul_homology)
from .lie import TABLE_KEYS
from .polycore import ONE, ZERO, FreeVector, Polynomial, rational

DEFAULT_MINOR_BUDGET = 60_000


class ResonanceError(ValueError):
    pass


class TooManyMinors(ResonanceError):
    pass


# ---------------------------------------------------------------- resonance

def _check_range(A: CDGA, i: int, s: int):
    if i < 0:
        raise ResonanceError("degree must be non-negative")
    if i + 1 > A.cap and not (A.complete and i <= A.cap):
        raise CapTooSmall(f"degree {i} needs cap >= {i + 1}; the model has cap {A.cap}")
    if not 1 <= s <= A.dim(i):
        raise ResonanceError(f"s must lie in 1..{A.dim(i)} for degree {i}")


def _raw_matrix(A: CDGA, k: int) -> list[list[dict]]:
    """∂_k as rows of {exponent: coefficient}, rows indexed by A^{k-1}."""
    d = _data(A).delta_entries(k - 1)
    return [[dict(d[b][a]) for b in range(A.dim(k))] for a in range(A.dim(k - 1))]


def _mul_raw(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _eliminate_units(rows: list[list[dict]], t: int, nvars: int) -> tuple[list[list[dict]], int]:
    """Schur-complement away nonzero constant entries: I_t(M) = I_{t-1}(M') for each pivot."""
    zero = (0,) * nvars
    rows = [list(r) for r in rows]
    while t > 0 and rows and rows[0]:
        pivot = next(((r, c) for r, row in enumerate(rows) for c, e in enumerate(row)
                      if len(e) == 1 and zero in e), None)
        if pivot is None:
            break
        r, c = pivot
        inv = ONE / rows[r][c][zero]
        prow = rows[r]
        for i, row in enumerate(rows):
            f = row[c]
            if i == r or not f:
                continue
            scale = {m: -v * inv for m, v in f.items()}
            for j, e in enumerate(prow):
                if e and j != c:
                    row[j] = _add_raw(row[j], _mul_raw(scale, e))
        rows = [[e for j, e in enumerate(row) if j != c] for i, row in enumerate(rows) if i != r]
        t -= 1
    return rows, t


def _add_raw(p: dict, q: dict) -> dict:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, ZERO) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _independent_rows(rows: list[list[dict]]) -> list[list[dict]]:
    """Replace rows by a k-basis of their span; k-linear row operations keep every minors ideal."""
    if not rows:
        return rows
    keys = sorted({(j, m) for row in rows for j, e in enumerate(row) for m in e})
    if not keys:
        return []
    where = {k: n for n, k in enumerate(keys)}
    dense = []
    for row in rows:
        v = [ZERO] * len(keys)
        for j, e in enumerate(row):
            for m, c in e.items():
                v[where[(j, m)]] = c
        dense.append(v)
    basis = linalg.row_space_basis(dense)
    ncols = len(rows[0])
    out = []
    for v in basis:
        row = [{} for _ in range(ncols)]
        for n, c in enumerate(v):
            if c:
                j, m = keys[n]
                row[j][m] = c
        out.append(row)
    return out


def _reduced_minors(rows: list[list[dict]], t: int, variables: tuple, budget: int) -> Ideal:
    nvars = len(variables)
    rows, t = _eliminate_units(rows, t, nvars)
    if t <= 0:
        return Ideal.unit(variables)
    rows = _independent_rows(rows)
    cols = _independent_rows(linalg.transpose(rows)) if rows else []
    if not cols or t > min(len(cols), len(cols[0])):
        return Ideal([], variables)
    count = comb(len(cols), t) * comb(len(cols[0]), t)
    if count > budget:
        raise TooManyMinors(f"{count} minors of size {t} exceed the budget of {budget}")
    matrix = [[Polynomial._raw(e, variables) for e in row] for row in cols]
    I = minors_ideal(matrix, t, variables)
    return Ideal(I.groebner_basis(), variables)


@dataclass
class JumpLocus:
    """I_{r_i - s + 1}(∂_i ⊕ ∂_{i+1}) as a minors ideal, or only its pointwise rank test when
    the number of minors exceeds the budget."""

    model: str
    degree: int
    s: int
    variables: tuple
    ideal: Ideal | None
    reason: str = ""

    def vanishes_at(self, A: CDGA, point) -> bool:
        if self.ideal is not None:
            return self.ideal.zero_set_contains([rational(c) for c in point])
        return aomoto_dims(A, point, self.degree) >= self.s


def resonance_jump_ideal(A: CDGA, i: int, s: int, budget: int = DEFAULT_MINOR_BUDGET) -> Ideal:
    """Minors ideal whose zero set is ℛ^{i,s}(A) = {a : dim H^i(A, δ_a) ≥ s}.

    With r = dim A^i this is I_{r-s+1}(∂_i ⊕ ∂_{i+1}) = Σ_{p+q=r-s+1} I_p(∂_i) I_q(∂_{i+1}).
    """
    _check_range(A, i, s)
    variables = _data(A).variables
    t = A.dim(i) - s + 1
    blocks = []
    if i >= 1:
        blocks.append(_raw_matrix(A, i))
    if i + 1 <= A.cap:
        blocks.append(_raw_matrix(A, i + 1))
    if len(blocks) == 1:
        return _reduced_minors(blocks[0], t, variables, budget)
    left, right = blocks
    left_min = min(len(left), len(left[0]) if left else 0)
    right_min = min(len(right), len(right[0]) if right else 0)
    total = Ideal([], variables)
    for p in range(max(0, t - right_min), min(t, left_min) + 1):
        Ip = _reduced_minors(left, p, variables, budget) if p else Ideal.unit(variables)
        if Ip.is_zero():
            continue
        Iq = _reduced_minors(right, t - p, variables, budget) if t - p else Ideal.unit(variables)
        if Iq.is_zero():
            continue
        total = total + Ip * Iq
    return Ideal(total.groebner_basis(), variables) if not total.is_zero() else total


def jump_locus(A: CDGA, i: int, s: int, budget: int = DEFAULT_MINOR_BUDGET) -> JumpLocus:
    variables = _data(A).variables
    try:
        return JumpLocus(A.name, i, s, variables, resonance_jump_ideal(A, i, s, budget))
    except TooManyMinors as exc:
        return JumpLocus(A.name, i, s, variables, None, str(exc))


def resonance_support_ideal(A: CDGA, i: int, s: int) -> Ideal:
    """Ann ⋀^s 𝔅_i(A), whose zero set is the support locus ℛ_{i,s}(A)."""
    _check_range(A, i, s)
    M = minimalize(koszul_homology(A, i))
    if M.ngens < s:
        return Ideal.unit(M.variables)
    return annihilator(M if s == 1 else exterior_power(M, s))


def jump_test_point(A: CDGA, point, i: int, s: int) -> bool:
    """Whether the point lies in ℛ^{i,s}(A), by rank-nullity on the Aomoto complex."""
    return aomoto_dims(A, point, i) >= s


@dataclass
class ResonanceReport:
    model: str
    degree: int
    s: int
    jump: JumpLocus
    support: Ideal
    samples: list = field(default_factory=list)  # (point, in jump locus, in support locus)
    tangent_cone: Ideal | None = None

    @property
    def agree_away_from_origin(self) -> bool:
        return all(j == sp for pt, j, sp in self.samples if any(pt))

    def to_json(self) -> dict:
        out = {
            "model": self.model, "degree": self.degree, "s": self.s,
            "variables": list(self.support.variables),
            "jump_ideal": [str(g) for g in self.jump.ideal.groebner_basis()] if self.jump.ideal is not None else None,
            "jump_note": self.jump.reason,
            "support_ideal": [str(g) for g in self.support.groebner_basis()],
            "samples": [{"point": [str(c) for c in pt], "jump": j, "support": sp} for pt, j, sp in self.samples],
        }
        if self.tangent_cone is not None:
            out["tangent_cone"] = self.tangent_cone.to_json()
        return out


def sample_points(n: int, count: int, seed: int = 0, spread: int = 2) -> list[list]:
    """The origin, the coordinate axes, then small random integer points (small values hit
    special loci far more often than generic ones)."""
    rng = random.Random(seed)
    points = [[0] * n]
    for j in range(n):
        points.append([1 if k == j else 0 for k in range(n)])
    while len(points) < count + n + 1:
        points.append([rng.randint(-spread, spread) for _ in range(n)])
    return points


def resonance_report(A: CDGA, i: int, s: int, points: Sequence | None = None, tangent_cone: int | None = None,
                     budget: int = DEFAULT_MINOR_BUDGET) -> ResonanceReport:
    jump = jump_locus(A, i, s, budget)
    support = resonance_support_ideal(A, i, s)
    pts = list(points) if points is not None else sample_points(len(support.variables), 20)
    samples = [(list(map(rational, p)), jump.vanishes_at(A, p), support.zero_set_contains(list(map(rational, p))))
               for p in pts]
    tc = tangent_cone_ideal(support, tangent_cone) if tangent_cone else None
    return ResonanceReport(A.name, i, s, jump, support, samples, tc)


# ---------------------------------------------------------------- Chen ranks

@dataclass
class ChenReport:
    theta1: int
    thetas: dict  # k -> θ_k for k = 2..N
    source: str  # "exact Hilbert" or "truncated gr"
    bound: int
    series: HilbertSeries | None = None

    def sequence(self) -> list[int]:
        return [self.theta1] + [self.thetas[k] for k in sorted(self.thetas)]

    def to_json(self) -> dict:
        out = {"theta": {str(k): v for k, v in [(1, self.theta1)] + sorted(self.thetas.items())},
               "source": self.source, "bound": self.bound}
        if self.series is not None:
            out["series"] = self.series.to_json()
        return out


def chen_ranks(A: CDGA, N: int) -> ChenReport:
    """θ_1 = dim H^1 and θ_{n+2} = dim gr_n 𝔅_1(A) (𝔪-adic, generators in degree 0)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if A.cap < 2 and not A.complete:
        raise CapTooSmall("Chen ranks need cap >= 2")
    theta1 = cohomology(A, 1, include_top=True).dim
    M = minimalize(koszul_homology(A, 1))
    if N < 2:
        return ChenReport(theta1, {}, "exact Hilbert" if M.homogeneous else "truncated gr", N)
    if M.homogeneous and len(set(M.degrees)) <= 1:
        shift = M.degrees[0] if M.degrees else 0
        series = hilbert_series(M)
        shifted = HilbertSeries.from_dict({d - shift: c for d, c in series.numerator_dict().items()},
                                          series.denominator) if M.ngens else series
        dims = shifted.expansion(N - 2)
        return ChenReport(theta1, {k: dims[k - 2] for k in range(2, N + 1)}, "exact Hilbert", N, shifted)
    dims = graded_dims_truncated(M, N - 2) if M.ngens else [0] * (N - 1)
    return ChenReport(theta1, {k: dims[k - 2] for k in range(2, N + 1)}, "truncated gr", N)


def chen_free(r: int, N: int) -> dict:
    """θ_n(F_r) = (n-1)·C(r+n-2, n) for n = 2..N."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return {n: (n - 1) * comb(r + n - 2, n) for n in range(2, N + 1)}


def _mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def witt_ranks(r: int, N: int) -> dict:
    """φ_n(F_r) = (1/n) Σ_{d|n} μ(d) r^{n/d} for n = 1..N."""
    if r < 1:
        raise ValueError("r must be at least 1")
    out = {}
    for n in range(1, N + 1):
        total = sum(_mobius(d) * r ** (n // d) for d in range(1, n + 1) if n % d == 0)
        out[n] = total // n
    return out


def pbw_invert(H: Sequence, N: int) -> dict:
    """Integers φ_1..φ_N with Π (1 - t^n)^{φ_n} · H(t) = 1 modulo t^{N+1}."""
    coeffs = [Fraction(c) for c in H] + [Fraction(0)] * max(0, N + 1 - len(H))
    coeffs = coeffs[:N + 1]
    if coeffs[0] != 1:
        raise ValueError("the series must start with 1")
    current = coeffs
    out = {}
    for n in range(1, N + 1):
        phi = current[n]
        if phi.denominator != 1:
            raise ValueError(f"coefficient {phi} at t^{n} is not an integer: not a PBW series")
        phi = int(phi)
        out[n] = phi
        if phi:
            # multiply by (1 - t^n)^phi, a finite or binomial series in t^n
            factor = [Fraction(0)] * (N + 1)
            j = 0
            while n * j <= N:
                factor[n * j] = (-1) ** j * _gen_binom(phi, j)
                j += 1
            current = [sum(current[a] * factor[k - a] for a in range(k + 1)) for k in range(N + 1)]
    return out


def _gen_binom(a: int, j: int) -> Fraction:
    """C(a, j) for any integer a, negative included."""
    out = Fraction(1)
    for k in range(j):
        out = out * (a - k) / (k + 1)
    return out


def series_of_rational(numerator: Sequence[int], denominator_roots: Sequence[int], N: int) -> list[int]:
    """Coefficients up to t^N of numerator / Π (1 - r t)."""
    coeffs = list(numerator) + [0] * (N + 1)
    coeffs = coeffs[:N + 1]
    for r in denominator_roots:
        for k in range(1, N + 1):
            coeffs[k] += r * coeffs[k - 1]
    return coeffs


# ---------------------------------------------------------------- tangent cones, simplicial

def tangent_cone_ideal(I: Ideal, D: int = 12) -> Ideal:
    """In(I), the ideal of lowest-degree forms, certified through degree D."""
    return initial_lowest_ideal(I, D)


def simplicial_reduced_betti(delta: SimplicialComplex, V: Sequence[int], j: int) -> int:
    """dim H̃_j(Δ_V; ℚ) of the induced subcomplex on V."""
    V = set(V)
    if not V <= set(range(1, delta.vertices + 1)):
        raise ValueError("V must be a subset of the vertices")
    faces = [f for f in delta.faces if set(f) <= V]
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for k in by_dim:
        by_dim[k].sort()

    def boundary_rank(k: int) -> int:
        """rank of ∂_k: C_k -> C_{k-1}, with C_{-1} spanned by the empty face."""
        src, dst = by_dim.get(k, []), by_dim.get(k - 1, [])
        if not src or not dst:
            return 0
        where = {f: n for n, f in enumerate(dst)}
        rows = [[ZERO] * len(src) for _ in dst]
        for c, f in enumerate(src):
            for pos in range(len(f)):
                rows[where[f[:pos] + f[pos + 1:]]][c] = ONE if pos % 2 == 0 else -ONE
        return linalg.rank(rows)

    return len(by_dim.get(j, [])) - boundary_rank(j) - boundary_rank(j + 1)


# ---------------------------------------------------------------- filtered dimensions

def _quotient_dims(vectors: Sequence[FreeVector], rank: int, variables, D: int) -> list[int]:
    M = FPModule(tuple(variables), rank, [v.to_terms() for v in vectors if not v.is_zero()], [0] * rank, False)
    return graded_dims_truncated(M, D)


def _as_quotient(A: CDGA) -> CDGA:
    """A, read as the genuine algebra A / A^{>cap}."""
    return A if A.complete else dataclasses.replace(A, complete=True)


def chain_filtered_dims(A: CDGA, i: int, D: int) -> list[int]:
    """dim gr_p 𝔅_i(A) for p = 0..D, filtration induced from A_i ⊗ 𝔪^p."""
    from .groebner import syzygies

    A = _as_quotient(A)
    data = _data(A)
    r = A.dim(i)
    if r == 0:
        return [0] * (D + 1)
    variables = data.variables
    if i == 0:
        cycles = [FreeVector([Polynomial.constant(1, variables)])]
    else:
        cycles = syzygies(data.boundary_columns(i))
    boundaries = data.boundary_columns(i + 1) if i + 1 <= A.cap else []
    mod_b = _quotient_dims(boundaries, r, variables, D)
    mod_z = _quotient_dims(cycles, r, variables, D)
    return [a - b for a, b in zip(mod_b, mod_z)]


def graded_dims(M: FPModule, D: int) -> list[int]:
    """Hilbert function in the module's own grading, or 𝔪-adic gr dims when it has none."""
    if M.ngens == 0:
        return [0] * (D + 1)
    if M.homogeneous:
        return graded_dims_truncated(M, D, use_degrees=True)
    return graded_dims_truncated(M, D)


# ---------------------------------------------------------------- verify registry

@dataclass
class VerifyReport:
    model: str
    check: str
    status: str  # "pass" or "fail"
    evidence: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"model": self.model, "check": self.check, "status": self.status, "evidence": self.evidence}


def _report(model: str, check: str, ok: bool, **evidence) -> VerifyReport:
    return VerifyReport(model, check, "pass" if ok else "fail", evidence)


def _as_model(A) -> CDGA:
    return builtin_cdga(A) if isinstance(A, str) else A


def check_kunneth(A, B, D: int = 6, degrees: Sequence[int] | None = None) -> VerifyReport:
    """gr dims of 𝔅_q(A⊗B) against the two-way convolution of the factors' gr dims."""
    A, B = _as_model(A), _as_model(B)
    C = tensor_product(A, B)
    top = min(C.cap if C.complete else C.cap - 1, 3)
    qs = list(degrees) if degrees is not None else list(range(top + 1))
    top_a = A.cap if A.complete else A.cap - 1
    top_b = B.cap if B.complete else B.cap - 1
    fa = {i: graded_dims(minimalize(koszul_homology(A, i)), D) for i in range(top_a + 1)}
    fb = {j: graded_dims(minimalize(koszul_homology(B, j)), D) for j in range(top_b + 1)}
    table, ok = {}, True
    for q in qs:
        got = graded_dims(minimalize(koszul_homology(C, q)), D)
        want = [0] * (D + 1)
        for i in range(q + 1):
            j = q - i
            if i not in fa or j not in fb:
                continue
            for a in range(D + 1):
                for b in range(D + 1 - a):
                    want[a + b] += fa[i][a] * fb[j][b]
        table[str(q)] = {"product": got, "convolution": want}
        ok &= got == want
    return _report(f"{A.name}⊗{B.name}", "kunneth", ok, degrees=table)


def check_coproduct_exterior(m: int = 1, n: int = 1, D: int = 8) -> VerifyReport:
    """𝔅_1 of a wedge of two exterior algebras is free of rank one."""
    C = coproduct(exterior_cdga(m, names=[f"a{k}" for k in range(1, m + 1)]),
                  exterior_cdga(n, names=[f"b{k}" for k in range(1, n + 1)]))
    M = minimalize(koszul_homology(C, 1))
    free = M.ngens == 1 and not M.relations
    chen = chen_ranks(C, D)
    ev = {"generators": M.ngens, "relations": len(M.relations), "chen": chen.to_json()}
    if m + n == 2:
        want = chen_free(2, D)
        ev["free_group_chen"] = {str(k): v for k, v in want.items()}
        free &= chen.thetas == want
    return _report(C.name, "coproduct_exterior", free, **ev)


def _pull_ideal(I: Ideal, variables: Sequence[str]) -> Ideal:
    return Ideal([Polynomial.parse(str(g), variables) for g in I.generators], variables)


def check_hirsch_deg1(B=None, e=None, name: str = "t") -> VerifyReport:
    """Ann ⋀^s 𝔅_1 of a Hirsch extension against Ann ⋀^s 𝔅_1 of the base, s = 1, 2."""
    B = _as_model(B) if B is not None else exterior_cdga(2, names=["e1", "f1"])
    if e is None:
        e = [ONE] + [ZERO] * (B.dim(2) - 1)
    C = hirsch_extension(B, e, name)
    vars_c = _data(C).variables
    rows, ok = {}, True
    for s in (1, 2):
        ann_c = resonance_support_ideal(C, 1, s) if C.dim(1) >= s else Ideal.unit(vars_c)
        ann_b = resonance_support_ideal(B, 1, s) if B.dim(1) >= s else Ideal.unit(_data(B).variables)
        pulled = _pull_ideal(ann_b, vars_c)
        same = ann_c == pulled
        rows[str(s)] = {"extension": str(ann_c), "base": str(pulled), "equal": same}
        ok &= same
    return _report(f"{B.name} + {name}", "hirsch_deg1", ok, s=rows)


def check_pd_duality(A, m: int | None = None, D: int = 6) -> VerifyReport:
    """gr dims of 𝔅_i against those of 𝔅^{m-i} for i = 0..m."""
    A = _as_model(A)
    m = A.cap if m is None else m
    rows, ok = {}, True
    for i in range(m + 1):
        lower = graded_dims(minimalize(koszul_homology(A, i)), D)
        upper = graded_dims(minimalize(cochain_koszul_module(A, m - i)), D)
        rows[str(i)] = {"chain": lower, "cochain": upper}
        ok &= lower == upper
    return _report(A.name, "pd_duality", ok, degrees=rows)


def _top_degree(A: CDGA) -> int:
    return A.cap


def check_euler_identity(A, D: int = 10) -> VerifyReport:
    """Σ (-1)^i gr dims 𝔅_i(A) = Σ (-1)^i dims 𝔅_i(H^*(A)), degree by degree."""
    A = _as_quotient(_as_model(A))
    if not any(col for cols in A.differential for col in cols):
        # d = 0 makes H^*(A) the model itself, so both sides are one and the same sum
        return _report(A.name, "euler_identity", True, formal="differential vanishes; H^*(A) = A")
    H = cohomology_algebra(A, include_top=True)
    left, right = [0] * (D + 1), [0] * (D + 1)
    for i in range(_top_degree(A) + 1):
        for p, v in enumerate(chain_filtered_dims(A, i, D)):
            left[p] += (-1) ** i * v
    for i in range(_top_degree(H) + 1):
        for p, v in enumerate(chain_filtered_dims(H, i, D)):
            right[p] += (-1) ** i * v
    return _report(A.name, "euler_identity", left == right, model_side=left, cohomology_side=right)


def check_hilb_inequality(A, D: int = 10, i: int = 1) -> VerifyReport:
    """gr dims of 𝔅_i(A) are bounded by those of 𝔅_i(H^*(A)) coefficientwise."""
    A = _as_quotient(_as_model(A))
    H = cohomology_algebra(A, include_top=True)
    left = chain_filtered_dims(A, i, D)
    right = chain_filtered_dims(H, i, D)
    ok = all(a <= b for a, b in zip(left, right))
    strict = [p for p, (a, b) in enumerate(zip(left, right)) if a < b]
    return _report(A.name, "hilb_inequality", ok, model_side=left, cohomology_side=right, strict_degrees=strict)


def check_crowell(A, D: int = 8) -> VerifyReport:
    """coker ∂_2 is an extension of 𝔪(1) by 𝔅_1.

    Graded models compare exact Hilbert series; the others compare gr dims of the filtration
    coming from A_1 ⊗ 𝔪^p.
    """
    A = _as_model(A)
    n = len(_data(A).variables)
    coker = crowell_cokernel(A)
    B1 = minimalize(koszul_homology(A, 1))
    m_shift = [comb(n + p, p + 1) for p in range(D + 1)]  # dim 𝔪_{p+1}
    if coker.homogeneous and B1.homogeneous and all(d == 0 for d in coker.degrees):
        got = hilbert_series(coker).expansion(D)
        b1 = hilbert_series(B1).expansion(D)
        graded = True
    else:
        got = graded_dims_truncated(coker, D)
        b1 = chain_filtered_dims(A, 1, D)
        graded = False
    want = [a + b for a, b in zip(b1, m_shift)]
    return _report(A.name, "crowell", got == want, graded=graded, cokernel=got, b1=b1, maximal_ideal_shifted=m_shift)


def check_truncation_stability(A, D: int = 6) -> VerifyReport:
    A = _as_model(A)
    T = truncate(A, 1)
    M, N = minimalize(koszul_homology(A, 1)), minimalize(koszul_homology(T, 1))
    ann_a, ann_t = annihilator(M), annihilator(N)
    da, dt = graded_dims_truncated(M, D), graded_dims_truncated(N, D)
    ok = ann_a == ann_t and da == dt
    return _report(A.name, "truncation_stability", ok, annihilator=[str(ann_a), str(ann_t)], gr_dims=[da, dt])


def check_nilpotent_res_trivial(keys: Sequence[str] | None = None, degrees=(1, 2), max_power: int = 8) -> VerifyReport:
    """Some power 𝔪^k with k <= max_power lies in Ann 𝔅_i(CE(𝔤))."""
    keys = list(keys) if keys is not None else [f"ce:{k}" for k in TABLE_KEYS]
    rows, ok = {}, True
    for key in keys:
        A = builtin_cdga(key)
        mx = Ideal.maximal(_data(A).variables)
        for i in degrees:
            ann = annihilator(minimalize(koszul_homology(A, i)))
            power = next((k for k in range(0, max_power + 1) if ann.contains_ideal(mx.power(k))), None)
            rows[f"{key}/{i}"] = power
            ok &= power is not None
    return _report(",".join(keys), "nilpotent_res_trivial", ok, power=rows)


def check_bpres_oracle(A, D: int = 6) -> VerifyReport:
    """The explicit presentation of 𝔅_1 against the homology computation."""
    A = _as_model(A)
    P = b1_presentation(A, minimal=True)
    M = minimalize(koszul_homology(A, 1))
    ann_p, ann_m = annihilator(P), annihilator(M)
    dp, dm = graded_dims_truncated(P, D), graded_dims_truncated(M, D)
    ok = ann_p == ann_m and dp == dm
    return _report(A.name, "bpres_oracle", ok, annihilator=[str(ann_p), str(ann_m)], gr_dims=[dp, dm])


def check_aomoto_jump(A, count: int = 20, seed: int = 0, s: int = 1, i: int = 1,
                      budget: int = DEFAULT_MINOR_BUDGET) -> VerifyReport:
    """aomoto_dims(A, a, i) ≥ s exactly on the zero set of the jump ideal."""
    A = _as_model(A)
    J = jump_locus(A, i, s, budget)
    n = len(J.variables)
    rows, ok = [], True
    for p in sample_points(n, count, seed):
        by_rank = aomoto_dims(A, p, i) >= s
        by_ideal = J.vanishes_at(A, p)
        rows.append({"point": p, "aomoto": by_rank, "ideal": by_ideal})
        ok &= by_rank == by_ideal
    route = "minors ideal" if J.ideal is not None else f"pointwise rank ({J.reason})"
    return _report(A.name, "aomoto_jump", ok, route=route, samples=rows)


def check_jump_support(A, i: int = 1, s: int = 1, count: int = 20, seed: int = 1) -> VerifyReport:
    """Jump and support loci agree away from the origin at sampled points."""
    A = _as_model(A)
    rep = resonance_report(A, i, s, sample_points(len(_data(A).variables), count, seed))
    return _report(A.name, "jump_support", rep.agree_away_from_origin, resonance=rep.to_json())


CHECKS: dict[str, Callable[..., VerifyReport]] = {
    "kunneth": check_kunneth,
    "coproduct_exterior": check_coproduct_exterior,
    "hirsch_deg1": check_hirsch_deg1,
    "pd_duality": check_pd_duality,
    "euler_identity": check_euler_identity,
    "hilb_inequality": check_hilb_inequality,
    "crowell": check_crowell,
    "truncation_stability": check_truncation_stability,
    "nilpotent_res_trivial": check_nilpotent_res_trivial,
    "bpres_oracle": check_bpres_oracle,
    "aomoto_jump": check_aomoto_jump,
    "jump_support": check_jump_support,
}


def verify(check: str, *args, **kwargs) -> VerifyReport:
    try:
        fn = CHECKS[check]
    except KeyError:
        raise KeyError(f"unknown check {check!r}; known: {', '.join(CHECKS)}") from None
    return fn(*args, **kwargs)


# ---------------------------------------------------------------- nilpotent reference table

# Reference values of Ann 𝔅_1 and its Hilbert series for CE(𝔤) and for H^*(CE(𝔤)), for the
# nine non-abelian nilpotent algebras of dimension at most five.
NILPOTENT_REFERENCE = {
    "L3,2": (["x1", "x2"], "1", [], "t/(1-t)^2"),
    "L4,2": (["x1", "x2", "x4"], "1", ["x4"], "1/(1-t)^2"),
    "L4,3": (["x2", "x1^2"], "1+t", [], "t/(1-t)^2"),
    "L5,4": (["x1", "x2", "x3", "x4"], "1", ["x1*x3", "x1*x4", "x2*x3", "x2*x4"], "2/(1-t)^2"),
    "L5,5": (["x2", "x4", "x1^2"], "1+t", ["x4"], "1/(1-t)^2"),
    "L5,6": (["x2^2", "x1*x2", "x1^2-x2"], "1+2t", [], "t/(1-t)^2"),
    "L5,7": (["x2", "x1^3"], "1+t+t^2", [], "t/(1-t)^2"),
    "L5,8": (["x1", "x2", "x3"], "2", [], "(2-t)/(1-t)^3"),
    "L5,9": (["x1^2", "x1*x2", "x2^2"], "1+2t", [], "t/(1-t)^2"),
}


def module_series(M: FPModule) -> HilbertSeries:
    """Hilbert series of a graded module; for an ungraded one, the series of its leading-term module."""
    M = minimalize(M)
    try:
        return hilbert_series(M)
    except NotHomogeneous:
        return leading_term_hilbert_series(M)


@dataclass
class TableCell:
    algebra: str
    column: str  # "CE" or "H*"
    ideal: Ideal
    series: HilbertSeries
    expected_ideal: Ideal
    expected_series: HilbertSeries

    @property
    def ideal_ok(self) -> bool:
        return self.ideal == self.expected_ideal

    @property
    def series_ok(self) -> bool:
        return self.series == self.expected_series

    @property
    def ok(self) -> bool:
        return self.ideal_ok and self.series_ok

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "column": self.column,
                "ideal": str(self.ideal), "expected_ideal": str(self.expected_ideal), "ideal_ok": self.ideal_ok,
                "series": str(self.series), "expected_series": str(self.expected_series),
                "series_ok": self.series_ok}


def table_cells(key: str) -> list[TableCell]:
    from .groebner import parse_hilbert

    ann_ce, hilb_ce, ann_h, hilb_h = NILPOTENT_REFERENCE[key]
    A = builtin_cdga(f"ce:{key}")
    variables = _data(A).variables
    M = koszul_homology(A, 1)
    H = quadratic_cdga(cohomology_quadratic_data(A), name=f"H({A.name})")
    N = koszul_homology(H, 1)
    n = len(variables)
    cells = [
        TableCell(key, "CE", annihilator(minimalize(M)), module_series(M),
                  Ideal.parse(ann_ce, variables), parse_hilbert(hilb_ce, n)),
        TableCell(key, "H*", annihilator(minimalize(N)), module_series(N),
                  Ideal.parse(ann_h, _data(H).variables), parse_hilbert(hilb_h, n)),
    ]
    return cells


def check_table(keys: Sequence[str] | None = None) -> VerifyReport:
    keys = list(keys) if keys is not None else list(NILPOTENT_REFERENCE)
    cells = [c for k in keys for c in table_cells(k)]
    return _report(",".join(keys), "table", all(c.ok for c in cells), cells=[c.to_json() for c in cells])


CHECKS["table"] = check_table
