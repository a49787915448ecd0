"""Koszul chain and cochain complexes of a CDGA and their homology modules.

Conventions.  Let z_1..z_n be the H^1 representatives chosen by ``cdga.cohomology`` and
x_1..x_n the dual variables, S = k[x_1..x_n].  The cochain differential is

    δ^i(a ⊗ s) = Σ_j z_j·a ⊗ x_j s + d(a) ⊗ s,

and the chain differential is its transpose in the dual bases, ∂_{i+1} = (δ^i)^T, so
∂_{i+1} has rows indexed by the basis of A^i and columns by the basis of A^{i+1}.  Module
gradings use the S-degree of chains with the A-factor in degree 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .cdga import CDGA, cohomology, exterior_cdga, h1_variable_names
from .groebner import FPModule, infer_degrees, minimalize, subquotient_presentation, syzygies
from .polycore import ZERO, FreeVector, Polynomial, format_rational, rational


class KoszulError(ValueError):
    pass


class CapTooSmall(KoszulError):
    pass


def h1_variables(A: CDGA) -> list[str]:
    """Names of the variables dual to the chosen H^1 basis."""
    names = h1_variable_names(A)
    if not names:
        raise KoszulError("H^1 = 0: the Koszul complexes are not defined over a polynomial ring")
    return names


@dataclass
class KoszulComplex:
    """Matrices of a Koszul complex.

    chain side: ``matrices[i]`` is ∂_i (rows: basis of A^{i-1}, columns: basis of A^i);
    cochain side: ``matrices[i]`` is δ^i (rows: basis of A^{i+1}, columns: basis of A^i).
    """

    side: str
    variables: tuple
    matrices: dict
    labels: list  # basis names of A^k
    weights: list | None
    top: int  # highest degree with a known free module

    def matrix(self, i: int) -> list[list[Polynomial]]:
        return self.matrices[i]

    def compositions_vanish(self) -> bool:
        for i in sorted(self.matrices):
            if i + 1 not in self.matrices:
                continue
            if self.side == "chain":
                prod = _poly_matmul(self.matrices[i], self.matrices[i + 1], self.variables)
            else:
                prod = _poly_matmul(self.matrices[i + 1], self.matrices[i], self.variables)
            if any(not p.is_zero() for row in prod for p in row):
                return False
        return True

    def to_json(self) -> dict:
        name = "d" if self.side == "chain" else "delta"
        return {
            "side": self.side,
            "variables": list(self.variables),
            "labels": {str(k): list(v) for k, v in enumerate(self.labels)},
            "matrices": {f"{name}{i}": [[str(p) for p in row] for row in m] for i, m in sorted(self.matrices.items())},
        }


def _poly_matmul(a, b, variables):
    if not a or not b:
        return []
    zero = Polynomial.zero(variables)
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = zero
            for k, x in enumerate(row):
                if not x.is_zero() and not b[k][j].is_zero():
                    acc = acc + x * b[k][j]
            new.append(acc)
        out.append(new)
    return out


class _KoszulData:
    """Left multiplication by the H^1 representatives and the differential, degree by degree."""

    def __init__(self, A: CDGA):
        H1 = cohomology(A, 1, include_top=True)
        if H1.dim == 0:
            raise KoszulError("H^1 = 0: the Koszul complexes are not defined over a polynomial ring")
        self.A = A
        self.reps = H1.representatives
        self.n = H1.dim
        self.variables = tuple(h1_variables(A))
        self.top = A.cap  # A/A^{>cap} is a genuine CDGA, so every degree up to cap is usable
        self._delta: dict = {}

    def delta_entries(self, i: int) -> list[list[dict]]:
        """δ^i as a dense (dim A^{i+1}) x (dim A^i) array of {exponent: coefficient}."""
        if i in self._delta:
            return self._delta[i]
        A, n = self.A, self.n
        rows, cols = A.dim(i + 1), A.dim(i)
        out = [[{} for _ in range(cols)] for _ in range(rows)]
        if i + 1 <= A.cap:
            zero = (0,) * n
            for a in range(cols):
                unit = A.unit(i, a)
                for j, z in enumerate(self.reps):
                    prod = A.multiply(1, z, i, unit)
                    mono = tuple(1 if k == j else 0 for k in range(n))
                    for b, c in enumerate(prod):
                        if c:
                            out[b][a][mono] = out[b][a].get(mono, ZERO) + c
                for b, c in A.differential[i][a].items():
                    out[b][a][zero] = out[b][a].get(zero, ZERO) + c
            for row in out:
                for k, entry in enumerate(row):
                    row[k] = {m: c for m, c in entry.items() if c}
        self._delta[i] = out
        return out

    def delta(self, i: int) -> list[list[Polynomial]]:
        return [[Polynomial._raw(e, self.variables) for e in row] for row in self.delta_entries(i)]

    def boundary(self, i: int) -> list[list[Polynomial]]:
        """∂_i = (δ^{i-1})^T."""
        d = self.delta_entries(i - 1)
        rows, cols = self.A.dim(i - 1), self.A.dim(i)
        return [[Polynomial._raw(d[b][a], self.variables) for b in range(cols)] for a in range(rows)]

    def boundary_columns(self, i: int) -> list[FreeVector]:
        d = self.delta_entries(i - 1)
        rows = self.A.dim(i - 1)
        return [FreeVector([Polynomial._raw(d[b][a], self.variables) for a in range(rows)])
                for b in range(self.A.dim(i))]

    def delta_columns(self, i: int) -> list[FreeVector]:
        d = self.delta_entries(i)
        rows = self.A.dim(i + 1)
        return [FreeVector([Polynomial._raw(d[b][a], self.variables) for b in range(rows)])
                for a in range(self.A.dim(i))]


def _data(A: CDGA) -> _KoszulData:
    cached = getattr(A, "_koszul_cache", None)
    if cached is None:
        cached = _KoszulData(A)
        object.__setattr__(A, "_koszul_cache", cached)
    return cached


def koszul_chain(A: CDGA) -> KoszulComplex:
    data = _data(A)
    mats = {i: data.boundary(i) for i in range(1, A.cap + 1)}
    return KoszulComplex("chain", data.variables, mats, [list(b) for b in A.basis], A.weights, A.cap)


def koszul_cochain(A: CDGA) -> KoszulComplex:
    data = _data(A)
    mats = {i: data.delta(i) for i in range(0, A.cap)}
    return KoszulComplex("cochain", data.variables, mats, [list(b) for b in A.basis], A.weights, A.cap)


def _require_cap(A: CDGA, i: int):
    if i < 0:
        raise KoszulError("degree must be non-negative")
    if i + 1 > A.cap and not (A.complete and i <= A.cap):
        raise CapTooSmall(f"degree {i} needs cap >= {i + 1}; the model has cap {A.cap}")


def koszul_homology(A: CDGA, i: int) -> FPModule:
    """𝔅_i(A) = ker ∂_i / im ∂_{i+1} as a minimal-ish finitely presented S-module."""
    _require_cap(A, i)
    data = _data(A)
    variables = data.variables
    if A.dim(i) == 0:
        return FPModule.zero(variables)
    if i == 0:
        kernel = [FreeVector([Polynomial.constant(1, variables)])]
    else:
        kernel = syzygies(data.boundary_columns(i))
    image = data.boundary_columns(i + 1) if i + 1 <= A.cap else []
    image = [v for v in image if not v.is_zero()]
    M = subquotient_presentation(kernel, image, variables)
    return M


def cochain_koszul_module(A: CDGA, i: int) -> FPModule:
    """𝔅^i(A) = ker δ^i / im δ^{i-1}."""
    _require_cap(A, i)
    data = _data(A)
    variables = data.variables
    if A.dim(i) == 0:
        return FPModule.zero(variables)
    if i + 1 <= A.cap and A.dim(i + 1) > 0:
        kernel = syzygies(data.delta_columns(i))
    else:
        kernel = [FreeVector([Polynomial.constant(1 if k == a else 0, variables) for k in range(A.dim(i))])
                  for a in range(A.dim(i))]
    image = data.delta_columns(i - 1) if i >= 1 else []
    image = [v for v in image if not v.is_zero()]
    return subquotient_presentation(kernel, image, variables)


def crowell_cokernel(A: CDGA) -> FPModule:
    """coker(∂_2: K_2 -> K_1), the middle term of 0 -> 𝔅_1 -> coker ∂_2 -> 𝔪 -> 0."""
    _require_cap(A, 1)
    data = _data(A)
    cols = [v for v in data.boundary_columns(2) if not v.is_zero()]
    M = FPModule.from_vectors(cols, A.dim(1), data.variables, [0] * A.dim(1))
    return M


# ---------------------------------------------------------------- presentation from quadratic data

def _decomposition(A: CDGA):
    """E^1 = ker d^1 (cohomology representatives) and its pivot complement U^1."""
    H1 = cohomology(A, 1, include_top=True)
    d1 = A.d_matrix(1) if A.cap >= 2 else []
    pivots = linalg.rref(d1)[1] if d1 and any(any(r) for r in d1) else []
    return H1, pivots


def b1_presentation(A: CDGA, minimal: bool = False) -> FPModule:
    """Presentation of 𝔅_1(A) with generators (E_2 ⊕ U_1) ⊗ S.

    Relations: the columns of ∂_3 of the exterior algebra on H^1, and for every basis element
    c of A^2 the column (ν^∨(c^∨), (d^∨ + β^∨)(c^∨)).  E_2 generators sit in degree 1 and U_1
    generators in degree 0, matching the chain grading of 𝔅_1.
    """
    if A.cap < 2 and not A.complete:
        raise CapTooSmall("the presentation needs cap >= 2")
    data = _data(A)
    variables = data.variables
    n = data.n
    H1, pivots = _decomposition(A)
    z = H1.representatives
    pairs = list(itertools.combinations(range(n), 2))
    npairs, r = len(pairs), len(pivots)
    ngens = npairs + r
    zero = (0,) * n

    def lin(j):
        return tuple(1 if k == j else 0 for k in range(n))

    relations = []
    if n >= 3:
        E = exterior_cdga(n, cap=3)
        Edata = _KoszulData(E)
        for col in Edata.boundary_columns(3):
            vec = {}
            for k, p in enumerate(col):
                for m, c in p.terms.items():
                    vec[(k, m)] = c
            if vec:
                relations.append(vec)
    # products z_j z_k and z_j a_p, and d(a_p), all in A^2
    if A.dim(2):
        zz = {pq: A.multiply(1, z[pq[0]], 1, z[pq[1]]) for pq in pairs}
        za = {(j, p): A.multiply(1, z[j], 1, A.unit(1, p)) for j in range(n) for p in pivots}
        da = {p: A.d(1, A.unit(1, p)) for p in pivots}
        for c in range(A.dim(2)):
            vec = {}
            for k, pq in enumerate(pairs):
                if zz[pq][c]:
                    vec[(k, zero)] = zz[pq][c]
            for t, p in enumerate(pivots):
                if da[p][c]:
                    vec[(npairs + t, zero)] = vec.get((npairs + t, zero), ZERO) + da[p][c]
                for j in range(n):
                    x = za[(j, p)][c]
                    if x:
                        key = (npairs + t, lin(j))
                        vec[key] = vec.get(key, ZERO) + x
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                relations.append(vec)
    M = FPModule(variables, ngens, relations)
    M.degrees, M.homogeneous = infer_degrees(relations, ngens, [1] * npairs + [0] * r)
    M.names = [f"E2[{variables[a]},{variables[b]}]" for a, b in pairs] + [f"U1[{A.basis[1][p]}]" for p in pivots]
    return minimalize(M) if minimal else M


# ---------------------------------------------------------------- Aomoto complexes and weights

def aomoto_matrix(A: CDGA, point, i: int) -> list[list]:
    """δ^i evaluated at a point of H^1 ⊗ k: a ↦ (Σ a_j z_j)·a + d(a)."""
    data = _data(A)
    pt = [rational(c) for c in point]
    if len(pt) != data.n:
        raise KoszulError(f"point has {len(pt)} coordinates, expected {data.n}")
    out = []
    for row in data.delta_entries(i):
        new = []
        for entry in row:
            v = ZERO
            for m, c in entry.items():
                term = c
                for k, e in enumerate(m):
                    if e:
                        term *= pt[k] ** e
                v += term
            new.append(v)
        out.append(new)
    return out


def aomoto_dims(A: CDGA, point, i: int) -> int:
    """dim H^i(A, δ_a) = dim A^i - rank δ^{i-1}_a - rank δ^i_a."""
    _require_cap(A, i)
    point = [rational(c) for c in point]
    r_in = linalg.rank(aomoto_matrix(A, point, i - 1)) if i >= 1 else 0
    r_out = linalg.rank(aomoto_matrix(A, point, i)) if i + 1 <= A.cap else 0
    return A.dim(i) - r_in - r_out


@dataclass
class WeightD1:
    total_degree: int
    sources: list  # basis names
    targets: list
    matrix: list  # rows: targets, columns: sources
    rank: int

    def to_json(self) -> dict:
        return {"total_degree": self.total_degree, "sources": self.sources, "targets": self.targets,
                "matrix": [[format_rational(c) for c in row] for row in self.matrix], "rank": self.rank}


def weight_d1(A: CDGA, total_degree: int) -> WeightD1:
    """d_1 on the weight-graded first page.

    A basis element of degree k and weight w sits in filtration degree w - k and total degree w.
    d preserves weight and lowers w - k by one, so the page-zero differential vanishes, the
    first page is A with this bigrading, and d_1 in total degree w is d restricted to the
    weight-w part of A.
    """
    if A.weights is None:
        raise KoszulError("weight_d1 needs a model with positive weights")
    sources, targets, cells_in, cells_out = [], [], [], []
    for k in range(A.cap + 1):
        for a, w in enumerate(A.weights[k]):
            if w == total_degree and k >= 1:
                if k < A.cap:
                    sources.append(A.basis[k][a])
                    cells_in.append((k, a))
                if k >= 2:
                    targets.append(A.basis[k][a])
                    cells_out.append((k, a))
    where = {cell: r for r, cell in enumerate(cells_out)}
    matrix = linalg.zeros(len(cells_out), len(cells_in))
    for col, (k, a) in enumerate(cells_in):
        for b, c in A.differential[k][a].items():
            if (k + 1, b) in where:
                matrix[where[(k + 1, b)]][col] = c
    rank = linalg.rank(matrix) if matrix and matrix[0] else 0
    return WeightD1(total_degree, sources, targets, matrix, rank)
