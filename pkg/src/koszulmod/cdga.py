"""Finite, degree-capped commutative differential graded algebras.

A ``CDGA`` with cap q stores A^0..A^q: a basis per degree, structure constants for every
product landing in degree <= q and the differential d^k: A^k -> A^{k+1} for k < q.  It is
the honest CDGA A/A^{>q}; computations that need A^{i+1} (such as the i-th Koszul module)
agree with the untruncated algebra as long as i + 1 <= q.

Most catalog models are built as quotients of an exterior algebra on degree-1 generators:
relations generate an ideal J, each ⋀^k/J^k gets the basis of monomials that are not
leading (lex-largest) terms of J^k, and the differential is extended from the generators by
the Leibniz rule.  Monomials are index sets ordered lexicographically; a degree-k basis
element is named by joining generator names with "^".
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg
from .lie import LieAlgebra, builtin_lie, validate_lie
from .polycore import ONE, ZERO, format_rational, rational


class CDGAError(ValueError):
    pass


def _sparse_add(acc: dict, vec: Mapping, scale=ONE):
    for k, c in vec.items():
        v = acc.get(k, ZERO) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _dense(sparse: Mapping, n: int) -> list:
    out = [ZERO] * n
    for k, c in sparse.items():
        out[k] = c
    return out


def _sparse(dense: Sequence) -> dict:
    return {k: c for k, c in enumerate(dense) if c}


@dataclass
class CDGA:
    cap: int
    basis: list  # basis[k] = names of A^k, basis[0] == ["1"]
    products: dict  # (i, a, j, b) -> {c: coeff} for i, j >= 1 and i + j <= cap
    differential: list  # differential[k][a] = {b: coeff}, image of basis a of A^k in A^{k+1}
    weights: list | None = None  # weights[k][a]
    name: str = "custom"
    provenance: str = ""
    h1_variables: list | None = None
    complete: bool = False  # A^{cap+1} = 0 in the algebra being modelled

    # basic queries
    def dim(self, k: int) -> int:
        return len(self.basis[k]) if 0 <= k <= self.cap else 0

    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def locate(self, name: str) -> tuple[int, int]:
        for k, names in enumerate(self.basis):
            if name in names:
                return k, names.index(name)
        raise KeyError(name)

    def unit(self, k: int, a: int) -> list:
        v = [ZERO] * self.dim(k)
        v[a] = ONE
        return v

    def basis_product(self, i: int, a: int, j: int, b: int) -> dict:
        if i + j > self.cap:
            raise CDGAError(f"product lands in degree {i + j} beyond cap {self.cap}")
        if i == 0:
            return {b: ONE}
        if j == 0:
            return {a: ONE}
        return self.products.get((i, a, j, b), {})

    def multiply(self, i: int, u: Sequence, j: int, v: Sequence) -> list:
        if i + j > self.cap:
            raise CDGAError(f"product lands in degree {i + j} beyond cap {self.cap}")
        acc: dict = {}
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if y:
                    _sparse_add(acc, self.basis_product(i, a, j, b), x * y)
        return _dense(acc, self.dim(i + j))

    def d(self, k: int, v: Sequence) -> list:
        if k >= self.cap:
            return []
        acc: dict = {}
        for a, x in enumerate(v):
            if x:
                _sparse_add(acc, self.differential[k][a], x)
        return _dense(acc, self.dim(k + 1))

    def d_matrix(self, k: int) -> list[list]:
        """Matrix of d^k with rows indexed by A^{k+1} and columns by A^k."""
        rows = linalg.zeros(self.dim(k + 1), self.dim(k))
        if k < self.cap:
            for a, col in enumerate(self.differential[k]):
                for b, c in col.items():
                    rows[b][a] = c
        return rows

    def is_formal_quadratic(self) -> bool:
        return all(not col for cols in self.differential for col in cols)

    def weight_of(self, k: int, v: Sequence) -> int | None:
        if self.weights is None:
            return None
        ws = {self.weights[k][a] for a, x in enumerate(v) if x}
        return ws.pop() if len(ws) == 1 else None

    def __str__(self):
        return f"CDGA {self.name} (cap {self.cap}, dims {self.dims()})"

    # serialization
    def to_json(self) -> dict:
        out = {"cap": self.cap, "basis": {str(k): list(self.basis[k]) for k in range(1, self.cap + 1)}}
        prods = {}
        for (i, a, j, b), vec in sorted(self.products.items()):
            if (i, a) <= (j, b) and vec:
                prods[f"{self.basis[i][a]}*{self.basis[j][b]}"] = [
                    format_rational(c) for c in _dense(vec, self.dim(i + j))]
        out["products"] = prods
        dd = {}
        for k in range(self.cap):
            for a, col in enumerate(self.differential[k]):
                if col:
                    dd[self.basis[k][a]] = [format_rational(c) for c in _dense(col, self.dim(k + 1))]
        out["d"] = dd
        if self.weights is not None:
            out["weights"] = {self.basis[k][a]: w for k in range(1, self.cap + 1)
                              for a, w in enumerate(self.weights[k])}
        if self.h1_variables:
            out["h1_variables"] = list(self.h1_variables)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "CDGA":
        try:
            cap = int(data["cap"])
            raw_basis = data["basis"]
        except (KeyError, TypeError, ValueError) as exc:
            raise CDGAError(f"malformed CDGA JSON: {exc}") from exc
        basis = [["1"]] + [list(raw_basis.get(str(k), [])) for k in range(1, cap + 1)]
        where = {}
        for k, names in enumerate(basis):
            for a, nm in enumerate(names):
                if nm in where:
                    raise CDGAError(f"basis name {nm!r} used twice")
                where[nm] = (k, a)
        products: dict = {}
        for key, coeffs in data.get("products", {}).items():
            split = None
            for pos in (m.start() for m in re.finditer(r"\*", key)):
                left, right = key[:pos], key[pos + 1:]
                if left in where and right in where:
                    split = (left, right)
                    break
            if split is None:
                raise CDGAError(f"product key {key!r} does not name two basis elements")
            (i, a), (j, b) = where[split[0]], where[split[1]]
            if i == 0 or j == 0:
                continue
            if i + j > cap:
                raise CDGAError(f"product {key} lands beyond cap")
            vals = [rational(c) for c in coeffs]
            if len(vals) != len(basis[i + j]):
                raise CDGAError(f"product {key} has {len(vals)} coefficients, expected {len(basis[i + j])}")
            vec = _sparse(vals)
            products[(i, a, j, b)] = vec
            sign = -1 if (i * j) % 2 else 1
            products.setdefault((j, b, i, a), {k: sign * c for k, c in vec.items()})
        differential = [[{} for _ in basis[k]] for k in range(cap)]
        for nm, coeffs in data.get("d", {}).items():
            if nm not in where:
                raise CDGAError(f"differential given for unknown basis element {nm!r}")
            k, a = where[nm]
            if k >= cap:
                raise CDGAError(f"differential of {nm} lands beyond cap")
            vals = [rational(c) for c in coeffs]
            if len(vals) != len(basis[k + 1]):
                raise CDGAError(f"d({nm}) has {len(vals)} coefficients, expected {len(basis[k + 1])}")
            differential[k][a] = _sparse(vals)
        weights = None
        if data.get("weights"):
            w = data["weights"]
            try:
                weights = [[0]] + [[int(w[nm]) for nm in basis[k]] for k in range(1, cap + 1)]
            except KeyError as exc:
                raise CDGAError(f"missing weight for {exc}") from exc
        return cls(cap, basis, products, differential, weights, name=data.get("name", "custom"),
                   h1_variables=data.get("h1_variables"))


# ---------------------------------------------------------------- validation

@dataclass
class CDGAReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_cdga(A: CDGA) -> CDGAReport:
    """Connectedness, graded commutativity, associativity, d^2 = 0, Leibniz and weights."""
    bad = []
    if A.basis[0] != ["1"]:
        bad.append(("connected", "A^0 must be spanned by 1"))
    if len(A.basis) != A.cap + 1 or len(A.differential) != A.cap:
        bad.append(("shape", "basis or differential length disagrees with cap"))
        return CDGAReport(False, bad)
    for k in range(A.cap):
        if len(A.differential[k]) != A.dim(k):
            bad.append(("shape", f"differential in degree {k}"))
    if bad:
        return CDGAReport(False, bad)
    if A.differential and A.differential[0][0]:
        bad.append(("d(1)", "differential of the unit is nonzero"))
    name = A.basis
    cells = [(k, a) for k in range(1, A.cap + 1) for a in range(A.dim(k))]
    for (i, a), (j, b) in itertools.combinations_with_replacement(cells, 2):
        if i + j > A.cap:
            continue
        ab = A.basis_product(i, a, j, b)
        ba = A.basis_product(j, b, i, a)
        sign = -1 if (i * j) % 2 else 1
        if any(ab.get(c, ZERO) != sign * ba.get(c, ZERO) for c in set(ab) | set(ba)):
            bad.append(("commutativity", name[i][a], name[j][b]))
    for (i, a), (j, b), (k, c) in itertools.product(cells, repeat=3):
        if i + j + k > A.cap:
            continue
        left = A.multiply(i + j, _dense(A.basis_product(i, a, j, b), A.dim(i + j)), k, A.unit(k, c))
        right = A.multiply(i, A.unit(i, a), j + k, _dense(A.basis_product(j, b, k, c), A.dim(j + k)))
        if left != right:
            bad.append(("associativity", name[i][a], name[j][b], name[k][c]))
    for k in range(A.cap - 1):
        for a in range(A.dim(k)):
            if any(A.d(k + 1, A.d(k, A.unit(k, a)))):
                bad.append(("d^2", name[k][a]))
    for (i, a), (j, b) in itertools.product(cells, repeat=2):
        if i + j + 1 > A.cap:
            continue
        ua, ub = A.unit(i, a), A.unit(j, b)
        lhs = A.d(i + j, A.multiply(i, ua, j, ub))
        first = A.multiply(i + 1, A.d(i, ua), j, ub)
        second = A.multiply(i, ua, j + 1, A.d(j, ub))
        sign = -1 if i % 2 else 1
        if lhs != [x + sign * y for x, y in zip(first, second)]:
            bad.append(("leibniz", name[i][a], name[j][b]))
    if A.weights is not None:
        if len(A.weights) != A.cap + 1 or any(len(A.weights[k]) != A.dim(k) for k in range(A.cap + 1)):
            bad.append(("weights", "weight table shape"))
        else:
            for (i, a, j, b), vec in A.products.items():
                for c in vec:
                    if A.weights[i + j][c] != A.weights[i][a] + A.weights[j][b]:
                        bad.append(("weights", name[i][a], name[j][b]))
                        break
            for k in range(A.cap):
                for a, col in enumerate(A.differential[k]):
                    if any(A.weights[k + 1][b] != A.weights[k][a] for b in col):
                        bad.append(("weights", f"d({name[k][a]})"))
    return CDGAReport(not bad, bad)


# ---------------------------------------------------------------- exterior quotients

def _wedge(m1: tuple, m2: tuple):
    """Sign and sorted index set of e_{m1} ∧ e_{m2}, or None when they share an index."""
    if set(m1) & set(m2):
        return None
    seq = m1 + m2
    inversions = sum(1 for x, y in itertools.combinations(seq, 2) if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def wedge(x: Mapping, y: Mapping) -> dict:
    """Product of two exterior elements given as {index tuple: coefficient}."""
    out: dict = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            w = _wedge(m1, m2)
            if w is not None:
                s, m = w
                _sparse_add(out, {m: c1 * c2 * s})
    return out


def exterior_quotient(generators: Sequence[str], cap: int, relations: Sequence[Mapping] = (),
                      differential: Mapping[int, Mapping] | None = None,
                      weights: Sequence[int] | None = None, **meta) -> CDGA:
    """⋀(generators)/(relations) truncated at cap, with d extended from the generators.

    ``relations`` are exterior elements {sorted index tuple: coefficient}; ``differential``
    maps a generator index to an element of ⋀^2.  Raises CDGAError if d does not preserve
    the relation ideal or a relation is not homogeneous.
    """
    n = len(generators)
    if cap < 1:
        raise CDGAError("cap must be at least 1")
    rels = []
    for r in relations:
        r = {tuple(m): rational(c) for m, c in r.items() if c}
        if not r:
            continue
        degs = {len(m) for m in r}
        if len(degs) != 1:
            raise CDGAError("relations must be homogeneous in exterior degree")
        rels.append((degs.pop(), r))
    monos = [list(itertools.combinations(range(n), k)) for k in range(cap + 1)]
    basis_monos, rewrite = [], []
    for k in range(cap + 1):
        columns = sorted(monos[k], reverse=True)  # pivots land on lex-largest monomials
        col_index = {m: c for c, m in enumerate(columns)}
        rows = []
        for deg, r in rels:
            if deg > k:
                continue
            for m in monos[k - deg]:
                prod = wedge(r, {m: ONE})
                if prod:
                    row = [ZERO] * len(columns)
                    for mm, c in prod.items():
                        row[col_index[mm]] = c
                    rows.append(row)
        red, pivots = linalg.rref(rows) if rows else ([], [])
        pivot_set = set(pivots)
        kept = sorted(columns[c] for c in range(len(columns)) if c not in pivot_set)
        pos = {m: a for a, m in enumerate(kept)}
        table = {m: {pos[m]: ONE} for m in kept}
        for row, p in zip(red, pivots):
            table[columns[p]] = {pos[columns[c]]: -row[c] for c in range(len(columns))
                                 if c not in pivot_set and row[c]}
        basis_monos.append(kept)
        rewrite.append(table)

    def reduce(k: int, elem: Mapping) -> dict:
        out: dict = {}
        for m, c in elem.items():
            _sparse_add(out, rewrite[k][m], c)
        return out

    dgen = {g: {tuple(m): rational(c) for m, c in v.items() if c} for g, v in (differential or {}).items()}

    def d_mono(m: tuple) -> dict:
        out: dict = {}
        for p, g in enumerate(m):
            if g not in dgen:
                continue
            left, right = m[:p], m[p + 1:]
            term = wedge(wedge({left: ONE}, dgen[g]), {right: ONE})
            _sparse_add(out, term, -1 if p % 2 else 1)
        return out

    for deg, r in rels:
        if deg + 1 <= cap:
            image: dict = {}
            for m, c in r.items():
                _sparse_add(image, d_mono(m), c)
            if reduce(deg + 1, image):
                raise CDGAError("the differential does not preserve the relation ideal")

    products = {}
    for i in range(1, cap + 1):
        for j in range(1, cap + 1 - i):
            for a, m1 in enumerate(basis_monos[i]):
                for b, m2 in enumerate(basis_monos[j]):
                    w = _wedge(m1, m2)
                    if w is None:
                        continue
                    vec = reduce(i + j, {w[1]: w[0]})
                    if vec:
                        products[(i, a, j, b)] = vec
    dmaps = [[reduce(k + 1, d_mono(m)) for m in basis_monos[k]] for k in range(cap)]
    names = [["1"]] + [["^".join(generators[g] for g in m) for m in basis_monos[k]] for k in range(1, cap + 1)]
    wts = None
    if weights is not None:
        wts = [[sum(weights[g] for g in m) for m in basis_monos[k]] for k in range(cap + 1)]
    return CDGA(cap, names, products, dmaps, wts, complete=meta.pop("complete", cap >= n), **meta)


# ---------------------------------------------------------------- constructors

def exterior_cdga(n: int, cap: int | None = None, names: Sequence[str] | None = None) -> CDGA:
    if n < 1:
        raise CDGAError("n must be at least 1")
    names = list(names or [f"e{i}" for i in range(1, n + 1)])
    return exterior_quotient(names, cap if cap is not None else n, weights=[1] * n,
                             name=f"exterior:{n}", provenance="exterior algebra, d = 0")


# Chevalley-Eilenberg complexes are built in full up to this dimension, otherwise through degree 3
FULL_CE_DIM = 6


def ce_complex(L: LieAlgebra, cap: int | None = None) -> CDGA:
    """Chevalley–Eilenberg cochains ⋀g^∨ with dξ = -ξ∘[·,·]."""
    rep = validate_lie(L)
    if not rep.ok:
        raise CDGAError(f"invalid Lie algebra: {rep.violations}")
    names = L.dual_names or [f"e{i}" for i in range(1, L.dim + 1)]
    diff = {}
    for k in range(L.dim):
        terms = {(i, j): -v[k] for (i, j), v in L.brackets.items() if v[k]}
        if terms:
            diff[k] = terms
    if cap is None:
        cap = L.dim if L.dim <= FULL_CE_DIM else 3
    return exterior_quotient(names, cap, differential=diff,
                             weights=L.weights, name=f"ce:{L.name}", provenance=f"Chevalley-Eilenberg complex of {L.name}")


def hirsch_extension(B: CDGA, e: Sequence | Mapping, name: str = "t") -> CDGA:
    """B ⊗ ⋀(t) with dt = e for a degree-2 cocycle e of B."""
    if B.cap < 2:
        raise CDGAError("Hirsch extension needs cap at least 2")
    if isinstance(e, Mapping):
        vec = [ZERO] * B.dim(2)
        for nm, c in e.items():
            k, a = B.locate(nm)
            if k != 2:
                raise CDGAError(f"{nm} is not of degree 2")
            vec[a] += rational(c)
        e = vec
    e = [rational(c) for c in e]
    if len(e) != B.dim(2):
        raise CDGAError("e must be a vector in degree 2")
    if B.cap >= 3 and any(B.d(2, e)):
        raise CDGAError("e is not a cocycle")
    t_weight = 1
    if B.weights is not None and any(e):
        w = B.weight_of(2, e)
        if w is None:
            raise CDGAError("e is not weight-homogeneous")
        t_weight = w
    circle = CDGA(1, [["1"], [name]], {}, [[{}]], [[0], [t_weight]] if B.weights is not None else None,
                  name="circle", complete=True)
    A = tensor_product(B, circle)
    # d(b ⊗ t) = db ⊗ t + (-1)^|b| b·e
    index = {}
    for k in range(A.cap + 1):
        for pos, key in enumerate(_tensor_layout(B, circle, k)):
            index[(k, key)] = pos
    for k in range(A.cap):
        for pos, (i, a, j, b) in enumerate(_tensor_layout(B, circle, k)):
            if j == 1 and i + 2 <= B.cap:
                sign = -1 if i % 2 else 1
                prod = B.multiply(i, B.unit(i, a), 2, e)
                for c, x in enumerate(prod):
                    if x:
                        target = index[(k + 1, (i + 2, c, 0, 0))]
                        _sparse_add(A.differential[k][pos], {target: sign * x})
    A.name = f"{B.name}+hirsch({name})"
    A.provenance = f"Hirsch extension of {B.name}"
    A.complete = B.complete
    return A


def _tensor_layout(A: CDGA, B: CDGA, k: int) -> list[tuple]:
    return [(i, a, k - i, b) for i in range(k, -1, -1) if i <= A.cap and k - i <= B.cap
            for a in range(A.dim(i)) for b in range(B.dim(k - i))]


def _combined_cap(A: CDGA, B: CDGA, both_complete: int) -> int:
    # a complete factor is known in every degree, so only the truncated one limits the result
    if A.complete and B.complete:
        return both_complete
    if B.complete:
        return A.cap
    if A.complete:
        return B.cap
    return min(A.cap, B.cap)


def tensor_product(A: CDGA, B: CDGA) -> CDGA:
    """A ⊗ B with Koszul signs, capped at min(cap A, cap B)."""
    cap = _combined_cap(A, B, A.cap + B.cap)
    layouts = [_tensor_layout(A, B, k) for k in range(cap + 1)]
    where = [{key: pos for pos, key in enumerate(layouts[k])} for k in range(cap + 1)]

    def nm(i, a, j, b):
        if i == 0:
            return B.basis[j][b]
        if j == 0:
            return A.basis[i][a]
        return f"{A.basis[i][a]}|{B.basis[j][b]}"

    basis = [[nm(*key) for key in layouts[k]] for k in range(cap + 1)]
    basis[0] = ["1"]
    products = {}
    for p in range(1, cap + 1):
        for q in range(1, cap + 1 - p):
            for x, (i, a, j, b) in enumerate(layouts[p]):
                for y, (i2, a2, j2, b2) in enumerate(layouts[q]):
                    sign = -1 if (j * i2) % 2 else 1
                    # degrees past a factor's cap only occur for complete factors, where they vanish
                    pa = A.basis_product(i, a, i2, a2) if i + i2 <= A.cap else {}
                    pb = B.basis_product(j, b, j2, b2) if j + j2 <= B.cap else {}
                    vec: dict = {}
                    for c1, x1 in pa.items():
                        for c2, x2 in pb.items():
                            _sparse_add(vec, {where[p + q][(i + i2, c1, j + j2, c2)]: sign * x1 * x2})
                    if vec:
                        products[(p, x, q, y)] = vec
    differential = []
    for k in range(cap):
        cols = []
        for (i, a, j, b) in layouts[k]:
            col: dict = {}
            if i < A.cap:
                for c, x in A.differential[i][a].items():
                    key = (i + 1, c, j, b)
                    if key in where[k + 1]:
                        _sparse_add(col, {where[k + 1][key]: x})
            if j < B.cap:
                sign = -1 if i % 2 else 1
                for c, x in B.differential[j][b].items():
                    key = (i, a, j + 1, c)
                    if key in where[k + 1]:
                        _sparse_add(col, {where[k + 1][key]: sign * x})
            cols.append(col)
        differential.append(cols)
    weights = None
    if A.weights is not None and B.weights is not None:
        weights = [[A.weights[i][a] + B.weights[j][b] for (i, a, j, b) in layouts[k]] for k in range(cap + 1)]
    h1 = None
    if A.h1_variables and B.h1_variables and not set(A.h1_variables) & set(B.h1_variables):
        h1 = list(A.h1_variables) + list(B.h1_variables)
    return CDGA(cap, basis, products, differential, weights, name=f"{A.name}(x){B.name}",
                provenance="tensor product", h1_variables=h1, complete=A.complete and B.complete)


def coproduct(A: CDGA, B: CDGA) -> CDGA:
    """A ∨ B: direct sum in positive degrees, mixed products zero."""
    cap = _combined_cap(A, B, max(A.cap, B.cap))
    taken = {nm for names in A.basis[1:] for nm in names}

    def bname(nm):
        return nm if nm not in taken else nm + "'"

    basis = [["1"]]
    offset = [0]
    for k in range(1, cap + 1):
        basis.append(list(A.basis[k] if k <= A.cap else []) + [bname(x) for x in (B.basis[k] if k <= B.cap else [])])
        offset.append(A.dim(k))
    products = {}
    for (i, a, j, b), vec in A.products.items():
        if i + j <= cap:
            products[(i, a, j, b)] = dict(vec)
    for (i, a, j, b), vec in B.products.items():
        if i + j <= cap:
            products[(i, a + offset[i], j, b + offset[j])] = {c + offset[i + j]: x for c, x in vec.items()}
    differential = [[{}]]
    for k in range(1, cap):
        cols = [dict(A.differential[k][a]) if k < A.cap else {} for a in range(A.dim(k))]
        cols += [{c + offset[k + 1]: x for c, x in B.differential[k][b].items()} if k < B.cap else {}
                 for b in range(B.dim(k))]
        differential.append(cols)
    weights = None
    if A.weights is not None and B.weights is not None:
        weights = [[0]] + [list(A.weights[k] if k <= A.cap else []) + list(B.weights[k] if k <= B.cap else [])
                           for k in range(1, cap + 1)]
    h1 = None
    if A.h1_variables and B.h1_variables and not set(A.h1_variables) & set(B.h1_variables):
        h1 = list(A.h1_variables) + list(B.h1_variables)
    return CDGA(cap, basis, products, differential, weights, name=f"{A.name} v {B.name}",
                provenance="coproduct", h1_variables=h1, complete=A.complete and B.complete)


def truncate(A: CDGA, q: int) -> CDGA:
    """Keep degrees <= q + 1."""
    new_cap = q + 1
    if new_cap > A.cap:
        if not A.complete:
            raise CDGAError(f"cannot truncate at {q}: cap is {A.cap}")
        # above the top of a genuine algebra every degree is zero
        basis = [list(b) for b in A.basis] + [[] for _ in range(new_cap - A.cap)]
        differential = [[dict(c) for c in cols] for cols in A.differential]
        differential += [[{} for _ in basis[k]] for k in range(len(differential), new_cap)]
        return CDGA(new_cap, basis,
                    {key: dict(v) for key, v in A.products.items()}, differential,
                    [list(w) for w in A.weights] + [[] for _ in range(new_cap - A.cap)] if A.weights is not None else None,
                    name=A.name, provenance=A.provenance, h1_variables=A.h1_variables, complete=True)
    products = {key: dict(v) for key, v in A.products.items() if key[0] + key[2] <= new_cap}
    return CDGA(new_cap, [list(b) for b in A.basis[:new_cap + 1]], products,
                [[dict(c) for c in cols] for cols in A.differential[:new_cap]],
                [list(w) for w in A.weights[:new_cap + 1]] if A.weights is not None else None,
                name=A.name if new_cap == A.cap else f"{A.name}[<={new_cap}]", provenance=A.provenance,
                h1_variables=A.h1_variables, complete=A.complete and new_cap == A.cap)


# ---------------------------------------------------------------- simplicial complexes

@dataclass
class SimplicialComplex:
    vertices: int
    faces: frozenset

    @classmethod
    def from_facets(cls, n: int, facets: Sequence[Sequence[int]]) -> "SimplicialComplex":
        faces = {()}
        for f in facets:
            f = tuple(sorted(set(f)))
            if any(v < 1 or v > n for v in f):
                raise ValueError(f"facet {f} uses a vertex outside 1..{n}")
            for k in range(len(f) + 1):
                faces.update(itertools.combinations(f, k))
        return cls(n, frozenset(faces))

    @classmethod
    def simplex(cls, n: int) -> "SimplicialComplex":
        return cls.from_facets(n, [range(1, n + 1)])

    def is_face(self, s: Sequence[int]) -> bool:
        return tuple(sorted(s)) in self.faces

    def faces_of_dim(self, k: int) -> list[tuple]:
        return sorted(f for f in self.faces if len(f) == k + 1)

    def minimal_nonfaces(self, max_size: int | None = None) -> list[tuple]:
        top = self.vertices if max_size is None else min(max_size, self.vertices)
        out = []
        for k in range(1, top + 1):
            for s in itertools.combinations(range(1, self.vertices + 1), k):
                if s not in self.faces and all(t in self.faces for t in itertools.combinations(s, k - 1)):
                    out.append(s)
        return out


def stanley_reisner_exterior(delta: SimplicialComplex, cap: int = 2) -> CDGA:
    n = delta.vertices
    rels = [{tuple(v - 1 for v in s): ONE} for s in delta.minimal_nonfaces(cap)]
    return exterior_quotient([f"e{i}" for i in range(1, n + 1)], cap, rels, weights=[1] * n,
                             name="stanley-reisner", provenance="exterior Stanley-Reisner ring",
                             complete=cap >= n)


# ---------------------------------------------------------------- elliptic and braid models

def _elliptic_generators(n: int) -> list[str]:
    return [nm for i in range(1, n + 1) for nm in (f"a{i}", f"b{i}")]


def _elliptic_h1(n: int) -> list[str]:
    return [nm for i in range(1, n + 1) for nm in (f"x{i}", f"y{i}")]


def bibby_model(n: int, cap: int = 2) -> CDGA:
    """Gysin-type model of Conf(E, n): generators a_i, b_i (weight 1) and e_ij (weight 2).

    Degree-3 and higher pieces are the quotient of ⋀ by the ideal the listed relations generate.
    """
    if n < 2:
        raise CDGAError("n must be at least 2")
    gens = _elliptic_generators(n)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    gens += [f"e{i}{j}" for i, j in pairs]
    idx = {g: k for k, g in enumerate(gens)}

    def mono(*names):
        sign, m = 1, ()
        for nm in names:
            s, m = _wedge(m, (idx[nm],))
            sign *= s
        return m, sign

    def elem(*terms):
        out: dict = {}
        for c, names in terms:
            m, s = mono(*names)
            _sparse_add(out, {m: rational(c) * s})
        return out

    rels = []
    for i, j in pairs:
        e = f"e{i}{j}"
        rels.append(elem((1, (f"a{i}", e)), (-1, (f"a{j}", e))))
        rels.append(elem((1, (f"b{i}", e)), (-1, (f"b{j}", e))))
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        rels.append(elem((1, (f"e{i}{j}", f"e{i}{k}")), (-1, (f"e{i}{j}", f"e{j}{k}")),
                         (1, (f"e{i}{k}", f"e{j}{k}"))))
    diff = {}
    for i, j in pairs:
        # (a_i - a_j)(b_i - b_j)
        diff[idx[f"e{i}{j}"]] = elem((1, (f"a{i}", f"b{i}")), (-1, (f"a{i}", f"b{j}")),
                                     (-1, (f"a{j}", f"b{i}")), (1, (f"a{j}", f"b{j}")))
    weights = [1] * (2 * n) + [2] * len(pairs)
    return exterior_quotient(gens, cap, rels, diff, weights, name=f"bibby:{n}",
                             provenance=f"Bibby model of the configuration space of {n} points on an elliptic curve",
                             h1_variables=_elliptic_h1(n), complete=False)


def conf_elliptic_h2(n: int) -> CDGA:
    """Degree <= 2 cohomology of Conf(E, n): relations a_i b_i and a_i b_j + a_j b_i, d = 0."""
    if n < 2:
        raise CDGAError("n must be at least 2")
    gens = _elliptic_generators(n)
    idx = {g: k for k, g in enumerate(gens)}

    def pair(u, v):
        s, m = _wedge((idx[u],), (idx[v],))
        return m, s

    rels = []
    for i in range(1, n + 1):
        m, s = pair(f"a{i}", f"b{i}")
        rels.append({m: rational(s)})
    for i, j in itertools.combinations(range(1, n + 1), 2):
        r: dict = {}
        for u, v in ((f"a{i}", f"b{j}"), (f"a{j}", f"b{i}")):
            m, s = pair(u, v)
            _sparse_add(r, {m: rational(s)})
        rels.append(r)
    return exterior_quotient(gens, 2, rels, weights=[1] * (2 * n), name=f"conf-e-h2:{n}",
                             provenance=f"cohomology in degrees <= 2 of Conf(E, {n})",
                             h1_variables=_elliptic_h1(n), complete=False)


def os_braid_truncation(n: int) -> CDGA:
    """Orlik–Solomon algebra of the braid arrangement in degrees <= 2."""
    if n < 3:
        raise CDGAError("n must be at least 3")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    gens = [f"e{i}{j}" for i, j in pairs]
    idx = {p: k for k, p in enumerate(pairs)}
    rels = []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        ij, ik, jk = idx[(i, j)], idx[(i, k)], idx[(j, k)]
        rels.append({(ik, jk): ONE, (ij, jk): -ONE, (ij, ik): ONE})
    return exterior_quotient(gens, 2, rels, weights=[1] * len(gens), name=f"os-braid:{n}",
                             provenance=f"Orlik-Solomon algebra of the braid arrangement A_{n - 1}, degrees <= 2",
                             complete=False)


# ---------------------------------------------------------------- cohomology

@dataclass
class Cohomology:
    degree: int
    dim: int
    representatives: list  # cocycles in A^degree
    names: list
    _image: list = field(default_factory=list, repr=False)

    def class_of(self, v: Sequence) -> list:
        """Coordinates of the class of a cocycle v in the representative basis."""
        if not self.representatives:
            return []
        cols = self.representatives + self._image
        sol = linalg.solve(linalg.transpose(cols), v)
        if sol is None:
            raise CDGAError("vector is not a cocycle")
        return sol[:self.dim]


def cohomology(A: CDGA, i: int, include_top: bool = False) -> Cohomology:
    """H^i(A).  H^cap is only available for complete algebras or with include_top, where it
    is the cohomology of A/A^{>cap}."""
    if i < 0 or i > A.cap or (i == A.cap and not (A.complete or include_top)):
        raise CDGAError(f"degree {i} beyond cap {A.cap}")
    n = A.dim(i)
    kernel = linalg.nullspace(A.d_matrix(i), n) if i < A.cap else [A.unit(i, a) for a in range(n)]
    image = []
    if i > 0:
        image = linalg.row_space_basis(linalg.transpose(A.d_matrix(i - 1), A.dim(i - 1)))
        image = [r for r in image if any(r)]
    chosen: list = []
    current = list(image)
    r = len(current)
    for v in kernel:
        trial = current + [v]
        if linalg.rank(trial) > r:
            chosen.append(v)
            current = trial
            r += 1
    names = []
    for k, v in enumerate(chosen):
        nz = [a for a, x in enumerate(v) if x]
        names.append(f"[{A.basis[i][nz[0]]}]" if len(nz) == 1 and v[nz[0]] == 1 else f"h{i}_{k + 1}")
    return Cohomology(i, len(chosen), chosen, names, image)


def h1_variable_names(A: CDGA) -> list[str]:
    """Names of the ring variables dual to the chosen H^1 basis.

    Model metadata wins; otherwise a single class gives "x", classes represented by single
    basis elements take that element's position (x1, x2, x4 for H^1 = <e1, e2, e4>), and
    anything else is numbered x1..xn.
    """
    H1 = cohomology(A, 1, include_top=True)
    if A.h1_variables:
        if len(A.h1_variables) != H1.dim:
            raise CDGAError("model metadata lists the wrong number of H^1 variables")
        return list(A.h1_variables)
    if H1.dim == 1:
        return ["x"]
    positions = []
    for v in H1.representatives:
        nz = [a for a, c in enumerate(v) if c]
        if len(nz) != 1 or v[nz[0]] != 1:
            return [f"x{j}" for j in range(1, H1.dim + 1)]
        positions.append(nz[0])
    return [f"x{p + 1}" for p in positions]


def betti_numbers(A: CDGA, include_top: bool = False) -> list[int]:
    top = A.cap if (A.complete or include_top) else A.cap - 1
    return [cohomology(A, i, include_top).dim for i in range(top + 1)]


def cohomology_algebra(A: CDGA, include_top: bool | None = None) -> CDGA:
    """H^*(A) with the induced product and d = 0."""
    include_top = A.complete if include_top is None else include_top
    top = A.cap if include_top else A.cap - 1
    if top < 1:
        raise CDGAError("cap too small for a cohomology algebra")
    H = [cohomology(A, i, include_top) for i in range(top + 1)]
    basis = [["1"]] + [list(H[k].names) for k in range(1, top + 1)]
    products = {}
    for i in range(1, top + 1):
        for j in range(1, top + 1 - i):
            for a, u in enumerate(H[i].representatives):
                for b, v in enumerate(H[j].representatives):
                    prod = A.multiply(i, u, j, v)
                    if any(prod):
                        vec = _sparse(H[i + j].class_of(prod))
                        if vec:
                            products[(i, a, j, b)] = vec
    weights = None
    if A.weights is not None:
        weights = [[0]]
        for k in range(1, top + 1):
            ws = [A.weight_of(k, v) for v in H[k].representatives]
            if any(w is None for w in ws):
                weights = None
                break
            weights.append(ws)
    differential = [[{} for _ in basis[k]] for k in range(top)]
    return CDGA(top, basis, products, differential, weights, name=f"H({A.name})",
                provenance=f"cohomology algebra of {A.name}",
                h1_variables=h1_variable_names(A) if H[1].dim else None,
                complete=A.complete or not include_top)


@dataclass
class QuadraticData:
    """Degree <= 2 data: V ⊕ U in degree 1, W in degree 2, products and d: U -> W."""

    V: list
    W: list
    mu: dict  # (p, q), p < q indices into V + U -> coefficient list over W
    U: list = field(default_factory=list)
    d_part: dict = field(default_factory=dict)  # index into U -> coefficient list over W
    variables: list | None = None  # ring variable names dual to V

    def mu_matrix(self) -> list[list]:
        """Rows indexed by W, columns by pairs p < q of V."""
        pairs = list(itertools.combinations(range(len(self.V)), 2))
        cols = [self.mu.get(p, [ZERO] * len(self.W)) for p in pairs]
        return linalg.transpose(cols, len(self.W)) if cols else [[] for _ in self.W]


def cohomology_quadratic_data(A: CDGA) -> QuadraticData:
    if A.cap < 2:
        raise CDGAError("cap too small: need cap >= 2")
    H1 = cohomology(A, 1)
    H2 = cohomology(A, 2, include_top=True)
    mu = {}
    for p, q in itertools.combinations(range(H1.dim), 2):
        prod = A.multiply(1, H1.representatives[p], 1, H1.representatives[q])
        mu[(p, q)] = H2.class_of(prod) if any(prod) else [ZERO] * H2.dim
    return QuadraticData(list(H1.names), list(H2.names), mu,
                         variables=h1_variable_names(A) if H1.dim else None)


def quadratic_cdga(Q: QuadraticData, name: str = "quadratic") -> CDGA:
    ones = list(Q.V) + list(Q.U)
    nW = len(Q.W)
    products = {}
    for (p, q), vec in Q.mu.items():
        if not (0 <= p < q < len(ones)):
            raise CDGAError(f"bad product index {(p, q)}")
        vec = [rational(c) for c in vec]
        if len(vec) != nW:
            raise CDGAError("product vector length differs from dim W")
        sv = _sparse(vec)
        if sv:
            products[(1, p, 1, q)] = sv
            products[(1, q, 1, p)] = {c: -x for c, x in sv.items()}
    diff1 = [{} for _ in ones]
    for u, vec in Q.d_part.items():
        vec = [rational(c) for c in vec]
        if len(vec) != nW or not (0 <= u < len(Q.U)):
            raise CDGAError("inconsistent d-part")
        diff1[len(Q.V) + u] = _sparse(vec)
    h1 = list(Q.variables) if Q.variables and not Q.U else None
    return CDGA(2, [["1"], ones, list(Q.W)], products, [[{}], diff1], name=name, provenance="quadratic data",
                h1_variables=h1)


# ---------------------------------------------------------------- catalog

def catalog_keys() -> list[str]:
    from .lie import TABLE_KEYS
    keys = [f"ce:{k}" for k in TABLE_KEYS]
    keys += ["ce:sol2", "ce:h(1)", "ce:h(2)", "ce:f(3,2)", "ce:f(4,2)"]
    keys += [f"exterior:{n}" for n in (1, 2, 3)]
    keys += [f"bibby:{n}" for n in (2, 3, 4)]
    keys += [f"conf-e-h2:{n}" for n in (2, 3, 4)]
    keys += [f"os-braid:{n}" for n in (3, 4, 5)]
    return keys


def builtin_cdga(key: str, cap: int | None = None) -> CDGA:
    """Catalog models: "ce:<lie key>", "exterior:n", "bibby:n", "conf-e-h2:n", "os-braid:n"."""
    family, _, arg = key.strip().partition(":")
    if not arg:
        raise KeyError(f"unknown model {key!r}")
    if family == "ce":
        return ce_complex(builtin_lie(arg), cap)
    try:
        n = int(arg)
    except ValueError as exc:
        raise KeyError(f"unknown model {key!r}") from exc
    if family == "exterior":
        return exterior_cdga(n, cap)
    if family == "bibby":
        return bibby_model(n, cap or 2)
    if family == "conf-e-h2":
        A = conf_elliptic_h2(n)
    elif family == "os-braid":
        A = os_braid_truncation(n)
    else:
        raise KeyError(f"unknown model {key!r}")
    if cap is not None and cap != 2:
        if cap > 2:
            raise CDGAError(f"{family} models are only defined through degree 2")
        A = truncate(A, cap - 1)
    return A
