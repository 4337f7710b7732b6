"""Matrix groups over F_q acting on Q_m(n): generators, invariance, the
linear-algebra oracle for invariant subspaces, and orbit counting on
F_{q^m}^n."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .basis import CompositionInvalid, parse_composition
from .gf import FieldMismatch, FieldParams, FqElem
from .linalg import nullspace, rank
from .mpoly import MPoly, NotHomogeneous, apply_matrix

DEFAULT_MAX_CELLS = 10 ** 6
KINDS = ("borel", "gl", "parabolic", "trivial")


class SizeBound(ValueError):
    pass


class NotInvertible(ValueError):
    pass


@dataclass(frozen=True)
class MatrixFq:
    """n x n matrix of packed field elements; sigma x_j = sum_i rows[i][j] x_i."""
    field: FieldParams
    rows: tuple

    @classmethod
    def make(cls, field, rows, check=True):
        rows = tuple(tuple(field.elem(c).value if isinstance(c, FqElem) else c for c in r)
                     for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        M = cls(field, rows)
        if check and not M.is_invertible():
            raise NotInvertible(f"singular matrix {rows}")
        return M

    @classmethod
    def identity(cls, field, n):
        return cls(field, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self):
        return len(self.rows)

    def is_invertible(self) -> bool:
        return rank(self.rows, self.field, self.n) == self.n

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        F = self.field
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = F.add(acc, F.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return MatrixFq(F, tuple(out))

    def to_json(self):
        return [[self.field.to_coeffs(c) for c in r] for r in self.rows]


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int
    field: FieldParams
    alpha: tuple = dc_field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind == "parabolic":
            object.__setattr__(self, "alpha", parse_composition(self.alpha, self.n))
        elif self.kind == "gl":
            object.__setattr__(self, "alpha", (self.n,))
        elif self.kind == "borel":
            object.__setattr__(self, "alpha", (1,) * self.n)
        elif self.alpha:
            raise CompositionInvalid("trivial group takes no composition")

    @property
    def label(self):
        if self.kind == "parabolic":
            return "P(" + ",".join(map(str, self.alpha)) + ")"
        return self.kind


def _elementary(field, n, i, j, c=1):
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i][j] = c
    return MatrixFq(field, tuple(tuple(r) for r in rows))


def generators(spec: GroupSpec) -> list:
    """Torus generators diag(.., lambda, ..) (omitted over F_2), the
    transvections x_j -> x_j + x_i for i < j, and, for parabolic groups, the
    reversed transvections x_i -> x_i + x_j inside each diagonal block."""
    F, n = spec.field, spec.n
    if spec.kind == "trivial":
        return []
    gens = []
    lam = F.primitive()
    if lam != 1:
        for i in range(n):
            gens.append(_elementary(F, n, i, i, lam))
    for i in range(n):
        for j in range(i + 1, n):
            gens.append(_elementary(F, n, i, j))
    start = 0
    for size in spec.alpha:
        if spec.kind == "borel":
            break
        for i in range(start, start + size):
            for j in range(i + 1, start + size):
                gens.append(_elementary(F, n, j, i))
        start += size
    return gens


def closure_order(spec: GroupSpec, limit: int = 10 ** 6) -> int:
    """Order of the group generated by ``generators(spec)`` (BFS)."""
    gens = generators(spec)
    e = MatrixFq.identity(spec.field, spec.n)
    seen = {e.rows}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = s @ g
            if h.rows not in seen:
                seen.add(h.rows)
                if len(seen) > limit:
                    raise SizeBound(f"group larger than {limit}")
                queue.append(h)
    return len(seen)


def expected_order(spec: GroupSpec) -> int:
    """|P_alpha| = q^{dim of unipotent radical part} * prod |GL_{n_i}|."""
    q, n = spec.field.q, spec.n
    if spec.kind == "trivial":
        return 1
    order = 1
    for size in spec.alpha:
        for i in range(size):
            order *= q ** size - q ** i
    inner = sum(a * (a - 1) // 2 for a in spec.alpha)
    return order * q ** (n * (n - 1) // 2 - inner)


def is_invariant(f: MPoly, spec: GroupSpec, m: int) -> bool:
    cap = spec.field.q ** m
    base = f.truncate(cap)
    return all(apply_matrix(base, g, cap) == base for g in generators(spec))


# -- the oracle ------------------------------------------------------------------

def degree_monomials(n: int, d: int, cap: int) -> list:
    """Exponent tuples in Q_m(n) of degree d, graded-lex descending."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            if left < cap:
                out.append(tuple(prefix + [left]))
            return
        for e in range(min(left, cap - 1), -1, -1):
            if left - e <= (slots - 1) * (cap - 1):
                rec(prefix + [e], left - e, slots - 1)

    if 0 <= d <= n * (cap - 1):
        rec([], d, n)
    return out


@dataclass
class DegreeInvariants:
    degree: int
    dim: int
    monomials: list
    kernel: list        # echelonized kernel vectors over ``monomials``

    def polys(self, field: FieldParams, n: int) -> list:
        return [MPoly.from_dict(field, n, {mon: field.elem(field.to_coeffs(c))
                                           for mon, c in zip(self.monomials, v) if c})
                for v in self.kernel]

    def to_json(self):
        return {"degree": self.degree, "dim": self.dim,
                "monomials": [list(x) for x in self.monomials],
                "kernel": [list(v) for v in self.kernel]}

    @classmethod
    def from_json(cls, d):
        return cls(d["degree"], d["dim"], [tuple(x) for x in d["monomials"]],
                   [list(v) for v in d["kernel"]])


def check_size(q: int, m: int, n: int, max_cells: int = DEFAULT_MAX_CELLS):
    cells = (q ** m) ** n
    if cells > max_cells:
        raise SizeBound(f"(q^m)^n = {cells} exceeds the bound {max_cells}")


def invariants_in_degree(spec: GroupSpec, m: int, d: int) -> DegreeInvariants:
    F, n = spec.field, spec.n
    cap = F.q ** m
    mons = degree_monomials(n, d, cap)
    rows = []
    for g in generators(spec):
        block = {}
        for c, mon in enumerate(mons):
            img = apply_matrix(MPoly.monomial(F, n, mon), g, cap)
            img = img - MPoly.monomial(F, n, mon)
            for key, v in img.terms.items():
                block.setdefault(key, [0] * len(mons))[c] = v
        rows.extend(block.values())
    ker = nullspace(rows, F, len(mons)) if mons else []
    return DegreeInvariants(d, len(ker), mons, ker)


def invariant_dims(spec: GroupSpec, m: int, max_cells: int = DEFAULT_MAX_CELLS,
                   cache=None) -> dict:
    """degree -> DegreeInvariants for every degree of Q_m(n)."""
    F, n = spec.field, spec.n
    check_size(F.q, m, n, max_cells)
    top = n * (F.q ** m - 1)
    out = {}
    for d in range(top + 1):
        hit = cache.get(spec, m, d) if cache is not None else None
        if hit is None:
            hit = invariants_in_degree(spec, m, d)
            if cache is not None:
                cache.put(spec, m, d, hit)
        out[d] = hit
    return out


def rank_of_family(polys, m: int | None = None):
    """(total rank, {degree: rank}) of a family of homogeneous polynomials."""
    by_deg = {}
    for f in polys:
        if m is not None:
            f = f.truncate(f.field.q ** m)
        if not f:
            continue
        if not f.is_homogeneous():
            raise NotHomogeneous("rank_of_family needs homogeneous polynomials")
        by_deg.setdefault(f.homogeneous_degree(), []).append(f)
    ranks = {}
    for d, fs in by_deg.items():
        keys = sorted({k for f in fs for k in f.terms}, reverse=True)
        pos = {k: i for i, k in enumerate(keys)}
        rows = []
        for f in fs:
            r = [0] * len(keys)
            for k, c in f.terms.items():
                r[pos[k]] = c
            rows.append(r)
        ranks[d] = rank(rows, fs[0].field, len(keys))
    return sum(ranks.values()), ranks


def in_span_of(f: MPoly, family, m: int | None = None) -> bool:
    base, _ = rank_of_family(family, m)
    new, _ = rank_of_family(list(family) + [f], m)
    return new == base


# -- orbits on F_{q^m}^n ---------------------------------------------------------------

def _tables(F: FieldParams):
    q = F.q
    add = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    return add, mul


def _apply_to_states(g: MatrixFq, digits, add, mul):
    """digits: (N, n, m) array of F_q coordinates; returns g applied to each
    column vector (entries of g act coordinate-wise on F_q^m)."""
    N, n, m = digits.shape
    out = np.zeros_like(digits)
    for i in range(n):
        acc = np.zeros((N, m), dtype=np.int64)
        for j in range(n):
            c = g.rows[i][j]
            if c:
                acc = add[acc, mul[c][digits[:, j, :]]]
        out[:, i, :] = acc
    return out


def orbit_count(spec: GroupSpec, m: int, max_cells: int = DEFAULT_MAX_CELLS) -> int:
    """Number of orbits of the generated group on column vectors in F_{q^m}^n."""
    F, n = spec.field, spec.n
    q = F.q
    check_size(q, m, n, max_cells)
    N = q ** (m * n)
    if m == 0:
        return 1
    idx = np.arange(N, dtype=np.int64)
    weights = q ** np.arange(m * n, dtype=np.int64)
    digits = ((idx[:, None] // weights[None, :]) % q).reshape(N, n, m)
    add, mul = _tables(F)
    src, dst = [], []
    for g in generators(spec):
        img = _apply_to_states(g, digits, add, mul).reshape(N, n * m)
        src.append(idx)
        dst.append(img @ weights)
    if not src:
        return N
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    count, _ = connected_components(graph, directed=True, connection="weak")
    return int(count)


def all_compositions(n: int):
    """Compositions of n in lex order."""
    for cuts in product((0, 1), repeat=n - 1):
        parts, size = [], 1
        for c in cuts:
            if c:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield tuple(parts)
