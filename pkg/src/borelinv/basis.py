"""Enumeration of the Borel basis B_m(n), the sets nabla/Delta of Dickson
algebra pieces, and the conjectural GL_n and parabolic candidate bases.

Candidates are built as small expression trees so that the index shift
Phi can be applied syntactically before anything is evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .gf import FieldParams
from .invariants import (YIndex, dickson_power, delta_pow, evaluate_y,
                         schur_s, weak_compositions)
from .mpoly import MPoly, RationalFn, rf_as_poly


class InvalidIndex(ValueError):
    pass


class CompositionInvalid(ValueError):
    pass


def q_int(a: int, q: int) -> int:
    return (q ** a - 1) // (q - 1) if a > 0 else 0


# -- B_m(n) ------------------------------------------------------------------

def basis_inductive(q: int, m: int, n: int) -> set:
    """B_m(n) from the recursive definition, as a set of YIndex."""
    return set(_inductive(q, m, n))


@lru_cache(maxsize=None)
def _inductive(q, m, n):
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got m={m}, n={n}")
    if m == 0:
        return frozenset({YIndex.make(0, (n - 1,), (0,))})
    if n == 1:
        return frozenset(YIndex.make(m, (0,), (a,)) for a in range(q_int(m, q) + 1))
    out = set()
    for y in _inductive(q, m, n - 1):
        out.add(YIndex.make(m, (y.I[0] + 1,) + y.I[1:], y.J))
    for y in _inductive(q, m - 1, n - 1):
        for a in range(q_int(m, q)):
            out.add(YIndex.make(m, (0,) + y.I, (a,) + y.J))
    return frozenset(out)


def basis_closed_form(q: int, m: int, n: int) -> set:
    out = set()
    for k in range(1, min(n, m + 1) + 1):
        bounds = [range(q_int(m - s + 1, q)) for s in range(1, k)]
        bounds.append(range(q_int(m - k + 1, q) + 1))
        for I in weak_compositions(n - k, k):
            for J in product(*bounds):
                out.add(YIndex.make(m, I, J))
    return out


def enumerate_basis(q: int, m: int, n: int, check: bool = True) -> list:
    """B_m(n) sorted by (k, I, J).  With ``check`` the inductive rule and the
    closed form are both computed and must agree."""
    closed = basis_closed_form(q, m, n)
    if check:
        ind = basis_inductive(q, m, n)
        if ind != closed:
            raise AssertionError(
                f"inductive and closed-form enumerations differ: "
                f"{sorted(ind ^ closed)[:5]}")
    return sorted(closed)


def basis_size(q: int, m: int, n: int) -> int:
    """|B_m(n)| by the recursion |B_m(n)| = |B_m(n-1)| + [m]_q |B_{m-1}(n-1)|."""
    if m == 0:
        return 1
    if n == 1:
        return q_int(m, q) + 1
    return basis_size(q, m, n - 1) + q_int(m, q) * basis_size(q, m - 1, n - 1)


def index_degree(idx: YIndex, q: int) -> int:
    b = idx.b
    return sum(i * (q ** b - q ** s) + j * q ** s * (q - 1)
               for s, (i, j) in enumerate(zip(idx.I, idx.J)))


def _check_index(idx: YIndex, q: int, m: int):
    n = idx.nvars
    k = idx.k
    if idx.b != m or k > min(n, m + 1):
        raise InvalidIndex(f"{idx} is not in B_{m}({n})")
    for s, j in enumerate(idx.J, start=1):
        bound = q_int(m - s + 1, q)
        if (s < k and j >= bound) or (s == k and j > bound):
            raise InvalidIndex(f"{idx}: j_{s} = {j} out of range")


def smallest_monomial(idx: YIndex, q: int, m: int) -> tuple:
    """Predicted graded-lex smallest monomial of Y_m(I;J), as an exponent tuple."""
    _check_index(idx, q, m)
    exps = []
    for s, (i, j) in enumerate(zip(idx.I, idx.J), start=1):
        exps += [q ** m - q ** (s - 1)] * i
        exps.append(j * q ** (s - 1) * (q - 1))
    return tuple(exps)


def summand_beta(idx: YIndex, q: int, m: int) -> tuple:
    """The 0/1 vector beta attached to a basis element: 1 at the last position
    of every block but the final one, and 1 at position n exactly when j_k is
    below its maximum."""
    n = idx.nvars
    beta = [0] * n
    pos = 0
    for s, i in enumerate(idx.I[:-1], start=1):
        pos += i + 1
        beta[pos - 1] = 1
    k = idx.k
    if idx.J[-1] != q_int(m - k + 1, q):
        beta[n - 1] = 1
    return tuple(beta)


def evaluate_basis(field: FieldParams, m: int, n: int, truncate: bool = True) -> list:
    """[(index, polynomial)] for B_m(n); polynomials reduced into Q_m(n)."""
    cap = field.q ** m
    out = []
    for idx in enumerate_basis(field.q, m, n):
        f = evaluate_y(field, idx)
        out.append((idx, f.truncate(cap) if truncate else f))
    return out


def latex_table(q: int, m: int, n: int) -> str:
    """Families of B_m(n) grouped by (k, I), one row per family."""
    rows = {}
    for idx in enumerate_basis(q, m, n):
        rows.setdefault((idx.k, idx.I), []).append(idx.J)
    lines = [r"\begin{tabular}{cll}", r"$k$ & $I$ & $J$ \\ \hline"]
    for (k, I), Js in sorted(rows.items()):
        js = ", ".join("(" + ",".join(map(str, J)) + ")" for J in Js)
        lines.append(f"{k} & $({','.join(map(str, I))})$ & ${js}$ \\\\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines)


# -- expression trees ----------------------------------------------------------

@dataclass(frozen=True)
class One:
    arity: int


@dataclass(frozen=True)
class Dick:
    """Q_{r,i}^e in r variables."""
    r: int
    i: int
    e: int = 1


@dataclass(frozen=True)
class Schur:
    lam: tuple


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Delta:
    """delta_{a;b}^h(child)."""
    a: int
    b: int
    h: int
    child: object


def arity(node) -> int:
    if isinstance(node, One):
        return node.arity
    if isinstance(node, Dick):
        return node.r
    if isinstance(node, Schur):
        return len(node.lam)
    if isinstance(node, Prod):
        return max((arity(f) for f in node.factors), default=0)
    if isinstance(node, Delta):
        return arity(node.child) + node.h
    raise TypeError(node)


def phi_node(node):
    """Phi rule: delta_{a;b} -> delta_{a+1;b+1}, Q_{r,i} -> Q_{r+1,i+1},
    S_lam -> S_{lam,0}, applied to every node."""
    if isinstance(node, One):
        return One(node.arity + 1)
    if isinstance(node, Dick):
        return Dick(node.r + 1, node.i + 1, node.e)
    if isinstance(node, Schur):
        return Schur(node.lam + (0,))
    if isinstance(node, Prod):
        return Prod(tuple(phi_node(f) for f in node.factors))
    if isinstance(node, Delta):
        return Delta(node.a + 1, node.b + 1, node.h, phi_node(node.child))
    raise TypeError(node)


def phi_pow(node, s: int):
    for _ in range(s):
        node = phi_node(node)
    return node


def y_node(idx: YIndex):
    """Expression tree of Y_b(I;J)."""
    k = idx.k
    node = None
    for s in range(k, 0, -1):
        i, j = idx.I[s - 1], idx.J[s - 1]
        factors = []
        if j:
            factors.append(Dick(s, s - 1, j))
        if node is not None:
            factors.append(node)
        inner = Prod(tuple(factors)) if factors else One(s)
        node = Delta(s, idx.b, i, inner) if i else inner
    return node


def node_text(node) -> str:
    if isinstance(node, One):
        return "1"
    if isinstance(node, Dick):
        base = f"Q_{{{node.r},{node.i}}}"
        return base if node.e == 1 else f"{base}^{node.e}"
    if isinstance(node, Schur):
        return f"S_({','.join(map(str, node.lam))})"
    if isinstance(node, Prod):
        parts = [node_text(f) for f in node.factors if not isinstance(f, One)]
        return "*".join(parts) if parts else "1"
    if isinstance(node, Delta):
        op = f"delta_{{{node.a};{node.b}}}"
        if node.h > 1:
            op += f"^{node.h}"
        return f"{op}({node_text(node.child)})"
    raise TypeError(node)


def _eval(field, node, nvars) -> RationalFn:
    """Value of ``node`` viewed in ``nvars`` variables."""
    return _eval_cached(field, node).map_poly(lambda p: p.extend(nvars))


@lru_cache(maxsize=None)
def _eval_cached(field, node) -> RationalFn:
    if isinstance(node, One):
        return RationalFn(MPoly.one(field, node.arity))
    if isinstance(node, Dick):
        return RationalFn(dickson_power(field, node.r, node.i, node.e))
    if isinstance(node, Schur):
        return RationalFn(schur_s(field, node.lam, len(node.lam)))
    if isinstance(node, Prod):
        n = arity(node)
        out = RationalFn(MPoly.one(field, n))
        for f in node.factors:
            out = out * _eval(field, f, n)
        return out
    if isinstance(node, Delta):
        return delta_pow(node.a, node.b, node.h, _eval_cached(field, node.child))
    raise TypeError(node)


def evaluate_node(field: FieldParams, node) -> MPoly:
    return rf_as_poly(_eval_cached(field, node))


def node_degree(node, q: int) -> int:
    if isinstance(node, One):
        return 0
    if isinstance(node, Dick):
        return node.e * (q ** node.r - q ** node.i)
    if isinstance(node, Schur):
        s = len(node.lam)
        return sum(q ** (l + s - 1 - j) - q ** (s - 1 - j) for j, l in enumerate(node.lam))
    if isinstance(node, Prod):
        return sum(node_degree(f, q) for f in node.factors)
    if isinstance(node, Delta):
        return node_degree(node.child, q) + node.h * (q ** node.b - q ** (node.a - 1))
    raise TypeError(node)


# -- nabla and Delta -------------------------------------------------------------

def box_partitions(s: int, width: int):
    """Partitions with at most s parts, each at most ``width``, as s-tuples."""
    if s == 0:
        yield ()
        return
    if width < 0:
        return

    def rec(prefix, left, cap):
        if left == 0:
            yield tuple(prefix)
            return
        for v in range(cap, -1, -1):
            yield from rec(prefix + [v], left - 1, v)

    yield from rec([], s, width)


@dataclass(frozen=True)
class GLCandidate:
    """delta_{s+1}^{n-s}(S_lam * Q_{s,s-1}^{a_1} ... Q_{s,0}^{a_s})."""
    s: int
    lam: tuple
    dickson_exponents: tuple
    n: int = 0
    m: int = 0

    def inner_node(self):
        s = self.s
        if s == 0:
            return One(0)
        factors = [Schur(self.lam)]
        for i, a in enumerate(self.dickson_exponents, start=1):
            if a:
                factors.append(Dick(s, s - i, a))
        return Prod(tuple(factors))

    def node(self):
        inner = self.inner_node()
        h = self.n - self.s
        return Delta(self.s + 1, self.m, h, inner) if h else inner

    def to_json(self):
        return {"s": self.s, "lambda": list(self.lam), "a": list(self.dickson_exponents)}


def nabla(q: int, m: int, s: int) -> list:
    """nabla^m_s as GLCandidates with n = s (no delta applied)."""
    if not 0 <= s <= m:
        raise ValueError(f"need 0 <= s <= m, got s={s}, m={m}")
    out = []
    for lam in box_partitions(s, m - s):
        for a in product(*[range(q ** l) for l in lam]):
            out.append(GLCandidate(s, lam, tuple(a), s, m))
    return out


def nabla_degrees(q: int, m: int, s: int) -> list:
    return sorted(node_degree(c.inner_node(), q) for c in nabla(q, m, s))


def delta_partitions(q: int, m: int, s: int) -> list:
    """Delta^m_s as Dickson exponent tuples (m_1, .., m_s) for
    Q_{s,s-1}^{m_1} ... Q_{s,0}^{m_s}."""
    if not 0 <= s <= m:
        raise ValueError(f"need 0 <= s <= m, got s={s}, m={m}")
    out = []
    for lam in box_partitions(s, m - s):
        ext = lam + (0,)
        ranges = []
        for i in range(s):
            lo = (q ** ext[i] - q ** ext[i + 1]) // (q - 1)
            hi = (q ** (ext[i] + 1) - q ** ext[i + 1]) // (q - 1)
            ranges.append(range(lo, hi))
        out.extend(tuple(t) for t in product(*ranges))
    return out


def delta_degrees(q: int, m: int, s: int) -> list:
    return sorted(sum(mi * (q ** s - q ** (s - i)) for i, mi in enumerate(t, start=1))
                  for t in delta_partitions(q, m, s))


def gl_candidate_basis(q: int, m: int, n: int) -> list:
    out = []
    for s in range(0, min(m, n) + 1):
        for c in nabla(q, m, s):
            out.append(GLCandidate(s, c.lam, c.dickson_exponents, n, m))
    return out


# -- parabolic candidates -----------------------------------------------------------

def parse_composition(alpha, n: int | None = None) -> tuple:
    if isinstance(alpha, str):
        try:
            alpha = tuple(int(x) for x in alpha.replace(" ", "").split(",") if x)
        except ValueError as exc:
            raise CompositionInvalid(f"bad composition {alpha!r}") from exc
    alpha = tuple(alpha)
    if not alpha or any(a < 1 for a in alpha):
        raise CompositionInvalid(f"{alpha} is not a composition")
    if n is not None and sum(alpha) != n:
        raise CompositionInvalid(f"{alpha} does not compose {n}")
    return alpha


@dataclass(frozen=True)
class ParabolicIndex:
    """delta_{s+1;m}^{n_1-s}(f * Phi^s g), f in nabla^m_s, g a candidate for
    the tail composition at level m - s (None for the empty tail)."""
    alpha: tuple
    m: int
    s: int
    f: GLCandidate
    g: "ParabolicIndex | None"

    def node(self):
        n1 = self.alpha[0]
        g_node = One(0) if self.g is None else self.g.node()
        factors = [self.f.inner_node(), phi_pow(g_node, self.s)]
        factors = [x for x in factors if not (isinstance(x, One) and x.arity == 0)]
        inner = Prod(tuple(factors)) if factors else One(0)
        h = n1 - self.s
        return Delta(self.s + 1, self.m, h, inner) if h else inner

    def to_json(self):
        return {"s": self.s, "f": self.f.to_json(),
                "g": None if self.g is None else self.g.to_json()}


def parabolic_candidate_basis(q: int, m: int, alpha) -> list:
    alpha = parse_composition(alpha)
    return list(_parabolic(q, m, alpha))


@lru_cache(maxsize=None)
def _parabolic(q, m, alpha):
    if not alpha:
        return (None,)
    out = []
    n1 = alpha[0]
    for s in range(0, min(n1, m) + 1):
        for f in nabla(q, m, s):
            for g in _parabolic(q, m - s, alpha[1:]):
                out.append(ParabolicIndex(alpha, m, s, f, g))
    return tuple(out)
