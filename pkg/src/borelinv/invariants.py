"""Moore determinants, Dickson invariants, the delta operator and the
polynomials Y_b(I;J) built from them.

All functions take the field explicitly or read it off their polynomial
argument.  Variable indices are 0-based.  Results that are reused heavily
(Moore determinants, Dickson powers, nested Y tails) are memoised per field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .gf import FieldParams
from .mpoly import (MPoly, NotDivisible, NotPolynomial, PolyError, RationalFn,
                    det_poly, exact_div, rf_as_poly, rf_simplify, rf_sum)


class SpecInvalid(PolyError):
    pass


class EmptyIndexSet(PolyError):
    pass


class IndexOutOfRange(PolyError):
    pass


class ArityViolation(PolyError):
    pass


class SymmetryViolation(PolyError):
    pass


# -- Moore determinants and V ------------------------------------------------

@lru_cache(maxsize=4096)
def moore_L(field: FieldParams, idx: tuple, nvars: int) -> MPoly:
    """det(x_{idx[j]}^{q^i})_{0<=i,j<k}.  Repeated indices give 0."""
    idx = tuple(idx)
    k = len(idx)
    if k == 0:
        raise EmptyIndexSet("Moore determinant of an empty index set")
    q = field.q
    M = [[MPoly.var(field, nvars, v, q ** i) for v in idx] for i in range(k)]
    return det_poly(M)


def _moore_or_one(field, idx, nvars):
    if not idx:
        return MPoly.one(field, nvars)
    return moore_L(field, tuple(idx), nvars)


@lru_cache(maxsize=4096)
def v_poly(field: FieldParams, J: tuple, i: int, nvars: int) -> MPoly:
    """V(J, i) = L(J, i) / L(J), the product of all x_i + (linear form in x_J)."""
    J = tuple(J)
    if i in J:
        return MPoly.zero(field, nvars)
    if not J:
        return MPoly.var(field, nvars, i)
    try:
        return exact_div(moore_L(field, J + (i,), nvars), moore_L(field, J, nvars))
    except NotDivisible as exc:  # pragma: no cover - would be a library bug
        raise RuntimeError("L(J,i) not divisible by L(J)") from exc


def v_product(field: FieldParams, J: tuple, i: int, nvars: int) -> MPoly:
    """prod over lambda in F_q^|J| of (lambda . x_J + x_i)."""
    F = field
    out = MPoly.one(F, nvars)
    xi = MPoly.var(F, nvars, i)
    for lam in product(range(F.q), repeat=len(J)):
        form = xi
        for c, j in zip(lam, J):
            if c:
                form = form + MPoly.var(F, nvars, j).scale(c)
        out = out * form
    return out


def v_set(field: FieldParams, J, I, nvars: int) -> MPoly:
    """V(J, I) = prod_{i in I} V(J, i)."""
    out = MPoly.one(field, nvars)
    for i in I:
        out = out * v_poly(field, tuple(J), i, nvars)
    return out


# -- Dickson invariants ------------------------------------------------------

def _dickson_det(field, k, s):
    q = field.q
    rows = [i for i in range(k + 1) if i != s]
    M = [[MPoly.var(field, k, v, q ** i) for v in range(k)] for i in rows]
    return exact_div(det_poly(M), moore_L(field, tuple(range(k)), k))


def _coefficient_of_X(V, k, s, q):
    """Coefficient of X^{q^s} in a polynomial in x_0..x_{k-1}, X = x_k."""
    target = q ** s
    terms = {}
    for exps, c in V.items():
        if exps[k] == target:
            terms[exps[:k]] = field_elem(V.field, c)
    return MPoly.from_dict(V.field, k, terms)


def field_elem(field, c):
    return field.elem(field.to_coeffs(c))


def _dickson_fundamental(field, k, s, via_product=False):
    if via_product:
        V = v_product(field, tuple(range(k)), k, k + 1)
    else:
        V = v_poly(field, tuple(range(k)), k, k + 1)
    coeff = _coefficient_of_X(V, k, s, field.q)
    return coeff if (k - s) % 2 == 0 else -coeff


@lru_cache(maxsize=1024)
def dickson(field: FieldParams, k: int, s: int, method: str = "det") -> MPoly:
    """Q_{k,s} in k variables, degree q^k - q^s.

    ``method`` is ``"det"`` (determinant quotient), ``"fundamental"``
    (coefficient of X^{q^s} in V(x_1..x_k, X)) or ``"product"`` (the same
    coefficient, with V expanded as a product of linear forms)."""
    if not 0 <= s < k:
        raise IndexOutOfRange(f"Q_{{{k},{s}}} needs 0 <= s < k")
    if method == "det":
        return _dickson_det(field, k, s)
    if method == "fundamental":
        return _dickson_fundamental(field, k, s)
    if method == "product":
        return _dickson_fundamental(field, k, s, via_product=True)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=4096)
def dickson_power(field: FieldParams, k: int, s: int, e: int) -> MPoly:
    if e == 0:
        return MPoly.one(field, k)
    if e == 1:
        return dickson(field, k, s)
    half = dickson_power(field, k, s, e // 2)
    out = half * half
    if e % 2:
        out = out * dickson(field, k, s)
    return out


def D(field: FieldParams, a: int, e: int = 1) -> MPoly:
    """D_a^e = Q_{a,a-1}^e in a variables."""
    return dickson_power(field, a, a - 1, e)


# -- the delta operator --------------------------------------------------------

def delta(a: int, b: int, f) -> RationalFn:
    """delta_{a;b}: functions of c variables -> functions of c+1 variables.

    Numerator: the a x a determinant with Moore rows q^0..q^{a-2} and last
    row x_j^{q^b} f(x_1,..,x_j^,..,x_{c+1}); denominator L_a.  The result is
    simplified by exact division when possible and left as a fraction
    otherwise."""
    f = RationalFn.lift(f)
    F = f.field
    c = f.nvars
    if not 1 <= a <= c + 1:
        raise SpecInvalid(f"delta_{{{a};{b}}} needs 1 <= a <= c+1 (c = {c})")
    if b < 0:
        raise SpecInvalid("b must be non-negative")
    n1 = c + 1
    qb = F.q ** b
    if a == 1:
        x = MPoly.var(F, n1, 0, qb - 1)
        return RationalFn(x * f.num.skip_var(0), f.den.skip_var(0))
    La = moore_L(F, tuple(range(a)), n1)
    if f.is_poly():
        fp = rf_as_poly(f)
        num = MPoly.zero(F, n1)
        for j in range(a):
            cols = tuple(t for t in range(a) if t != j)
            term = moore_L(F, cols, n1) * MPoly.var(F, n1, j, qb) * fp.skip_var(j)
            num = num - term if (a - 1 + j) % 2 else num + term
        return rf_simplify(RationalFn(num, La))
    terms = []
    used = set()
    for j in range(a):
        cols = tuple(t for t in range(a) if t != j)
        coef = moore_L(F, cols, n1) * MPoly.var(F, n1, j, qb)
        if (a - 1 + j) % 2:
            coef = -coef
        den_j = f.den.skip_var(j)
        used |= den_j.variables_used()
        terms.append(RationalFn(coef * f.num.skip_var(j), den_j))
    hint = moore_L(F, tuple(sorted(used)), n1) if used else None
    s = rf_sum(terms, common_den=hint)
    # the new denominator L_a usually cancels against the numerator
    try:
        return rf_simplify(RationalFn(exact_div(s.num, La), s.den))
    except NotDivisible:
        return rf_simplify(RationalFn(s.num, s.den * La))


def delta_pow(a: int, b: int, h: int, f) -> RationalFn:
    """h-fold application of delta_{a;b}."""
    out = RationalFn.lift(f)
    for _ in range(h):
        out = delta(a, b, out)
    return out


def _complement_map(Ibar, r, rprime, h):
    """Variable map for f(I-bar): f's first r variables go to I-bar, the
    remaining r'-r go to r+h, r+h+1, ..."""
    return list(Ibar[:r]) + [t + h for t in range(r, rprime)]


def _as_rational(f):
    return RationalFn.lift(f)


def delta_iter_closed(r: int, b: int, h: int, f) -> RationalFn:
    """sum over h-subsets I of [r+h] of f(I-bar) phi^b(I) / V(I-bar, I)."""
    f = _as_rational(f)
    F = f.field
    rprime = f.nvars
    if rprime < r:
        raise ArityViolation(f"f has {rprime} < r = {r} variables")
    N = rprime + h
    qb = F.q ** b
    terms = []
    for I in combinations(range(r + h), h):
        Ibar = [t for t in range(r + h) if t not in I]
        mp = _complement_map(Ibar, r, rprime, h)
        fI = f.map_poly(lambda p: p.remap(mp, N))
        frob = MPoly.monomial(F, N, [qb if t in I else 0 for t in range(N)])
        V = v_set(F, Ibar, I, N)
        terms.append(RationalFn(fI.num * frob, fI.den * V))
    common = moore_L(F, tuple(range(r + h)), N) if f.is_poly() else None
    return rf_simplify(rf_sum(terms, common_den=common))


# -- the V-product expansion ---------------------------------------------------

@dataclass(frozen=True)
class ExpansionTerm:
    T: tuple            # weak composition (t_0, ..., t_s) of h
    beta: MPoly         # in x_1..x_s
    alpha: MPoly        # in y_1..y_h

    @property
    def h(self):
        return sum(self.T)


def weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _multiset_permutations(items):
    items = sorted(items)
    if not items:
        yield ()
        return
    seen = set()
    for i, x in enumerate(items):
        if x in seen:
            continue
        seen.add(x)
        for rest in _multiset_permutations(items[:i] + items[i + 1:]):
            yield (x,) + rest


def monomial_symmetric(field, exponents) -> MPoly:
    """Sum of all distinct monomials y^sigma(exponents)."""
    h = len(exponents)
    return MPoly.from_dict(field, h, {perm: 1 for perm in _multiset_permutations(exponents)})


def beta_sign(T) -> int:
    s = len(T) - 1
    return -1 if sum(t * (s - i) for i, t in enumerate(T)) % 2 else 1


def expand_v_product(field: FieldParams, s: int, h: int):
    """Terms (T, beta_T, alpha_T) with prod_j V(x_1..x_s, y_j) = sum beta_T alpha_T."""
    q = field.q
    out = []
    for T in weak_compositions(h, s + 1):
        beta = MPoly.one(field, s)
        for i in range(s):
            if T[i]:
                beta = beta * dickson_power(field, s, i, T[i])
        if beta_sign(T) < 0:
            beta = -beta
        exps = []
        for i, t in enumerate(T):
            exps += [q ** i] * t
        alpha = monomial_symmetric(field, exps) if h else MPoly.one(field, 0)
        out.append(ExpansionTerm(tuple(T), beta, alpha))
    return out


def v_product_direct(field: FieldParams, s: int, h: int) -> MPoly:
    """prod_j V(x_1..x_s, y_j) in s + h variables (x first, then y)."""
    N = s + h
    out = MPoly.one(field, N)
    for j in range(h):
        out = out * v_poly(field, tuple(range(s)), s + j, N)
    return out


def v_product_from_terms(field: FieldParams, s: int, terms) -> MPoly:
    h = terms[0].h if terms else 0
    N = s + h
    out = MPoly.zero(field, N)
    for t in terms:
        out = out + t.beta.extend(N) * t.alpha.shift(s, N)
    return out


# -- A_{r;T} and the weighted shuffle -------------------------------------------

def a_rt(r: int, term: ExpansionTerm, g) -> RationalFn:
    """A_{r;T}(g) = sum over h-subsets I of [r+h] of g(I-bar) alpha_T(I) / V(I-bar, I)."""
    g = _as_rational(g)
    F = g.field
    h = term.h
    rprime = g.nvars
    if rprime < r:
        raise ArityViolation(f"g has {rprime} < r = {r} variables")
    N = rprime + h
    if h == 0:
        return g
    terms = []
    for I in combinations(range(r + h), h):
        Ibar = [t for t in range(r + h) if t not in I]
        mp = _complement_map(Ibar, r, rprime, h)
        gI = g.map_poly(lambda p: p.remap(mp, N))
        aI = term.alpha.remap(list(I), N)
        terms.append(RationalFn(gI.num * aI, gI.den * v_set(F, Ibar, I, N)))
    common = moore_L(F, tuple(range(r + h)), N) if g.is_poly() else None
    return rf_simplify(rf_sum(terms, common_den=common))


def _is_symmetric(f: MPoly) -> bool:
    d = f.to_dict()
    return all(d.get(tuple(sorted(e, reverse=True)), 0) == c
               and all(d.get(perm) == c for perm in _multiset_permutations(e))
               for e, c in d.items())


def shuffle(f: MPoly, g: MPoly, check_symmetry: bool = False) -> RationalFn:
    """Weighted shuffle f . g = sum over splittings I + J = [r+h] of f(I) g(J) / V(I, J)."""
    r, h = f.nvars, g.nvars
    if check_symmetry and not (_is_symmetric(f) and _is_symmetric(g)):
        raise SymmetryViolation("shuffle arguments must be symmetric")
    F = f.field
    N = r + h
    terms = []
    for I in combinations(range(N), r):
        J = [t for t in range(N) if t not in I]
        num = f.remap(list(I), N) * g.remap(J, N)
        terms.append(RationalFn(num, v_set(F, I, J, N)))
    return rf_simplify(rf_sum(terms, common_den=moore_L(F, tuple(range(N)), N) if N else None))


def composite_delta_check(r: int, s: int, k: int, h: int, f, g, b: int):
    """Compare delta_{r+1}^h(g * delta_{s+1}^k(f)) with
    sum_T A_{r;T}(g) * delta_{s+1}^{h+k}(beta_T f).  Returns (equal, witness)."""
    f, g = _as_rational(f), _as_rational(g)
    F = f.field
    if r > s + k:
        raise ArityViolation(f"need r <= s + k, got r={r}, s={s}, k={k}")
    if g.nvars < r or f.nvars < s:
        raise ArityViolation("f or g has too few variables")
    inner = delta_pow(s + 1, b, k, f)
    width = max(inner.nvars, g.nvars)
    g_ext = g.map_poly(lambda p: p.extend(width))
    inner = inner.map_poly(lambda p: p.extend(width))
    lhs = delta_pow(r + 1, b, h, g_ext * inner)
    parts = []
    for term in expand_v_product(F, s, h):
        A = a_rt(r, term, g)
        beta = term.beta.extend(max(s, f.nvars))
        right = delta_pow(s + 1, b, h + k, f.map_poly(lambda p: p.extend(beta.nvars)) * beta)
        N = max(A.nvars, right.nvars, lhs.nvars)
        parts.append(A.map_poly(lambda p: p.extend(N)) * right.map_poly(lambda p: p.extend(N)))
    rhs = rf_simplify(rf_sum(parts))
    N = max(lhs.nvars, rhs.nvars)
    lhs = lhs.map_poly(lambda p: p.extend(N))
    rhs = rhs.map_poly(lambda p: p.extend(N))
    ok = lhs == rhs
    witness = None if ok else {"lhs": repr(lhs), "rhs": repr(rhs)}
    return ok, witness


# -- Schur functions (7th variation) ---------------------------------------------

def _pad(lam, s):
    lam = tuple(lam)
    if len(lam) > s:
        raise ValueError(f"partition {lam} has more than {s} parts")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not a partition")
    return lam + (0,) * (s - len(lam))


@lru_cache(maxsize=1024)
def schur_s(field: FieldParams, lam: tuple, s: int) -> MPoly:
    """det(x_i^{q^{lam_j + s - j}}) / det(x_i^{q^{s-j}}) in s variables."""
    lam = _pad(lam, s)
    if s == 0:
        return MPoly.one(field, 0)
    q = field.q
    num = det_poly([[MPoly.var(field, s, i, q ** (lam[j] + s - 1 - j)) for j in range(s)]
                    for i in range(s)])
    den = det_poly([[MPoly.var(field, s, i, q ** (s - 1 - j)) for j in range(s)]
                    for i in range(s)])
    return exact_div(num, den)


def schur_inductive(field: FieldParams, lam: tuple, s: int) -> MPoly:
    """S_lam = delta_{s; lam_1 + s - 1}(S_{lam_2..lam_s})."""
    lam = _pad(lam, s)
    if s == 0:
        return MPoly.one(field, 0)
    inner = schur_inductive(field, lam[1:], s - 1)
    return rf_as_poly(delta(s, lam[0] + s - 1, inner))


# -- Y_b(I;J) and Phi ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class YIndex:
    """Label (b; I; J) of Y_b(I;J).  Orders canonically by (k, I, J)."""
    k: int
    I: tuple
    J: tuple
    b: int

    @classmethod
    def make(cls, b, I, J):
        I, J = tuple(I), tuple(J)
        if len(I) != len(J) or not I:
            raise ValueError(f"I and J must be non-empty of equal length: {I}, {J}")
        if any(x < 0 for x in I + J):
            raise ValueError("indices must be non-negative")
        return cls(len(I), I, J, b)

    @property
    def nvars(self):
        return self.k + sum(self.I)

    def to_json(self):
        return {"b": self.b, "I": list(self.I), "J": list(self.J)}

    @classmethod
    def from_json(cls, d):
        return cls.make(d["b"], d["I"], d["J"])

    def __str__(self):
        return f"Y_{self.b}({','.join(map(str, self.I))};{','.join(map(str, self.J))})"


def phi(idx: YIndex) -> YIndex:
    """(b, I, J) -> (b+1, (0,)+I, (0,)+J)."""
    return YIndex.make(idx.b + 1, (0,) + idx.I, (0,) + idx.J)


@lru_cache(maxsize=None)
def _y_tail(field: FieldParams, b: int, s: int, I: tuple, J: tuple) -> RationalFn:
    """delta_{s;b}^{i_s}(D_s^{j_s} delta_{s+1;b}^{i_{s+1}}(...)), s 1-based,
    with I, J the tails starting at block s.  Lives in s - 1 + len(I) + sum(I)
    variables."""
    if len(I) == 1:
        inner = RationalFn(D(field, s, J[0]))
    else:
        tail = _y_tail(field, b, s + 1, I[1:], J[1:])
        Ds = D(field, s, J[0]).extend(tail.nvars)
        inner = RationalFn(Ds * tail.num, tail.den) if J[0] else tail
    return delta_pow(s, b, I[0], inner)


def capital_y(field: FieldParams, b: int, I, J) -> MPoly:
    """Evaluate Y_b(I;J) in k + sum(I) variables (untruncated)."""
    I, J = tuple(I), tuple(J)
    if len(I) != len(J) or not I:
        raise ValueError("I and J must be non-empty of equal length")
    val = _y_tail(field, b, 1, I, J)
    try:
        return rf_as_poly(val)
    except NotPolynomial as exc:
        raise NotPolynomial(f"Y_{b}({I};{J}) did not simplify to a polynomial") from exc


def evaluate_y(field: FieldParams, idx: YIndex) -> MPoly:
    return capital_y(field, idx.b, idx.I, idx.J)


def clear_caches():
    for fn in (moore_L, v_poly, dickson, dickson_power, schur_s, _y_tail):
        fn.cache_clear()
