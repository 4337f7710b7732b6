"""Sparse multivariate polynomials and rational functions over F_q.

Variables are indexed from 0 in code and printed as x1, x2, ...

A monomial is packed into one Python int::

    key = deg << (W*n) | e_0 << (W*(n-1)) | ... | e_{n-1}

so that integer order is graded lexicographic order with x1 > x2 > ... and
monomial multiplication is integer addition.  Exponent fields are W bits
wide; since every exponent is bounded by the total degree, checking the
degree of a product against 2**W guards every field at once.
"""

from __future__ import annotations

import heapq
from itertools import combinations
from math import comb

from .gf import FieldMismatch, FieldParams, FqElem

W = 20
MASK = (1 << W) - 1
MAX_DEG = MASK


class PolyError(ValueError):
    pass


class ArityMismatch(PolyError):
    pass


class NotInjective(PolyError):
    pass


class NotSquare(PolyError):
    pass


class ZeroPolynomial(PolyError):
    pass


class NotHomogeneous(PolyError):
    pass


class ExponentOverflow(PolyError):
    pass


class NotPolynomial(PolyError):
    pass


class NotDivisible(PolyError):
    """Raised by :func:`exact_div`.  ``remainder`` is computed on access."""

    def __init__(self, f, g):
        super().__init__("divisor does not divide dividend")
        self.dividend = f
        self.divisor = g
        self._remainder = None

    @property
    def remainder(self):
        if self._remainder is None:
            self._remainder = divmod_poly(self.dividend, self.divisor)[1]
        return self._remainder


# -- packed monomial helpers -------------------------------------------------

def pack(exps) -> int:
    n = len(exps)
    key = 0
    deg = 0
    for e in exps:
        if e < 0:
            raise PolyError(f"negative exponent in {exps}")
        deg += e
        key = (key << W) | e
    if deg > MAX_DEG:
        raise ExponentOverflow(f"degree {deg} exceeds {MAX_DEG}")
    return (deg << (W * n)) | key


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (W * (n - 1 - i))) & MASK for i in range(n))


def key_degree(key: int, n: int) -> int:
    return key >> (W * n)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


class MPoly:
    """Immutable sparse polynomial.  ``terms`` maps packed monomials to
    nonzero packed field elements."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: FieldParams, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = terms if terms is not None else {}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field, nvars, c=1):
        c = _coerce_scalar(field, c)
        return cls(field, nvars, {pack((0,) * nvars): c} if c else {})

    @classmethod
    def one(cls, field, nvars):
        return cls.const(field, nvars, 1)

    @classmethod
    def var(cls, field, nvars, i, power=1):
        if not 0 <= i < nvars:
            raise ArityMismatch(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = power
        return cls(field, nvars, {pack(exps): 1})

    @classmethod
    def monomial(cls, field, nvars, exps, c=1):
        if len(exps) != nvars:
            raise ArityMismatch(f"monomial {exps} has wrong length for {nvars} variables")
        c = _coerce_scalar(field, c)
        return cls(field, nvars, {pack(tuple(exps)): c} if c else {})

    @classmethod
    def from_dict(cls, field, nvars, d):
        """Build from ``{exponent tuple: coefficient}``; coefficients may be
        ints (reduced into the prime field) or :class:`FqElem`."""
        terms = {}
        for exps, c in d.items():
            if len(exps) != nvars:
                raise ArityMismatch(f"monomial {exps} has wrong length for {nvars} variables")
            c = _coerce_scalar(field, c)
            k = pack(tuple(exps))
            c = field.add(terms.get(k, 0), c)
            if c:
                terms[k] = c
            else:
                terms.pop(k, None)
        return cls(field, nvars, terms)

    # basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Pairs (exponent tuple, packed coefficient), graded-lex descending."""
        n = self.nvars
        for k in sorted(self.terms, reverse=True):
            yield unpack(k, n), self.terms[k]

    def to_dict(self):
        n = self.nvars
        return {unpack(k, n): c for k, c in self.terms.items()}

    def coeff(self, exps) -> int:
        return self.terms.get(pack(tuple(exps)), 0)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return key_degree(max(self.terms), self.nvars)

    def degrees(self) -> set:
        n = self.nvars
        return {key_degree(k, n) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise NotHomogeneous(f"polynomial has degrees {sorted(degs)}")
        return degs.pop()

    def is_constant(self):
        return all(key_degree(k, self.nvars) == 0 for k in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(0, 0)

    def max_exponents(self):
        out = [0] * self.nvars
        for exps, _ in self.items():
            for i, e in enumerate(exps):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def variables_used(self):
        return {i for i, e in enumerate(self.max_exponents()) if e}

    # equality / hashing --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return (self.field == other.field and self.nvars == other.nvars
                    and self.terms == other.terms)
        if isinstance(other, (int, FqElem)):
            return self.terms == MPoly.const(self.field, self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, MPoly):
            raise TypeError(f"expected MPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, (int, FqElem)):
            return MPoly.const(self.field, self.nvars, other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res = dict(a)
        if F.e == 1:
            p = F.p
            for k, c in b.items():
                v = (res.get(k, 0) + c) % p
                if v:
                    res[k] = v
                else:
                    res.pop(k, None)
        else:
            for k, c in b.items():
                v = F.add(res.get(k, 0), c)
                if v:
                    res[k] = v
                else:
                    res.pop(k, None)
        return MPoly(F, self.nvars, res)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MPoly(F, self.nvars, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "MPoly":
        F = self.field
        c = _coerce_scalar(F, c)
        if c == 0:
            return MPoly(F, self.nvars, {})
        if c == 1:
            return self
        return MPoly(F, self.nvars, {k: F.mul(v, c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FqElem)):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        F = self.field
        n = self.nvars
        if not a or not b:
            return MPoly(F, n, {})
        if key_degree(max(a), n) + key_degree(max(b), n) > MAX_DEG:
            raise ExponentOverflow("product degree exceeds the packed exponent width")
        if len(a) < len(b):
            a, b = b, a
        res = {}
        get = res.get
        if F.e == 1:
            bi = list(b.items())
            for ka, ca in a.items():
                for kb, cb in bi:
                    k = ka + kb
                    res[k] = get(k, 0) + ca * cb
            p = F.p
            res = {k: v % p for k, v in res.items() if v % p}
        else:
            add, mul = F.add, F.mul
            for ka, ca in a.items():
                for kb, cb in b.items():
                    k = ka + kb
                    res[k] = add(get(k, 0), mul(ca, cb))
            res = {k: v for k, v in res.items() if v}
        return MPoly(F, n, res)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.one(self.field, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # structural maps ----------------------------------------------------
    def _map_monomials(self, fn, nvars):
        F = self.field
        res = {}
        for exps, c in self.items():
            k = pack(fn(exps))
            v = F.add(res.get(k, 0), c)
            if v:
                res[k] = v
            else:
                res.pop(k, None)
        return MPoly(F, nvars, res)

    def extend(self, nvars: int) -> "MPoly":
        """View as a polynomial in ``nvars >= self.nvars`` variables (new
        variables appended at the end)."""
        if nvars == self.nvars:
            return self
        if nvars < self.nvars:
            used = self.variables_used()
            if any(i >= nvars for i in used):
                raise ArityMismatch(f"cannot drop variables in use: {sorted(used)}")
            return self._map_monomials(lambda e: e[:nvars], nvars)
        pad = (0,) * (nvars - self.nvars)
        return self._map_monomials(lambda e: e + pad, nvars)

    def remap(self, mapping, nvars: int) -> "MPoly":
        """x_i -> x_{mapping[i]}; mapping must be injective into range(nvars)."""
        mapping = list(mapping)
        if len(mapping) != self.nvars:
            raise ArityMismatch(f"mapping has {len(mapping)} entries for {self.nvars} variables")
        if len(set(mapping)) != len(mapping):
            raise NotInjective(f"mapping {mapping} is not injective")
        if any(not 0 <= t < nvars for t in mapping):
            raise ArityMismatch(f"mapping {mapping} leaves range({nvars})")

        def fn(exps):
            out = [0] * nvars
            for i, e in enumerate(exps):
                out[mapping[i]] = e
            return out

        return self._map_monomials(fn, nvars)

    def skip_var(self, j: int) -> "MPoly":
        """f(x_0, .., x_{j-1}, x_{j+1}, ..): one more variable, x_j absent."""
        n = self.nvars
        return self._map_monomials(lambda e: e[:j] + (0,) + e[j:], n + 1)

    def shift(self, k: int, nvars: int | None = None) -> "MPoly":
        """x_i -> x_{i+k}."""
        nvars = self.nvars + k if nvars is None else nvars
        return self.remap([i + k for i in range(self.nvars)], nvars)

    def substitute_zero(self, i: int) -> "MPoly":
        """Set x_i = 0 (arity unchanged)."""
        n = self.nvars
        return MPoly(self.field, n, {k: c for k, c in self.terms.items()
                                     if unpack(k, n)[i] == 0})

    def drop_var(self, i: int) -> "MPoly":
        """Remove the variable x_i, which must not occur."""
        n = self.nvars
        if any(unpack(k, n)[i] for k in self.terms):
            raise ArityMismatch(f"x{i + 1} occurs")
        return self._map_monomials(lambda e: e[:i] + e[i + 1:], n - 1)

    def qth_power(self) -> "MPoly":
        """f^q, using c^q = c on F_q and the Frobenius identity."""
        q = self.field.q
        return self._map_monomials(lambda e: tuple(x * q for x in e), self.nvars)

    def truncate(self, cap: int) -> "MPoly":
        """Drop every term with some exponent >= cap."""
        n = self.nvars
        res = {}
        for k, c in self.terms.items():
            if all(e < cap for e in unpack(k, n)):
                res[k] = c
        if len(res) == len(self.terms):
            return self
        return MPoly(self.field, n, res)

    def homogeneous_part(self, d: int) -> "MPoly":
        n = self.nvars
        return MPoly(self.field, n, {k: c for k, c in self.terms.items()
                                     if key_degree(k, n) == d})

    def lowest_in_var(self, i: int):
        """(lowest exponent of x_i, the slice of terms with that exponent)."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial")
        n = self.nvars
        low = min(unpack(k, n)[i] for k in self.terms)
        sl = MPoly(self.field, n, {k: c for k, c in self.terms.items()
                                   if unpack(k, n)[i] == low})
        return low, sl

    # orders -------------------------------------------------------------
    def leading_monomial(self):
        """Graded-lex largest monomial."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return unpack(max(self.terms), self.nvars)

    def smallest_monomial(self):
        """Graded-lex smallest monomial."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no smallest monomial")
        return unpack(min(self.terms), self.nvars)

    # output -------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for exps, c in self.items():
            mon = "*".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                           for i, e in enumerate(exps) if e)
            cs = F.fmt(c)
            if F.e > 1 and ("+" in cs):
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MPoly({self.to_text()!r}, nvars={self.nvars}, {self.field!r})"

    def to_json(self):
        F = self.field
        return [{"exponents": list(exps), "coeff": F.to_coeffs(c)} for exps, c in self.items()]

    @classmethod
    def from_json(cls, field, nvars, data):
        return cls.from_dict(field, nvars, {tuple(t["exponents"]): field.from_coeffs(t["coeff"])
                                            for t in data})

    def __reduce__(self):
        return (_rebuild_poly, (self.field, self.nvars, self.terms))


def _rebuild_poly(field, nvars, terms):
    return MPoly(field, nvars, terms)


def _coerce_scalar(field, c) -> int:
    if isinstance(c, FqElem):
        if c.field != field:
            raise FieldMismatch(f"{c.field} vs {field}")
        return c.value
    return field.from_int(c)


def poly_from_text(field, nvars, text: str) -> MPoly:
    """Parse the canonical text form (prime fields only)."""
    text = text.strip()
    if text == "0":
        return MPoly.zero(field, nvars)
    terms = {}
    for part in text.split(" + "):
        coeff = 1
        exps = [0] * nvars
        for factor in part.split("*"):
            factor = factor.strip()
            if factor.startswith("x"):
                if "^" in factor:
                    v, e = factor[1:].split("^")
                else:
                    v, e = factor[1:], 1
                exps[int(v) - 1] += int(e)
            else:
                coeff *= int(factor)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return MPoly.from_dict(field, nvars, terms)


# -- operations named in the module contract ---------------------------------

def ring_ops(f: MPoly, g: MPoly, op: str) -> MPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def scalar_mul(c, f: MPoly) -> MPoly:
    return f.scale(c)


def remap_vars(f: MPoly, mapping, nvars: int) -> MPoly:
    return f.remap(mapping, nvars)


def truncate(f: MPoly, cap: int) -> MPoly:
    return f.truncate(cap)


def leading_monomial(f: MPoly):
    return f.smallest_monomial()


def apply_matrix(f: MPoly, sigma, cap: int | None = None) -> MPoly:
    """sigma f = f(sigma x_1, ..., sigma x_n) with sigma x_j = sum_i sigma[i][j] x_i.

    ``sigma`` is a :class:`~borelinv.groups.MatrixFq` or a square nested
    sequence of packed field elements.  With ``cap`` the result is truncated
    to exponents < cap, and so is every intermediate product (truncation is
    a ring homomorphism)."""
    rows = getattr(sigma, "rows", sigma)
    n = f.nvars
    F = f.field
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ArityMismatch(f"matrix of size {len(rows)} for {n} variables")
    forms = []
    for j in range(n):
        terms = {}
        for i in range(n):
            c = rows[i][j]
            if c:
                e = [0] * n
                e[i] = 1
                terms[pack(e)] = c
        forms.append(MPoly(F, n, terms))
    powers = [{0: MPoly.one(F, n), 1: forms[j] if cap is None else forms[j].truncate(cap)}
              for j in range(n)]

    def power(j, e):
        cache = powers[j]
        if e not in cache:
            half = power(j, e // 2)
            r = half * half
            if e % 2:
                r = r * cache[1]
            cache[e] = r if cap is None else r.truncate(cap)
        return cache[e]

    acc = {}
    for exps, c in f.items():
        term = None
        for j, e in enumerate(exps):
            if e:
                pj = power(j, e)
                term = pj if term is None else term * pj
                if cap is not None:
                    term = term.truncate(cap)
                if not term:
                    break
        if term is None:
            term = MPoly.one(F, n)
        if not term:
            continue
        for k, v in term.terms.items():
            s = F.add(acc.get(k, 0), F.mul(v, c))
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
    return MPoly(F, n, acc)


# -- division ----------------------------------------------------------------

def _division(f: MPoly, g: MPoly, exact: bool):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(g)
    F = f.field
    n = f.nvars
    glead = max(g.terms)
    glead_exps = unpack(glead, n)
    ginv = F.inv(g.terms[glead])
    grest = [(k - glead, c) for k, c in g.terms.items() if k != glead]
    rem = dict(f.terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quo = {}
    out_rem = {}
    prime = F.e == 1
    p = F.p
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        if not _divides(glead_exps, unpack(k, n)):
            if exact:
                raise NotDivisible(f, g)
            out_rem[k] = c
            continue
        d = k - glead
        qc = (c * ginv) % p if prime else F.mul(c, ginv)
        quo[d] = qc
        for off, gc in grest:
            kk = k + off
            old = rem.get(kk)
            if prime:
                v = ((old or 0) - qc * gc) % p
            else:
                v = F.sub(old or 0, F.mul(qc, gc))
            if v:
                rem[kk] = v
                if old is None:
                    heapq.heappush(heap, -kk)
            elif old is not None:
                del rem[kk]
    return MPoly(F, n, quo), MPoly(F, n, out_rem)


def divmod_poly(f: MPoly, g: MPoly):
    """Graded-lex division by a single divisor: f = g*q + r, no term of r
    divisible by the leading monomial of g."""
    return _division(f, g, exact=False)


def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """h with f = g*h, else :class:`NotDivisible`."""
    return _division(f, g, exact=True)[0]


def divides(g: MPoly, f: MPoly) -> bool:
    try:
        exact_div(f, g)
    except NotDivisible:
        return False
    return True


# -- determinants ------------------------------------------------------------

def _laplace(M):
    k = len(M)
    field = M[0][0].field
    nvars = M[0][0].nvars
    memo = {}

    def minor(cols):
        # determinant of rows 0..len(cols)-1 restricted to ``cols``
        if cols in memo:
            return memo[cols]
        size = len(cols)
        if size == 0:
            return MPoly.one(field, nvars)
        row = M[size - 1]
        acc = MPoly.zero(field, nvars)
        for idx, c in enumerate(cols):
            entry = row[c]
            if not entry:
                continue
            sub = minor(cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            term = entry * sub
            if (size - 1 + idx) % 2:
                acc = acc - term
            else:
                acc = acc + term
        memo[cols] = acc
        return acc

    return minor(tuple(range(k)))


def _bareiss(M):
    A = [list(r) for r in M]
    k = len(A)
    field = A[0][0].field
    nvars = A[0][0].nvars
    sign = 1
    prev = MPoly.one(field, nvars)
    for i in range(k - 1):
        if not A[i][i]:
            for r in range(i + 1, k):
                if A[r][i]:
                    A[i], A[r] = A[r], A[i]
                    sign = -sign
                    break
            else:
                return MPoly.zero(field, nvars)
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                A[r][c] = exact_div(A[r][c] * A[i][i] - A[r][i] * A[i][c], prev)
        prev = A[i][i]
    d = A[k - 1][k - 1]
    return d if sign == 1 else -d


def det_poly(M, method: str = "auto") -> MPoly:
    """Determinant of a square matrix of MPoly.  Laplace expansion along the
    last row up to size 6, fraction-free elimination above."""
    k = len(M)
    if k == 0 or any(len(r) != k for r in M):
        raise NotSquare(f"matrix is not square ({k} rows)")
    if method == "auto":
        method = "laplace" if k <= 6 else "bareiss"
    if method == "laplace":
        return _laplace(M)
    if method == "bareiss":
        return _bareiss(M)
    raise ValueError(f"unknown determinant method {method!r}")


# -- rational functions ------------------------------------------------------

class RationalFn:
    """num/den, never gcd-reduced; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = MPoly.one(num.field, num.nvars)
        if not den:
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        if not num:
            den = MPoly.one(num.field, num.nvars)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def lift(cls, f) -> "RationalFn":
        return f if isinstance(f, RationalFn) else cls(f)

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def __bool__(self):
        return bool(self.num)

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, MPoly):
            return RationalFn(other)
        if isinstance(other, (int, FqElem)):
            return RationalFn(MPoly.const(self.field, self.nvars, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return rf_sum([self, other])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return rf_sum([self, -other])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den and self.den.is_constant():
            return RationalFn(self.num * other.num * _inv_const(self.den), self.den)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        if self.num.field != other.num.field or self.nvars != other.nvars:
            return False
        # rescale onto the larger denominator when one divides the other
        for a, b in ((self, other), (other, self)):
            try:
                cof = exact_div(b.den, a.den)
            except NotDivisible:
                continue
            return a.num * cof == b.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def map_poly(self, fn) -> "RationalFn":
        """Apply a ring map (remap/skip/shift) to numerator and denominator."""
        return RationalFn(fn(self.num), fn(self.den))

    def __repr__(self):
        if self.is_poly():
            return f"RationalFn({self.as_poly().to_text()!r})"
        return f"RationalFn(({self.num.to_text()}) / ({self.den.to_text()}))"

    def simplify(self) -> "RationalFn":
        return rf_simplify(self)

    def as_poly(self) -> MPoly:
        return rf_as_poly(self)


def _inv_const(c: MPoly) -> int:
    return c.field.inv(c.constant_value())


def rf_sum(terms, common_den: MPoly | None = None) -> RationalFn:
    """Sum of rational functions.

    Denominators are combined without gcds: a term whose denominator divides
    the running denominator is rescaled onto it, and vice versa; otherwise
    the product is used.  ``common_den`` may name a known common multiple
    of all denominators (for example a Moore determinant over every variable
    that occurs); it is tried first."""
    terms = [RationalFn.lift(t) for t in terms]
    if not terms:
        raise ValueError("empty sum")
    if common_den is not None:
        num = MPoly.zero(common_den.field, common_den.nvars)
        ok = True
        for t in terms:
            if not t:
                continue
            try:
                cof = exact_div(common_den, t.den)
            except NotDivisible:
                ok = False
                break
            num = num + t.num * cof
        if ok:
            return RationalFn(num, common_den)
    num, den = terms[0].num, terms[0].den
    for t in terms[1:]:
        if not t:
            continue
        if not num:
            num, den = t.num, t.den
            continue
        if t.den == den:
            num = num + t.num
            continue
        try:
            cof = exact_div(den, t.den)
            num = num + t.num * cof
            continue
        except NotDivisible:
            pass
        try:
            cof = exact_div(t.den, den)
            num = num * cof + t.num
            den = t.den
            continue
        except NotDivisible:
            pass
        num = num * t.den + t.num * den
        den = den * t.den
    return RationalFn(num, den)


def rf_ops(a: RationalFn, b: RationalFn, op: str) -> RationalFn:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def rf_simplify(a: RationalFn) -> RationalFn:
    if a.den.is_constant():
        if a.den.constant_value() == 1:
            return a
        return RationalFn(a.num * _inv_const(a.den))
    try:
        return RationalFn(exact_div(a.num, a.den))
    except NotDivisible:
        return a


def rf_as_poly(a: RationalFn) -> MPoly:
    s = rf_simplify(a)
    if not s.den.is_constant():
        raise NotPolynomial("denominator does not divide numerator")
    return s.num


def rf_equal(a, b) -> bool:
    return RationalFn.lift(a) == RationalFn.lift(b)


def subsets(n: int, k: int):
    """k-subsets of range(n) in lex order."""
    return combinations(range(n), k)


def binomial_mod(n: int, k: int, p: int) -> int:
    return comb(n, k) % p
