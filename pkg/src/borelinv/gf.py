"""Finite fields F_q, q = p^e.

Elements are stored internally as integers in [0, q): the coefficient
vector (c_0, ..., c_{e-1}) of c_0 + c_1 x + ... + c_{e-1} x^{e-1} is packed
as c_0 + c_1 p + ... + c_{e-1} p^{e-1}.  The polynomial and linear algebra
layers work on these integers directly; :class:`FqElem` is the public
value type wrapping one of them together with its field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

DEFAULT_MAX_Q = 2 ** 16


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- polynomials over Z_p as little-endian coefficient lists ----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m over Z_p."""
    a = _trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _monic_polys(p, deg):
    """Monic polynomials of the given degree, ordered lexicographically on
    (c_{deg-1}, ..., c_0)."""
    for high_first in product(range(p), repeat=deg):
        yield list(reversed(high_first)) + [1]


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _zp_mod(poly, g, p):
                return False
    return True


class FieldParams:
    """The field F_q.  Construct through :func:`field_new` so that instances
    are shared and compare cheaply."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self.zero = 0
        self.one = 1
        if e == 1:
            self._exp = self._log = None
        else:
            self._build_tables()
        self._prim = None

    # identity / hashing ------------------------------------------------
    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldParams) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"

    def __reduce__(self):
        return (field_new, (self.p, self.e))

    # packing -----------------------------------------------------------
    def to_coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.e or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficient vector {coeffs} for {self}")
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def _slow_mul(self, a, b):
        pa, pb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        r = _zp_mod(prod, list(self.modulus), self.p)
        return self.from_coeffs(r + [0] * (self.e - len(r)))

    def _build_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - a finite field always has a generator
            raise FieldError("no primitive element found")
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    # arithmetic on packed ints -------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_coeffs([(x + y) % self.p for x, y in
                                 zip(self.to_coeffs(a), self.to_coeffs(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coeffs([(-x) % self.p for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in {self}")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        if self.e == 1:
            return pow(a, k, self.p)
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def primitive(self) -> int:
        """Smallest packed element of multiplicative order q - 1."""
        if self._prim is None:
            for a in range(1, self.q):
                if self.mult_order(a) == self.q - 1:
                    self._prim = a
                    break
        return self._prim

    def elem(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (list, tuple)):
            return FqElem(self, self.from_coeffs(value))
        return FqElem(self, self.from_int(value))

    def fmt(self, a: int) -> str:
        """Text form of a packed element: an integer for prime fields, a
        polynomial in the generator ``g`` otherwise."""
        if self.e == 1:
            return str(a)
        parts = []
        for i, c in reversed(list(enumerate(self.to_coeffs(a)))):
            if c == 0:
                continue
            mon = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mon:
                parts.append(str(c))
            else:
                parts.append(mon if c == 1 else f"{c}{mon}")
        return "+".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _field_cached(p, e):
    if e == 1:
        modulus = (0, 1)
    else:
        for poly in _monic_polys(p, e):
            if is_irreducible(poly, p):
                modulus = tuple(poly)
                break
    return FieldParams(p, e, modulus)


def field_new(p: int, e: int = 1, max_q: int = DEFAULT_MAX_Q) -> FieldParams:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if p ** e > max_q:
        raise FieldTooLarge(f"q = {p}^{e} exceeds the bound {max_q}")
    return _field_cached(p, e)


def parse_field(text: str, max_q: int = DEFAULT_MAX_Q) -> FieldParams:
    """Parse ``"p^e"``, ``"p"`` or a bare prime power such as ``"4"``."""
    text = str(text).strip()
    try:
        if "^" in text:
            p, e = text.split("^", 1)
            return field_new(int(p), int(e), max_q)
        q = int(text)
    except ValueError:
        raise FieldError(f"cannot parse field {text!r}") from None
    p = next((d for d in range(2, q + 1) if q % d == 0), q)
    e, r = 0, q
    while p > 1 and r % p == 0:
        r //= p
        e += 1
    if r != 1 or q < 2:
        raise NotPrime(f"{q} is not a prime power")
    return field_new(p, e, max_q)


@dataclass(frozen=True)
class FqElem:
    field: FieldParams
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.to_coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __pow__(self, k: int):
        return FqElem(self.field, self.field.pow(self.value, k))

    def inv(self) -> "FqElem":
        return FqElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return self.field.fmt(self.value)


def arith(a: FqElem, b: FqElem, op: str) -> FqElem:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def inv(a: FqElem) -> FqElem:
    return a.inv()


def power(a: FqElem, k: int) -> FqElem:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    return a ** k


def primitive_element(field: FieldParams) -> FqElem:
    return FqElem(field, field.primitive())
