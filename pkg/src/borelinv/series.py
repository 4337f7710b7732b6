"""Integer polynomials in t: (q,t)-multinomials, the conjectural Hilbert
series C_{alpha,m}(t) and C_{n,m}(t), the F_{n,m} recursion and flag counts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .basis import enumerate_basis, index_degree, q_int, summand_beta
from .mpoly import NotHomogeneous


class SeriesNotDivisible(ArithmeticError):
    pass


@dataclass(frozen=True)
class TSeries:
    """Dense coefficient tuple, lowest degree first, no trailing zeros."""
    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, d, c=1):
        return cls((0,) * d + (c,))

    @classmethod
    def from_dict(cls, d):
        if not d:
            return cls()
        top = max(d)
        return cls(tuple(d.get(i, 0) for i in range(top + 1)))

    def to_dict(self):
        return {i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __getitem__(self, d):
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TSeries(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TSeries(tuple(self[i] - other[i] for i in range(n)))

    def __mul__(self, other):
        if isinstance(other, int):
            return TSeries(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return TSeries()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return TSeries(tuple(out))

    def shift(self, d: int) -> "TSeries":
        """t^d * self."""
        return TSeries((0,) * d + self.coeffs)

    def dilate(self, k: int) -> "TSeries":
        """self(t^k)."""
        if not self.coeffs:
            return self
        out = [0] * (k * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return TSeries(tuple(out))

    def divmod(self, other: "TSeries"):
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero series")
        lead = other.coeffs[-1]
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        quo = [0] * max(dq + 1, 0)
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1]
            if c % lead:
                raise SeriesNotDivisible("non-integral quotient")
            c //= lead
            quo[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return TSeries(tuple(quo)), TSeries(tuple(rem))

    def exact_div(self, other: "TSeries") -> "TSeries":
        quo, rem = self.divmod(other)
        if rem.coeffs:
            raise SeriesNotDivisible(f"{self} is not divisible by {other}")
        return quo

    def at(self, t: int) -> int:
        return sum(c * t ** i for i, c in enumerate(self.coeffs))

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_text(self) -> str:
        out = ""
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(c)
            body = str(mag) if not mon else (mon if mag == 1 else f"{mag}*{mon}")
            if not out:
                out = body if c > 0 else "-" + body
            else:
                out += (" + " if c > 0 else " - ") + body
        return out or "0"

    def __str__(self):
        return self.to_text()

    def to_json(self):
        return list(self.coeffs)


def parse_series(text: str) -> TSeries:
    """Inverse of TSeries.to_text: "1 + t + 2*t^2"."""
    text = text.replace(" ", "").replace("-", "+-")
    out = {}
    for term in filter(None, text.split("+")):
        coef, _, mon = term.rpartition("*") if "*" in term else ("", "", term)
        if "t" not in mon:
            coef, mon = mon, ""
        c = int(coef) if coef not in ("", "-") else (-1 if coef == "-" else 1)
        if not mon:
            d = 0
        elif mon.startswith("-"):
            c, d = -c, (int(mon[3:]) if "^" in mon else 1)
        else:
            d = int(mon[2:]) if "^" in mon else 1
        out[d] = out.get(d, 0) + c
    return TSeries.from_dict(out)


def first_mismatch(a: TSeries, b: TSeries):
    """Lowest degree where the coefficients differ, or None."""
    for d in range(max(len(a.coeffs), len(b.coeffs))):
        if a[d] != b[d]:
            return d
    return None


def one_minus_t(d: int) -> TSeries:
    """1 - t^d."""
    if d == 0:
        return TSeries()
    return TSeries.one() - TSeries.monomial(d)


def _product(factors):
    out = TSeries.one()
    for f in factors:
        out = out * f
    return out


def qt_multinomial(k: int, alpha, q: int) -> TSeries:
    """[k; alpha]_{q,t} for a weak composition alpha of k."""
    alpha = tuple(alpha)
    if sum(alpha) != k or any(a < 0 for a in alpha):
        raise ValueError(f"{alpha} is not a weak composition of {k}")
    num = _product(one_minus_t(q ** k - q ** j) for j in range(k))
    den = []
    A = 0
    for a in alpha:
        A += a
        den += [one_minus_t(q ** A - q ** (A - j)) for j in range(1, a + 1)]
    out = num.exact_div(_product(den))
    if not out.is_nonnegative():
        raise SeriesNotDivisible(f"negative coefficients in [{k}; {alpha}]")
    return out


def qt_binomial(m: int, s: int, q: int) -> TSeries:
    """prod_{i<s} (1 - t^{q^m - q^i}) / (1 - t^{q^s - q^i})."""
    if not 0 <= s <= m:
        return TSeries()
    num = _product(one_minus_t(q ** m - q ** i) for i in range(s))
    den = _product(one_minus_t(q ** s - q ** i) for i in range(s))
    return num.exact_div(den)


def e_exponent(q: int, m: int, alpha, beta) -> int:
    B = 0
    total = 0
    for a, b in zip(alpha, beta):
        B += b
        total += (a - b) * (q ** m - q ** B)
    return total


def betas_below(alpha, m: int):
    """Weak compositions beta <= alpha with |beta| <= m."""
    for beta in product(*[range(a + 1) for a in alpha]):
        if sum(beta) <= m:
            yield beta


def c_alpha_m(q: int, m: int, alpha) -> TSeries:
    alpha = tuple(alpha)
    out = TSeries()
    for beta in betas_below(alpha, m):
        term = qt_multinomial(m, beta + (m - sum(beta),), q)
        out = out + term.shift(e_exponent(q, m, alpha, beta))
    return out


def c_alpha_m_abbreviated(q: int, m: int, alpha) -> TSeries:
    """Variant whose multinomial drops the final block m - |beta| from the
    denominator.  Used only to report whether the two readings differ."""
    alpha = tuple(alpha)
    out = TSeries()
    for beta in betas_below(alpha, m):
        num = _product(one_minus_t(q ** m - q ** j) for j in range(m))
        den = []
        A = 0
        for b in beta:
            A += b
            den += [one_minus_t(q ** A - q ** (A - j)) for j in range(1, b + 1)]
        try:
            term = num.exact_div(_product(den))
        except SeriesNotDivisible:
            return None
        out = out + term.shift(e_exponent(q, m, alpha, beta))
    return out


def lines_series(m: int, q: int) -> TSeries:
    """(1 - t^{q^m-1}) / (1 - t^{q-1}) = sum_{i < [m]_q} t^{i(q-1)}."""
    return TSeries.from_dict({i * (q - 1): 1 for i in range(q_int(m, q))})


def f_nm(n: int, m: int, q: int, mode: str = "recursive") -> TSeries:
    if mode == "direct":
        return c_alpha_m(q, m, (1,) * n) if n else TSeries.one()
    if mode != "recursive":
        raise ValueError(f"unknown mode {mode!r}")
    return _f_rec(n, m, q)


def _f_rec(n, m, q):
    if n == 0 or m == 0:
        return TSeries.one()
    ratio = one_minus_t(q ** m - 1).exact_div(one_minus_t(q - 1))
    return (_f_rec(n - 1, m, q).shift(q ** m - 1)
            + ratio * _f_rec(n - 1, m - 1, q).dilate(q))


def c_nm_gl(q: int, m: int, n: int) -> TSeries:
    out = TSeries()
    for s in range(min(m, n) + 1):
        out = out + qt_binomial(m, s, q).shift((n - s) * (q ** m - q ** s))
    return out


def display_n2(q: int, m: int) -> TSeries:
    """The four-term closed form of the Borel series for n = 2."""
    r1 = one_minus_t(q ** m - 1).exact_div(one_minus_t(q - 1))
    top = TSeries.monomial(2 * (q ** m - 1))
    last = (one_minus_t(q ** m - 1) * one_minus_t(q ** m - q)).exact_div(
        one_minus_t(q - 1) * one_minus_t(q ** 2 - q)) if m >= 2 else TSeries()
    return top + r1.shift(q ** m - 1) + r1.shift(q ** m - q) + last


def hilbert_of_family(polys) -> TSeries:
    counts = {}
    for f in polys:
        if not f:
            continue
        if not f.is_homogeneous():
            raise NotHomogeneous("family member is not homogeneous")
        d = f.homogeneous_degree()
        counts[d] = counts.get(d, 0) + 1
    return TSeries.from_dict(counts)


def hilbert_of_dims(dims) -> TSeries:
    """From {degree: dim} or {degree: object with .dim}."""
    return TSeries.from_dict({d: getattr(v, "dim", v) for d, v in dims.items()})


def hilbert_of_degrees(degrees) -> TSeries:
    counts = {}
    for d in degrees:
        counts[d] = counts.get(d, 0) + 1
    return TSeries.from_dict(counts)


def flag_count_by_beta(q: int, m: int, n: int) -> dict:
    out = {}
    for beta in betas_below((1,) * n, m):
        B = 0
        count = 1
        for b in beta:
            if b:
                count *= q_int(m - B, q)
            B += b
        out[beta] = count
    return out


def flag_count(q: int, m: int, n: int) -> int:
    return sum(flag_count_by_beta(q, m, n).values())


def summand_decomposition(q: int, m: int, n: int) -> dict:
    """beta -> (series of the basis elements assigned to beta, expected summand)."""
    parts = {}
    for idx in enumerate_basis(q, m, n, check=False):
        beta = summand_beta(idx, q, m)
        parts.setdefault(beta, []).append(index_degree(idx, q))
    out = {}
    alpha = (1,) * n
    for beta in betas_below(alpha, m):
        expected = qt_multinomial(m, beta + (m - sum(beta),), q).shift(
            e_exponent(q, m, alpha, beta))
        out[beta] = (hilbert_of_degrees(parts.pop(beta, [])), expected)
    for beta, degs in parts.items():
        out[beta] = (hilbert_of_degrees(degs), TSeries())
    return out


def summand_decomposition_check(q: int, m: int, n: int) -> bool:
    return all(a == b for a, b in summand_decomposition(q, m, n).values())
