"""q-Pochhammer symbols, Gaussian binomials and the Jacobi triple product.

Everything is exact over the integers on the t = q^(1/2) exponent grid from
:mod:`qident.series`.  Pochhammer arguments are signed monomials +-q^(e/2):
that is the only argument form any specialization in scope requires, and it
keeps all divisions inside the unit group of the series ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import DegenerateTheta, Divergent, NegativeIndex, OutOfRange
from .series import INF, ONE, QSeries, monomial, one

_MONO_RE = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?:(?P<one>1)|q(?:\^(?:\(\s*(?P<num>\d+)\s*/\s*2\s*\)"
    r"|(?P<int>\d+)))?)\s*$")


@dataclass(frozen=True)
class SignedMonomial:
    """The monomial sign * q^(e/2) with sign in {+1, -1}; e is the t-exponent."""

    sign: int
    e: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __mul__(self, other: "SignedMonomial") -> "SignedMonomial":
        return SignedMonomial(self.sign * other.sign, self.e + other.e)

    def __pow__(self, n: int) -> "SignedMonomial":
        return SignedMonomial(self.sign if n % 2 else 1, self.e * n)

    def inverse(self) -> "SignedMonomial":
        return SignedMonomial(self.sign, -self.e)

    def times_qpow(self, k: int) -> "SignedMonomial":
        """Multiply by q^k (k in whole q-powers, i.e. t-exponent 2k)."""
        return SignedMonomial(self.sign, self.e + 2 * k)

    def negate(self) -> "SignedMonomial":
        return SignedMonomial(-self.sign, self.e)

    def as_series(self, prec=INF) -> QSeries:
        return monomial(self.sign, self.e, prec)

    def text(self) -> str:
        s = "-" if self.sign < 0 else ""
        if self.e == 0:
            return s + "1"
        if self.e == 2:
            return s + "q"
        if self.e % 2 == 0:
            return f"{s}q^{self.e // 2}"
        return f"{s}q^({self.e}/2)"

    @staticmethod
    def parse(text: str) -> "SignedMonomial":
        m = _MONO_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse monomial {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("one"):
            return SignedMonomial(sign, 0)
        if m.group("num") is not None:
            return SignedMonomial(sign, int(m.group("num")))
        if m.group("int") is not None:
            return SignedMonomial(sign, 2 * int(m.group("int")))
        return SignedMonomial(sign, 2)  # bare q


SM = SignedMonomial
Q = SM(1, 2)
ONE_M = SM(1, 0)
NEG_ONE = SM(-1, 0)


@lru_cache(maxsize=None)
def poch_finite(x: SM, base: int, n: int, prec=INF) -> QSeries:
    """(x; q^(base/2))_n = prod_{i<n} (1 - sign * t^(e + i*base)), truncated."""
    if n < 0:
        raise NegativeIndex("negative Pochhammer index is out of scope")
    out = one(prec)
    for i in range(n):
        out = out * QSeries([(0, 1), (x.e + i * base, -x.sign)], INF)
    return out


@lru_cache(maxsize=None)
def poch_infinite(x: SM, base: int, prec) -> QSeries:
    """(x; q^(base/2))_inf truncated at prec; factors beyond prec are 1."""
    if base <= 0:
        raise Divergent("infinite product needs a positive base step")
    if prec == INF:
        raise Divergent("infinite product needs a finite truncation order")
    prec = int(prec)
    if x.e < 0:
        raise Divergent("argument valuation must be non-negative")
    out = one(prec)
    i = 0
    while x.e + i * base < prec:
        out = out * QSeries([(0, 1), (x.e + i * base, -x.sign)], INF)
        if out.is_zero():
            break
        i += 1
    return out


@lru_cache(maxsize=None)
def inv_poch_finite(x: SM, base: int, n: int, prec) -> QSeries:
    """1 / (x; q^(base/2))_n truncated at prec (the product must be a unit)."""
    return poch_finite(x, base, n).invert(prec)


@lru_cache(maxsize=None)
def qbinom(n: int, m: int, base: int = 2, prec=INF) -> QSeries:
    """Gaussian binomial [n choose m] in the variable q^(base/2)."""
    if not 0 <= m <= n:
        raise OutOfRange(f"qbinom needs 0 <= m <= n, got ({n}, {m})")
    if m == 0 or m == n:
        return one(prec)
    # q-Pascal: [n,m] = [n-1,m-1] + Q^m [n-1,m]
    out = qbinom(n - 1, m - 1, base) + qbinom(n - 1, m, base).shift(base * m)
    return out.truncate(prec)


def triple_product(M: int, A: int, prec) -> QSeries:
    """(q^(A/2), q^((M-A)/2), q^(M/2); q^(M/2))_inf, truncated at prec.

    Requires 0 < A < M on the t-grid.  A = 0 (mod M) makes a (1; .)_inf factor
    vanish; that case is flagged rather than silently returned.
    """
    if M <= 0:
        raise OutOfRange("modulus must be positive")
    if A % M == 0:
        raise DegenerateTheta(f"A = {A} vanishes mod M = {M}")
    if not 0 < A < M:
        raise OutOfRange(f"need 0 < A < M, got A={A}, M={M}")
    return (poch_infinite(SM(1, A), M, prec)
            * poch_infinite(SM(1, M - A), M, prec)
            * poch_infinite(SM(1, M), M, prec))


def theta_sum(M: int, A: int, prec) -> QSeries:
    """Bilateral theta sum: sum over all integers l of (-1)^l t^(M*l(l-1)/2 + A*l).

    Equals triple_product(M, A, prec) by the Jacobi triple product identity
    (tested, never assumed).  The summation range includes every l whose term
    exponent is below prec, with a two-term safety margin on each side.
    """
    if M <= 0:
        raise OutOfRange("modulus must be positive")
    terms = {}

    def expo(l):
        return M * l * (l - 1) // 2 + A * l

    for direction in (1, -1):
        l = 0 if direction == 1 else -1
        margin = 0
        while True:
            e = expo(l)
            if e < prec:
                margin = 0
                terms[e] = terms.get(e, 0) + (1 if l % 2 == 0 else -1)
            else:
                margin += 1
                if margin > 2 and abs(l) > (abs(A) + M) // M + 2:
                    break
            l += direction
    return QSeries(terms, prec)


def euler_inverse(prec) -> QSeries:
    """1 / (q; q)_inf: the partition generating function, truncated."""
    return poch_infinite(Q, 2, prec).invert(prec)
