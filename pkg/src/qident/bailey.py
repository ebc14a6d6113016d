"""Bailey pairs and the transform engine.

A Bailey pair relative to a parameter monomial a is a pair of series
sequences (alpha_n, beta_n) tied together by

    beta_n = sum_{l=0..n} alpha_l / ((q)_{n-l} (aq)_{n+l}).

The engine carries finite prefixes of both sequences, applies the
specialized lemmas (Bailey lemma with one or both upper parameters sent to
infinity, the lattice step that trades a for a/q, the two key lemmas, the
a -> aq lemma and its b = 0 case, and the combined "star" steps), and checks
the defining relation numerically after every move rather than trusting any
closed form.  It also evaluates the three multisum consequences of the
lattice two-sidedly (the classical single-lattice one and the two
double-lattice variants, with or without boundary parameters).

Precision arguments here are t-exponent truncation orders (t = q^(1/2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (DegenerateDivision, InsufficientDepth, NotStabilized,
                     ParameterOutOfRange, PoleAtParameter, UnsupportedBoundary)
from .qfunctions import (ONE_M, Q, SM, inv_poch_finite, poch_finite,
                         poch_infinite)
from .series import INF, ONE, QSeries, monomial, one, zero
from .sumeval import multisum, var_bound

# Boundary marker for check_coro3 parameters sent to infinity.
INFINITY = "infinity"


def _unit_check(s: QSeries, what: str) -> QSeries:
    lead = s.coeffs.get(min(s.coeffs)) if s.coeffs else 0
    if lead not in (1, -1):
        raise DegenerateDivision(f"{what} is not a unit (leading term {lead})")
    return s


def _one_minus(m: SM) -> QSeries:
    """1 - m as an exact series (may collapse to 0 or 2 when m = +-1)."""
    return QSeries({0: 1}) + QSeries({m.e: -m.sign})


def _a_pow(a: SM, n: int) -> QSeries:
    p = a ** n if n >= 0 else a.inverse() ** (-n)
    return p.as_series()


def _geom(m: SM, count: int) -> QSeries:
    """1 + m + ... + m^(count-1) as an exact series (0 for count = 0)."""
    out = zero(INF)
    for i in range(count):
        out = out + (m ** i).as_series()
    return out


@dataclass(frozen=True)
class BaileyPair:
    """Finite prefix (0..n_max) of a Bailey pair relative to ``a``."""

    a: SM
    n_max: int
    alpha: tuple
    beta: tuple
    prec: int

    def __post_init__(self):
        if len(self.alpha) != self.n_max + 1 or len(self.beta) != self.n_max + 1:
            raise ValueError("alpha/beta must have length n_max + 1")

    def with_beta(self, beta) -> "BaileyPair":
        return BaileyPair(self.a, self.n_max, self.alpha, tuple(beta), self.prec)


@dataclass(frozen=True)
class TransformStep:
    """One application of a named lemma; rho/b only for the parametrized ones."""

    tag: str
    rho: Optional[SM] = None
    b: Optional[SM] = None

    def __post_init__(self):
        if self.tag not in _TRANSFORM_TAGS:
            raise ValueError(f"unknown transform tag {self.tag!r}")
        if self.tag == "BL_RHO" and self.rho is None:
            raise ValueError("BL_RHO needs rho")
        if self.tag == "LOVEJOY" and self.b is None:
            raise ValueError("LOVEJOY needs b")


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    first_bad_n: Optional[int] = None


# -- seed pairs ---------------------------------------------------------------


def _check_parameter(a: SM):
    # (aq)_m must stay a unit for the defining relation to make sense.
    if a.sign == 1 and a.e + 2 <= 0:
        raise PoleAtParameter(f"(aq)_n vanishes for a = {a.text()}")


def unit_pair(a: SM, n_max: int, prec: int) -> BaileyPair:
    """The seed with beta_n = delta_{n,0}; alpha_0 = 1 is the a = 1 limit value."""
    _check_parameter(a)
    alpha = [one(prec)]
    for n in range(1, n_max + 1):
        # (-1)^n q^C(n,2) (1 - a q^{2n}) (aq)_{n-1} / (q)_n   [(1-a) cancelled]
        s = monomial((-1) ** n, n * (n - 1))
        s = s * QSeries([(0, 1), (a.e + 4 * n, -a.sign)])
        s = s * poch_finite(a.times_qpow(1), 2, n - 1)
        s = s * inv_poch_finite(Q, 2, n, prec)
        alpha.append(s.truncate(prec))
    beta = [one(prec)] + [zero(prec)] * n_max
    return BaileyPair(a, n_max, tuple(alpha), tuple(beta), prec)


def pair_dprime4(a: SM, n_max: int, prec: int) -> BaileyPair:
    """Seed with beta_n = 1/(q^2;q^2)_n and alpha on the q^2 grid."""
    _check_parameter(a)
    a2q2 = SM(1, 2 * a.e + 4)
    alpha = [one(prec)]
    for n in range(1, n_max + 1):
        s = monomial((-1) ** n, 2 * n * n)
        s = s * QSeries([(0, 1), (a.e + 4 * n, -a.sign)])  # 1 - a q^{2n}
        s = s * QSeries([(0, 1), (a.e, a.sign)])           # 1 + a
        s = s * poch_finite(a2q2, 4, n - 1)                # (a^2 q^2; q^2)_{n-1}
        s = s * inv_poch_finite(SM(1, 4), 4, n, prec)
        alpha.append(s.truncate(prec))
    beta = [inv_poch_finite(SM(1, 4), 4, n, prec) for n in range(n_max + 1)]
    return BaileyPair(a, n_max, tuple(alpha), tuple(beta), prec)


def pair_dprime1(a: SM, n_max: int, prec: int) -> BaileyPair:
    """Seed with beta_n = q^n/(q^2;q^2)_n."""
    _check_parameter(a)
    a2q2 = SM(1, 2 * a.e + 4)
    alpha = [one(prec)]
    for n in range(1, n_max + 1):
        s = monomial((-1) ** n, 2 * n * n - 2 * n)
        s = s * QSeries([(0, 1), (2 * a.e + 8 * n, -1)])   # 1 - a^2 q^{4n}
        s = s * poch_finite(a2q2, 4, n - 1)
        s = s * inv_poch_finite(SM(1, 4), 4, n, prec)
        alpha.append(s.truncate(prec))
    beta = [inv_poch_finite(SM(1, 4), 4, n, prec).shift(2 * n)
            for n in range(n_max + 1)]
    return BaileyPair(a, n_max, tuple(alpha), tuple(beta), prec)


SEEDS = {"unit": unit_pair, "dprime4": pair_dprime4, "dprime1": pair_dprime1}


# -- the defining relation ------------------------------------------------------


def verify(p: BaileyPair, prec: Optional[int] = None) -> VerifyResult:
    """Check beta_n = sum_l alpha_l/((q)_{n-l}(aq)_{n+l}) for every n <= n_max."""
    tp = p.prec if prec is None else min(prec, p.prec)
    aq = p.a.times_qpow(1)
    for n in range(p.n_max + 1):
        acc = zero(tp)
        for l in range(n + 1):
            term = (p.alpha[l]
                    * inv_poch_finite(Q, 2, n - l, tp)
                    * inv_poch_finite(aq, 2, n + l, tp))
            acc = acc + term
        same, _ = acc.equal_up_to(p.beta[n], min(acc.prec, p.beta[n].prec, tp))
        if not same:
            return VerifyResult(False, n)
    return VerifyResult(True, None)


# -- single transforms ----------------------------------------------------------


def _bl(p: BaileyPair) -> BaileyPair:
    a, tp = p.a, p.prec
    alpha = tuple((_a_pow(a, n) * p.alpha[n]).shift(2 * n * n).truncate(tp)
                  for n in range(p.n_max + 1))
    beta = []
    for n in range(p.n_max + 1):
        acc = zero(tp)
        for l in range(n + 1):
            t = (_a_pow(a, l) * p.beta[l]).shift(2 * l * l)
            acc = acc + t * inv_poch_finite(Q, 2, n - l, tp)
        beta.append(acc.truncate(tp))
    return BaileyPair(a, p.n_max, alpha, tuple(beta), tp)


def _bl_rho(p: BaileyPair, rho: SM) -> BaileyPair:
    a, tp = p.a, p.prec
    w = SM(a.sign * rho.sign, a.e + 2 - rho.e)  # aq/rho
    alpha, beta = [], []
    for n in range(p.n_max + 1):
        inv_wn = _unit_check(poch_finite(w, 2, n), "(aq/rho)_n").invert(tp)
        num = (monomial((-1) ** n, n * (n - 1))
               * poch_finite(rho, 2, n) * (w ** n).as_series())
        alpha.append((num * inv_wn * p.alpha[n]).truncate(tp))
        acc = zero(tp)
        for l in range(n + 1):
            t = (monomial((-1) ** l, l * (l - 1))
                 * poch_finite(rho, 2, l) * (w ** l).as_series())
            acc = acc + t * p.beta[l] * inv_poch_finite(Q, 2, n - l, tp)
        beta.append((acc * inv_wn).truncate(tp))
    return BaileyPair(a, p.n_max, tuple(alpha), tuple(beta), tp)


def _key_shared(p: BaileyPair, key2: bool) -> BaileyPair:
    """Key lemmas 1 and 2: new pair relative a/q, beta (almost) unchanged."""
    a, tp = p.a, p.prec
    if a == ONE_M:
        raise DegenerateDivision("key lemmas need a != 1 (1 - a vanishes)")
    one_minus_a = _one_minus(a)
    alpha = [p.alpha[0]]
    for n in range(1, p.n_max + 1):
        d1 = _unit_check(_one_minus(a.times_qpow(2 * n)), "1-aq^2n").invert(tp)
        d2 = _unit_check(_one_minus(a.times_qpow(2 * n - 2)),
                         "1-aq^(2n-2)").invert(tp)
        if key2:
            t = p.alpha[n].shift(2 * n) * d1 - p.alpha[n - 1].shift(2 * n - 2) * d2
        else:
            t = (p.alpha[n] * d1
                 - p.alpha[n - 1] * a.as_series().shift(4 * n - 4) * d2)
        alpha.append((one_minus_a * t).truncate(tp))
    if key2:
        beta = tuple(p.beta[n].shift(2 * n).truncate(tp)
                     for n in range(p.n_max + 1))
    else:
        beta = p.beta
    return BaileyPair(SM(a.sign, a.e - 2), p.n_max, tuple(alpha), beta, tp)


def _lattice(p: BaileyPair) -> BaileyPair:
    """Lattice step with both upper parameters at infinity: a -> a/q."""
    a, tp = p.a, p.prec
    if a == ONE_M:
        raise DegenerateDivision("lattice step needs a != 1")
    one_minus_a = _one_minus(a)
    alpha = [p.alpha[0]]
    for n in range(1, p.n_max + 1):
        d1 = _unit_check(_one_minus(a.times_qpow(2 * n)), "1-aq^2n").invert(tp)
        d2 = _unit_check(_one_minus(a.times_qpow(2 * n - 2)),
                         "1-aq^(2n-2)").invert(tp)
        t = (p.alpha[n] * d1
             - p.alpha[n - 1] * a.as_series().shift(4 * n - 4) * d2)
        alpha.append((_a_pow(a, n).shift(2 * n * n - 2 * n) * one_minus_a * t)
                     .truncate(tp))
    beta = []
    for n in range(p.n_max + 1):
        acc = zero(tp)
        for l in range(n + 1):
            t = (_a_pow(a, l) * p.beta[l]).shift(2 * l * l - 2 * l)
            acc = acc + t * inv_poch_finite(Q, 2, n - l, tp)
        beta.append(acc.truncate(tp))
    return BaileyPair(SM(a.sign, a.e - 2), p.n_max, tuple(alpha), tuple(beta), tp)


def _lovejoy_b0(p: BaileyPair) -> BaileyPair:
    """Lovejoy's lemma with b = 0: a -> aq, beta unchanged."""
    a, tp = p.a, p.prec
    inv_1maq = _unit_check(_one_minus(a.times_qpow(1)), "1-aq").invert(tp)
    ainv = a.inverse()
    alpha = []
    partial = zero(INF)  # sum_{l<=n} a^-l q^-l^2 alpha_l
    for n in range(p.n_max + 1):
        partial = partial + (_a_pow(ainv, n) * p.alpha[n]).shift(-2 * n * n)
        s = _one_minus(a.times_qpow(2 * n + 1)) * _a_pow(a, n).shift(2 * n * n)
        alpha.append((s * inv_1maq * partial).truncate(tp))
    return BaileyPair(SM(a.sign, a.e + 2), p.n_max, tuple(alpha), p.beta, tp)


def _lovejoy(p: BaileyPair, b: SM) -> BaileyPair:
    """Lovejoy's full lemma: a -> aq."""
    a, tp = p.a, p.prec
    w = SM(a.sign * b.sign, a.e + 2 - b.e)  # aq/b
    neg_b = b.negate()
    inv_1maq = _unit_check(_one_minus(a.times_qpow(1)), "1-aq").invert(tp)
    one_minus_b = _one_minus(b)
    alpha, beta = [], []
    partial = zero(INF)
    for n in range(p.n_max + 1):
        t = (poch_finite(b, 2, n)
             * _unit_check(poch_finite(w, 2, n), "(aq/b)_l").invert(tp)
             * ((neg_b.inverse()) ** n).as_series()).shift(-n * (n - 1))
        partial = partial + t * p.alpha[n]
        s = (_one_minus(a.times_qpow(2 * n + 1))
             * poch_finite(w, 2, n)
             * (neg_b ** n).as_series()).shift(n * (n - 1))
        s = s * _unit_check(poch_finite(b.times_qpow(1), 2, n),
                            "(bq)_n").invert(tp)
        alpha.append((s * inv_1maq * partial).truncate(tp))
        if n == 0:
            beta.append(p.beta[0])
        else:
            d = _unit_check(_one_minus(b.times_qpow(n)), "1-bq^n").invert(tp)
            beta.append((one_minus_b * d * p.beta[n]).truncate(tp))
    return BaileyPair(SM(a.sign, a.e + 2), p.n_max, tuple(alpha), tuple(beta), tp)


def _star(p: BaileyPair) -> BaileyPair:
    """Combined step (same a): alpha gains (1+q^2n) plus a partial-sum tail."""
    a, tp = p.a, p.prec
    one_minus_ainv = _one_minus(a.inverse())
    alpha = []
    partial = zero(INF)  # sum_{l<n} alpha_l
    for n in range(p.n_max + 1):
        s = QSeries([(0, 1), (4 * n, 1)]) * p.alpha[n]
        if n >= 1:
            s = s + _one_minus(a.times_qpow(2 * n)) * one_minus_ainv * partial
        alpha.append((_a_pow(a, n) * s).shift(2 * n * n - 2 * n).truncate(tp))
        partial = partial + p.alpha[n]
    beta = []
    for n in range(p.n_max + 1):
        acc = zero(tp)
        for l in range(n + 1):
            t = (_a_pow(a, l) * p.beta[l]).shift(2 * l * l)
            t = t * QSeries([(2 * n, 1), (-2 * l, 1)])
            acc = acc + t * inv_poch_finite(Q, 2, n - l, tp)
        beta.append(acc.truncate(tp))
    return BaileyPair(a, p.n_max, tuple(alpha), tuple(beta), tp)


def _star1(p: BaileyPair) -> BaileyPair:
    """The a = 1 simplification of the star step."""
    if p.a != ONE_M:
        raise DegenerateDivision("STAR1 requires a pair relative to 1")
    tp = p.prec
    alpha = tuple((QSeries([(0, 1), (4 * n, 1)]) * p.alpha[n])
                  .shift(2 * n * n - 2 * n).truncate(tp)
                  for n in range(p.n_max + 1))
    beta = []
    for n in range(p.n_max + 1):
        acc = zero(tp)
        for l in range(n + 1):
            t = p.beta[l].shift(2 * l * l) * QSeries([(2 * n, 1), (-2 * l, 1)])
            acc = acc + t * inv_poch_finite(Q, 2, n - l, tp)
        beta.append(acc.truncate(tp))
    return BaileyPair(p.a, p.n_max, alpha, tuple(beta), tp)


_TRANSFORM_TAGS = ("BL_INF", "BL_RHO", "LATTICE_INF", "KEY1", "KEY2",
                   "LOVEJOY_B0", "LOVEJOY", "STAR", "STAR1")


def apply(step, p: BaileyPair) -> BaileyPair:
    """Apply one named transform; callers re-verify if they care."""
    if isinstance(step, str):
        step = TransformStep(step)
    if step.tag == "BL_INF":
        return _bl(p)
    if step.tag == "BL_RHO":
        return _bl_rho(p, step.rho)
    if step.tag == "LATTICE_INF":
        return _lattice(p)
    if step.tag == "KEY1":
        return _key_shared(p, key2=False)
    if step.tag == "KEY2":
        return _key_shared(p, key2=True)
    if step.tag == "LOVEJOY_B0":
        return _lovejoy_b0(p)
    if step.tag == "LOVEJOY":
        return _lovejoy(p, step.b)
    if step.tag == "STAR":
        return _star(p)
    return _star1(p)


def run_chain(seed: BaileyPair, steps, prec: Optional[int] = None):
    """Apply steps in order, verifying the defining relation after each.

    Returns (final_pair, log); log rows are (tag, parameter_after,
    VerifyResult).  Raises AssertionError on the first failing verification.
    """
    tp = seed.prec if prec is None else min(prec, seed.prec)
    p = seed
    log = []
    for step in steps:
        if isinstance(step, str):
            step = TransformStep(step)
        p = apply(step, p)
        res = verify(p, tp)
        log.append((step.tag, p.a.text(), res))
        if not res.ok:
            raise AssertionError(
                f"defining relation fails after {step.tag} at n = {res.first_bad_n}")
    return p, log


def commute_check(p: BaileyPair, prec: Optional[int] = None) -> bool:
    """Order independence of BL_INF and STAR1 on a pair relative to 1:
    alpha agreement is syntactic, so the content is the beta comparison."""
    if p.a != ONE_M:
        raise DegenerateDivision("commute check applies to pairs relative to 1")
    tp = p.prec if prec is None else min(prec, p.prec)
    p1 = _star1(_bl(p))
    p2 = _bl(_star1(p))
    for n in range(p.n_max + 1):
        cmp_to = min(tp, p1.alpha[n].prec, p2.alpha[n].prec)
        if p1.alpha[n].equal_up_to(p2.alpha[n], cmp_to) != (True, None):
            return False
        cmp_to = min(tp, p1.beta[n].prec, p2.beta[n].prec)
        if p1.beta[n].equal_up_to(p2.beta[n], cmp_to) != (True, None):
            return False
    return True


def beta_limit(p: BaileyPair, prec: Optional[int] = None) -> QSeries:
    """The n -> infinity value of beta_n, cross-checked against the alpha sum.

    Requires beta_{n_max} and beta_{n_max-1} to agree below the requested
    order (NotStabilized otherwise).  The independent route is the limit of
    the defining relation: beta_inf = (sum_l alpha_l) / ((q)_inf (aq)_inf).
    """
    tp = p.prec if prec is None else min(prec, p.prec)
    if p.n_max < 1:
        raise NotStabilized("n_max too small to witness stabilization")
    last, prev = p.beta[p.n_max], p.beta[p.n_max - 1]
    same, e = last.equal_up_to(prev, min(tp, last.prec, prev.prec))
    if not same:
        raise NotStabilized(f"beta still moving at exponent {e}")
    total = zero(tp)
    for l in range(p.n_max + 1):
        total = total + p.alpha[l]
    den = poch_infinite(Q, 2, tp) * poch_infinite(p.a.times_qpow(1), 2, tp)
    direct = total * _unit_check(den, "(q)_inf (aq)_inf").invert(tp)
    stabilized = last.truncate(tp)
    same, e = direct.equal_up_to(stabilized,
                                 min(direct.prec, stabilized.prec, tp))
    if not same:
        raise NotStabilized(f"alpha-sum route disagrees at exponent {e}")
    return stabilized


# -- lattice consequences -------------------------------------------------------


def _beta_extra(p: BaileyPair):
    def extra(v):
        return p.beta[v] if v <= p.n_max else None
    return extra


def _tail_guard(terms, tp, n_max):
    """The last two assembled alpha-sum terms must vanish below tp."""
    if n_max < 2:
        raise InsufficientDepth("n_max too small for the alpha-side sum")
    for t in terms[-2:]:
        if not t.truncate(tp).is_zero():
            raise InsufficientDepth(
                "alpha sum not converged within n_max at this precision")


def check_corolattice(p: BaileyPair, k: int, r: int,
                      prec: Optional[int] = None):
    """Two-sided check of the classical single-lattice consequence.

    LHS: sum over s_1 >= ... >= s_{k+1} >= 0 of
         a^(s_1+...+s_{k+1}) q^(s_1^2+...+s_{k+1}^2 - s_1 - ... - s_{k-r})
         / prod (q)_{s_i - s_{i+1}} * beta_{s_{k+1}},
    RHS: 1/(aq)_inf * sum_l a^((k+1)l) q^((k+1)l^2 - (k-r)l)
         * (sum_{i<=k-r} (a q^(2l))^i) * alpha_l.
    Returns (equal, first_mismatch_exponent).
    """
    if k < 1 or not -1 <= r <= k:
        raise ParameterOutOfRange(f"need k >= 1 and -1 <= r <= k, got {k=} {r=}")
    if p.a.sign != 1:
        raise ParameterOutOfRange("only positive q-power parameters are in scope")
    tp = p.prec if prec is None else min(prec, p.prec)
    a = p.a
    K = k + 1
    pervar = [(2, a.e - (2 if i <= k - r else 0),
               _beta_extra(p) if i == K else None)
              for i in range(1, K + 1)]
    gaps = [(2, None)] * k
    bound = var_bound([(q2, l) for q2, l, _ in pervar], tp)
    if bound > p.n_max:
        raise InsufficientDepth(
            f"multisum needs s values up to {bound} but n_max = {p.n_max}")
    lhs = multisum(pervar, gaps, tp, vmax=bound)

    terms = []
    for l in range(p.n_max + 1):
        t = _a_pow(a, (k + 1) * l).shift(2 * (k + 1) * l * l - 2 * (k - r) * l)
        t = t * _geom(SM(a.sign, a.e + 4 * l), k - r + 1)
        terms.append((t * p.alpha[l]).truncate(tp))
    _tail_guard(terms, tp, p.n_max)
    rhs = zero(tp)
    for t in terms:
        rhs = rhs + t
    rhs = rhs * poch_infinite(a.times_qpow(1), 2, tp).invert(tp)
    return lhs.equal_up_to(rhs, min(lhs.prec, rhs.prec, tp))


def check_coro2(p: BaileyPair, k: int, r: int, j: int,
                prec: Optional[int] = None):
    """Two-sided check of the double-lattice consequence (no boundary factors).

    LHS as check_corolattice but with exponent
    -2 s_1 - ... - 2 s_j - s_{j+1} - ... - s_{k-r}; RHS carries the telescoped
    bracket sum_{i<=j}(aq^(2l-1))^i - a^(k+1-r) q^((2k+2-2r)l-j)
    sum_{i<=j}(aq^(2l+1))^i over 1 - a q^(2l).
    """
    if k < 1 or r < 0 or j < 0 or r + j > k:
        raise ParameterOutOfRange(f"need k>=1, r,j>=0, r+j<=k; got {k=} {r=} {j=}")
    a = p.a
    if a.sign != 1 or a.e == 0:
        raise DegenerateDivision(
            "the l = 0 term is 0/0 at a = 1; only positive powers of q are "
            "supported (the identity is exercised at a = q)")
    tp = p.prec if prec is None else min(prec, p.prec)
    K = k + 1
    pervar = [(2, a.e - (4 if i <= j else 0) - (2 if j < i <= k - r else 0),
               _beta_extra(p) if i == K else None)
              for i in range(1, K + 1)]
    gaps = [(2, None)] * k
    bound = var_bound([(q2, l) for q2, l, _ in pervar], tp)
    if bound > p.n_max:
        raise InsufficientDepth(
            f"multisum needs s values up to {bound} but n_max = {p.n_max}")
    lhs = multisum(pervar, gaps, tp, vmax=bound)

    terms = []
    for l in range(p.n_max + 1):
        x = SM(a.sign, a.e + 4 * l - 2)
        y = SM(a.sign, a.e + 4 * l + 2)
        shift = (a ** (k + 1 - r)).as_series().shift(
            2 * (2 * k + 2 - 2 * r) * l - 2 * j)
        bracket = _geom(x, j + 1) - shift * _geom(y, j + 1)
        t = _a_pow(a, (k + 1) * l).shift(
            2 * (k + 1) * l * l + 2 * (r - j - k) * l)
        t = t * _unit_check(_one_minus(SM(a.sign, a.e + 4 * l)),
                            "1-aq^2l").invert(tp)
        terms.append((t * bracket * p.alpha[l]).truncate(tp))
    _tail_guard(terms, tp, p.n_max)
    rhs = zero(tp)
    for t in terms:
        rhs = rhs + t
    rhs = rhs * poch_infinite(a.times_qpow(1), 2, tp).invert(tp)
    return lhs.equal_up_to(rhs, min(lhs.prec, rhs.prec, tp))


def _bfactor_divide(num: QSeries, d: QSeries, tp: int) -> QSeries:
    """Divide by a (b - aq^l)-style factor: a unit, or +-2 times a monomial
    when the two monomials collide (the collision term always carries a
    compensating even factor from (a/bq; q)_inf)."""
    if len(d.coeffs) == 2:
        return num * _unit_check(d, "b - aq^l").invert(tp)
    if len(d.coeffs) == 1:
        e, c = next(iter(d.coeffs.items()))
        if c in (1, -1):
            return num.shift(-e) * c
        return num.shift(-e).divexact_scalar(c)
    raise DegenerateDivision("b - aq^l vanished identically")


def check_coro3(p: BaileyPair, k: int, r: int, j: int, b, c,
                prec: Optional[int] = None):
    """Two-sided check of the boundary-parameter double-lattice consequence.

    b and c are SignedMonomial values or the module constant INFINITY.  An
    infinite parameter triggers the standard formal limits
    (x)_l / x^l -> (-1)^l q^(l(l-1)/2), (y/x)_m -> 1, and
    (1 - x q^l)/(x - a q^(l-1)) -> -q^l.
    """
    if k < 1 or not (0 <= r <= k) or not (0 <= j <= k) or r + j > k:
        raise ParameterOutOfRange(
            f"need k>=1, 0<=r,j<=k, r+j<=k; got {k=} {r=} {j=}")
    if b == INFINITY and c == INFINITY:
        raise UnsupportedBoundary("b and c cannot both be infinite")
    a = p.a
    if a.sign != 1 or a.e <= 0:
        raise DegenerateDivision(
            "supported parameters are positive powers of q (exercised at a = q)")
    tp = p.prec if prec is None else min(prec, p.prec)

    b_inf = b == INFINITY
    c_inf = c == INFINITY
    if not b_inf:
        if b.sign != -1:
            raise UnsupportedBoundary("finite b must be a negative monomial")
        w = SM(a.sign * b.sign, a.e - b.e - 2)  # a/(bq)
        if w.e < 0:
            raise UnsupportedBoundary(
                f"a/(bq) has negative exponent for b = {b.text()}")
    if not c_inf:
        aq_over_c = SM(a.sign * c.sign, a.e + 2 - c.e)
        if aq_over_c.e <= 0:
            raise UnsupportedBoundary(
                f"(aq/c) must have positive exponent, got c = {c.text()}")

    # ---- left side: s_1 carries the b-factors, s_k the 1/(aq/c) factor,
    # s_{k+1} the c-factors and beta; first and last quadratics are halved.
    K = k + 1

    def head_b(v):
        if b_inf:
            return monomial(1, v * (v - 1))
        return poch_finite(b, 2, v) * monomial((-b.sign) ** v, -b.e * v)

    def inv_aqc(v):
        return inv_poch_finite(aq_over_c, 2, v, tp)

    def tail_c(v):
        if v > p.n_max:
            return None
        s = p.beta[v]
        if c_inf:
            return monomial(1, v * (v - 1)) * s
        return poch_finite(c, 2, v) * monomial((-c.sign) ** v, -c.e * v) * s

    pervar = []
    for i in range(1, K + 1):
        lin = a.e - (4 if i <= j else 0) - (2 if j < i <= k - r else 0)
        if i == 1:
            quad, lin = 1, lin + 1
            if k == 1 and not c_inf:
                extra = (lambda v: head_b(v) * inv_aqc(v))
            else:
                extra = head_b
        elif i == K:
            quad, lin = 1, lin + 1
            extra = tail_c
        else:
            quad = 2
            extra = inv_aqc if (i == k and not c_inf) else None
        pervar.append((quad, lin, extra))
    gaps = [(2, None)] * k
    bdata = []
    for idx, (quad, lin, _) in enumerate(pervar):
        i = idx + 1
        if i == 1:
            if b_inf:
                quad, lin = quad + 1, lin - 1
            else:
                lin = lin - b.e
        if i == K:
            if c_inf:
                quad, lin = quad + 1, lin - 1
            else:
                lin = lin - c.e
        bdata.append((quad, lin))
    bound = var_bound(bdata, tp)
    if bound > p.n_max:
        raise InsufficientDepth(
            f"multisum needs s values up to {bound} but n_max = {p.n_max}")
    lhs = multisum(pervar, gaps, tp, vmax=bound)

    # ---- right side ----
    terms = []
    for l in range(p.n_max + 1):
        x = SM(a.sign, a.e + 4 * l - 2)    # a q^(2l-1)
        y = SM(a.sign, a.e + 4 * l + 2)    # a q^(2l+1)
        divisors = []
        if b_inf:
            bpart = monomial((-1) ** l, l * (l - 1))
            shift = (a ** (k + 1 - r)).as_series().shift(
                2 * (2 * k + 2 - 2 * r) * l - 2 * j)
            bracket = _geom(x, j + 1) - shift * _geom(y, j + 1)
        else:
            # (a/bq; q)_inf / (a/bq)_l folded into the term: ((a/bq) q^l)_inf.
            # Its even leading factor is what makes the l with b = -q^l
            # (scalar divisor -2) come out integral, so the division by
            # d1, d2 must happen after the full product is assembled.
            bpart = (poch_infinite(SM(w.sign, w.e + 2 * l), 2, tp)
                     * poch_finite(b, 2, l) * monomial(b.sign ** l, -b.e * l))
            aql_1 = SM(a.sign, a.e + 2 * l - 2)   # a q^(l-1)
            aql = SM(a.sign, a.e + 2 * l)         # a q^l
            d1 = QSeries({b.e: b.sign}) + QSeries({aql_1.e: -aql_1.sign})
            d2 = QSeries({b.e: b.sign}) + QSeries({aql.e: -aql.sign})
            divisors = [d1, d2]
            p1num = (b.as_series() * _geom(x, j + 1)
                     - aql_1.as_series() * _geom(x, j))
            p2num = (b.as_series() * _geom(y, j + 1)
                     - aql.as_series() * _geom(y, j))
            shift = (a ** (k + 1 - r)).as_series().shift(
                2 * (2 * k + 1 - 2 * r) * l - 2 * j)
            bracket = p1num * d2 + shift * _one_minus(b.times_qpow(l)) * p2num
        if c_inf:
            cpart = monomial((-1) ** l, l * (l - 1))
        else:
            cpart = (poch_finite(c, 2, l) * monomial(c.sign ** l, -c.e * l)
                     * inv_poch_finite(aq_over_c, 2, l, tp))
        t = _a_pow(a, (k + 1) * l).shift(2 * k * l * l + 2 * (r + 1 - j - k) * l)
        t = t * _unit_check(_one_minus(SM(a.sign, a.e + 4 * l)),
                            "1-aq^2l").invert(tp)
        term = t * bpart * cpart * bracket * p.alpha[l]
        for d in divisors:
            term = _bfactor_divide(term, d, tp)
        terms.append(term.truncate(tp))
    _tail_guard(terms, tp, p.n_max)
    rhs = zero(tp)
    for t in terms:
        rhs = rhs + t
    rhs = rhs * poch_infinite(a.times_qpow(1), 2, tp).invert(tp)
    return lhs.equal_up_to(rhs, min(lhs.prec, rhs.prec, tp))


def check_common2(p: BaileyPair, k: int, r: int, j: int,
                  prec: Optional[int] = None, subset=None):
    """Two-sided check of the star-chain limit identity for pairs relative q.

    LHS: sum over s_1 >= ... >= s_{k+1} >= 0 of
        q^(sum s^2 + s_{k-r+1} + ... + s_{k+1}) q^(-s_1)
        * prod_{i in subset, i>=2} (q^(s_{i-1}) + q^(-s_i))
        / ((q)_{s_1-s_2} ... (q)_{s_k-s_{k+1}}) * beta_{s_{k+1}},
    RHS: 1/(q)_inf * sum_l q^((k+1)l^2+(r-j+1)l) (1-q)/(1-q^(2l+1))
        * ((1+q^(2l))^j - (1+q^(2l+2))^j q^((k-r+1)(2l+1)-j)) * alpha_l.

    ``subset`` picks which j factors appear (default {1, ..., j}); element 1
    stands for the plain q^(-s_1) factor.
    """
    if p.a != Q:
        raise ParameterOutOfRange("this identity is stated for pairs relative q")
    if k < 1 or r < 0 or j < 0 or r + j > k:
        raise ParameterOutOfRange(f"need k>=1, r,j>=0, r+j<=k; got {k=} {r=} {j=}")
    T = frozenset(range(1, j + 1)) if subset is None else frozenset(subset)
    universe = {1} | set(range(2, k - r + 1))
    if len(T) != j or not T <= universe:
        raise ParameterOutOfRange(f"subset {sorted(T)} invalid for {k=} {r=} {j=}")
    tp = p.prec if prec is None else min(prec, p.prec)
    K = k + 1
    pervar = []
    for i in range(1, K + 1):
        lin = 2 if i > k - r else 0
        if i == 1 and 1 in T:
            lin -= 2
        pervar.append((2, lin, _beta_extra(p) if i == K else None))
    gaps = [(2, 2 if (g + 1) in T else None) for g in range(1, K)]
    bdata = [(q2, l - (2 if (idx + 1) in T and idx >= 1 else 0))
             for idx, (q2, l, _) in enumerate(pervar)]
    bound = var_bound(bdata, tp)
    if bound > p.n_max:
        raise InsufficientDepth(
            f"multisum needs s values up to {bound} but n_max = {p.n_max}")
    lhs = multisum(pervar, gaps, tp, vmax=bound)

    terms = []
    one_minus_q = _one_minus(Q)
    for l in range(p.n_max + 1):
        big = (QSeries([(0, 1), (4 * l, 1)]) ** j
               - (QSeries([(0, 1), (4 * l + 4, 1)]) ** j)
               .shift(2 * ((k - r + 1) * (2 * l + 1) - j)))
        t = monomial(1, 2 * (k + 1) * l * l + 2 * (r - j + 1) * l)
        t = t * one_minus_q * _unit_check(_one_minus(SM(1, 4 * l + 2)),
                                          "1-q^(2l+1)").invert(tp)
        terms.append((t * big * p.alpha[l]).truncate(tp))
    _tail_guard(terms, tp, p.n_max)
    rhs = zero(tp)
    for t in terms:
        rhs = rhs + t
    rhs = rhs * poch_infinite(Q, 2, tp).invert(tp)
    return lhs.equal_up_to(rhs, min(lhs.prec, rhs.prec, tp))


def closed_alpha_star_chain(seed: BaileyPair, k: int, r: int, j: int,
                            n: int, prec: Optional[int] = None) -> QSeries:
    """Closed form of alpha_n after the full star chain on a pair relative q:
    (1-q)(1+q^2n)^j q^((k+1)n^2+(r+1-j)n)
        (alpha_n/(1-q^(2n+1)) - q^(-2rn-1) alpha_{n-1}/(1-q^(2n-1)))."""
    if seed.a != Q:
        raise ParameterOutOfRange("closed form is for seeds relative to q")
    tp = seed.prec if prec is None else min(prec, seed.prec)
    t = seed.alpha[n] * _one_minus(SM(1, 4 * n + 2)).invert(tp)
    if n >= 1:
        t = t - (seed.alpha[n - 1].shift(-4 * r * n - 2)
                 * _one_minus(SM(1, 4 * n - 2)).invert(tp))
    out = _one_minus(Q) * (QSeries([(0, 1), (4 * n, 1)]) ** j) * t
    return out.shift(2 * (k + 1) * n * n + 2 * (r + 1 - j) * n).truncate(tp)


def star_chain(k: int, r: int, j: int):
    """Step list for the star route: BL x (r+1), KEY1, BL x (k-r-j), STAR1 x j."""
    if k < 1 or r < 0 or j < 0 or r + j > k:
        raise ParameterOutOfRange(f"invalid chain parameters {k=} {r=} {j=}")
    return (["BL_INF"] * (r + 1) + ["KEY1"] + ["BL_INF"] * (k - r - j)
            + ["STAR1"] * j)


def double_lattice_chain(k: int, r: int, j: int):
    """Step list for the double-lattice route; None when a step count would
    go negative (those corners are covered by the direct two-sided check)."""
    if j == 0:
        if k - r - 1 < 0:
            return None
        return ["BL_INF"] * (r + 1) + ["LATTICE_INF"] + ["BL_INF"] * (k - r - 1)
    if k - r - j - 1 < 0:
        return None
    return (["BL_INF"] * (r + 1) + ["LATTICE_INF"]
            + ["BL_INF"] * (k - r - j - 1) + ["LATTICE_INF"]
            + ["BL_INF"] * (j - 1))


def boundary_double_lattice_chain(k: int, r: int, j: int, b: SM, c: SM):
    """Step list for the boundary route (finite parameter at both ends);
    None outside j >= 2, r >= 1, r + j < k."""
    if j < 2 or r < 1 or k - r - j - 1 < 0:
        return None
    return ([TransformStep("BL_RHO", rho=b)] + ["BL_INF"] * r
            + ["LATTICE_INF"] + ["BL_INF"] * (k - r - j - 1)
            + ["LATTICE_INF"] + ["BL_INF"] * (j - 2)
            + [TransformStep("BL_RHO", rho=c)])
