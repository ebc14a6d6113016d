"""Truncated evaluation of nested q-multisums.

Every sum side in scope has the shape

    sum over s_1 >= s_2 >= ... >= s_K >= 0 of
        prod_i t^(quad_i*s_i^2 + lin_i*s_i) * extra_i(s_i)
        * prod_gaps 1/(t^d; t^d)_{s_i - s_{i+1}}
        * prod_gaps (t^(b*s_i) + t^(-b*s_{i+1}))      [binomial rows only]

i.e. the summand couples adjacent variables only.  That makes the truncated
sum computable by one pass of dynamic programming from the innermost variable
outwards, instead of enumerating tuples: the quadratic own-exponents make the
series for large values vanish below the truncation order, so the recursion
self-prunes.
"""

from __future__ import annotations

from .errors import InsufficientDepth
from .series import QSeries, monomial, zero
from .qfunctions import SM, inv_poch_finite

# Extra working precision (t-units): binomial branches t^(-b*u) temporarily
# lower the provable precision; the quadratic exponents win it back, and this
# pad absorbs the transient.  The final assertion in multisum() guards it.
_PAD = 48


def var_bound(pervar, tprec, hard_cap=None) -> int:
    """Smallest V so that any tuple containing a value >= V only contributes
    at or above tprec.  pervar entries are (quad, lin_min) with lin_min the
    most negative linear coefficient the variable can see (binomial branches
    included)."""
    relief = 0
    minima = []
    for quad, lin in pervar:
        m = min((quad * v * v + lin * v) for v in range(0, 64))
        minima.append(m)
        relief += min(0, m)
    v = 0
    while True:
        ok = all(quad * v * v + lin * v + (relief - minima[i]) >= tprec
                 for i, (quad, lin) in enumerate(pervar))
        if ok:
            break
        v += 1
        if hard_cap is not None and v > hard_cap:
            raise InsufficientDepth(
                f"need summation values up to {v} but only {hard_cap} available")
    return v


def multisum(pervar, gaps, tprec, vmax=None, _pad=_PAD) -> QSeries:
    """Evaluate the nested sum described in the module docstring.

    pervar: per variable (outermost first) a tuple (quad, lin, extra) with
        exponents in t-units and ``extra`` either None or a callable
        v -> QSeries (returning None to drop that value entirely).
    gaps: per adjacent pair a tuple (den_step, binom_step) where den_step is
        the t-step of the difference Pochhammer 1/(.)_{s_i - s_{i+1}}, and
        binom_step is None or the b of a factor (t^(b*s_i) + t^(-b*s_{i+1})).
    """
    K = len(pervar)
    assert len(gaps) == K - 1
    wp = tprec + _pad

    bound_data = []
    for i, (quad, lin, _) in enumerate(pervar):
        drop = gaps[i - 1][1] if i >= 1 and gaps[i - 1][1] else 0
        bound_data.append((quad, lin - drop))
    if vmax is None:
        vmax = var_bound(bound_data, tprec)

    def own(i, v):
        quad, lin, extra = pervar[i]
        s = monomial(1, quad * v * v + lin * v)
        if extra is not None:
            f = extra(v)
            if f is None:
                return None
            s = s * f
        return s.truncate(wp)

    layer = {}
    for v in range(vmax + 1):
        s = own(K - 1, v)
        if s is not None and not s.is_zero():
            layer[v] = s
    for i in range(K - 2, -1, -1):
        den_step, binom_step = gaps[i]
        nxt = {}
        for v in range(vmax + 1):
            o = own(i, v)
            if o is None or o.is_zero():
                continue
            total = None
            for u in range(v + 1):
                cu = layer.get(u)
                if cu is None:
                    continue
                t = cu * inv_poch_finite(SM(1, den_step), den_step, v - u, wp)
                if binom_step is not None:
                    t = t * QSeries([(binom_step * v, 1), (-binom_step * u, 1)])
                total = t if total is None else total + t
            if total is None:
                continue
            s = (o * total).truncate(wp)
            if not s.is_zero():
                nxt[v] = s
        layer = nxt

    out = zero(wp)
    for s in layer.values():
        out = out + s
    if out.prec < tprec:
        # rare: the binomial-branch transient ate the whole pad; widen it
        if _pad > 16 * _PAD:
            raise AssertionError(
                f"multisum precision collapsed to {out.prec} < {tprec}")
        return multisum(pervar, gaps, tprec, vmax=vmax, _pad=4 * _pad)
    return out.truncate(tprec)
