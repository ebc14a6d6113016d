"""Combinatorial families, their enumerators, and generating-function checks.

The families live on two kinds of objects: frequency sequences with bounded
adjacent sums (the image side of the insertion map) and multipartitions with
per-partition lower bounds on the parts (the source side).  Enumeration is
exhaustive by weight, which is cheap at desk scale because frame weights grow
quadratically.  Generating functions obtained by enumeration are compared
against catalog sum sides and against independent product-side oracles.

Weight/precision arguments here are in whole q-powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidParameters, KindMismatch, NotAMember
from .identities import lhs_series
from .motion import canonical, in_A, weight
from .series import QSeries, zero


# -- enumeration of bounded frequency sequences -----------------------------------


def enum_freq(k: int, max_weight: int):
    """All frequency sequences with adjacent sums <= k and weight <= max_weight,
    in canonical (trailing-zero-trimmed) form, each exactly once."""
    if k < 1:
        raise InvalidParameters("k must be at least 1")
    out = []

    def rec(i, prev, wleft, acc):
        if i > 0 and wleft < i:
            out.append(canonical(acc))
            return
        for v in range(0, k - prev + 1):
            if i > 0 and i * v > wleft:
                break
            acc.append(v)
            rec(i + 1, v, wleft - i * v, acc)
            acc.pop()

    rec(0, 0, max_weight, [])
    return out


# -- membership predicates ----------------------------------------------------------


def _pad2(f):
    return list(f) + [0, 0]


def parity_condition(f, k: int, target: int) -> bool:
    """Whenever f_u + f_{u+1} = k, require u f_u + (u+1) f_{u+1} = target (mod 2)."""
    g = _pad2(f)
    for u in range(len(g) - 1):
        if g[u] + g[u + 1] == k:
            if (u * g[u] + (u + 1) * g[u + 1]) % 2 != target % 2:
                return False
    return True


def y_head_values(j: int, r: int):
    return sorted({l + max(l - (j - r), 0) for l in range(j + 1)})


def in_gordon(f, k: int, r: int) -> bool:
    g = _pad2(f)
    return in_A(f, k) and g[0] == 0 and g[1] <= k - r


def in_Y(f, j: int, r: int, k: int) -> bool:
    g = _pad2(f)
    return in_A(f, k) and g[0] in y_head_values(j, r)


def in_Z(f, j: int, r: int, k: int) -> bool:
    g = _pad2(f)
    return in_A(f, k) and g[0] <= j - max(g[0] + g[1] - (k - r), 0)


def in_Y_s(f, s: int, k: int) -> bool:
    g = _pad2(f)
    return in_A(f, k) and g[0] == s


def x_min_part(m: int, j: int, r: int, k: int) -> int:
    return max(m - j + max(m - (k - r), 0), 0)


def in_X(mp, j: int, r: int, k: int, parity: Optional[int] = None) -> bool:
    """Part bounds for the multipartition families; ``parity`` constrains the
    parts of the last partition mod 2 (None for the unprimed family)."""
    if len(mp) != k:
        return False
    for m in range(1, k + 1):
        lo = x_min_part(m, j, r, k)
        if any(part < lo for part in mp[m - 1]):
            return False
    if parity is not None:
        if any(part % 2 != parity % 2 for part in mp[k - 1]):
            return False
    return True


@dataclass(frozen=True)
class SetPredicate:
    """Tagged family; ``params`` meaning depends on the tag."""

    tag: str
    k: int
    r: int = 0
    j: int = 0
    s: int = 0

    def member(self, obj) -> bool:
        return membership(self, obj)


_FREQ_TAGS = ("A", "gordon", "Y", "Z", "Yp", "Zp", "Ypt", "Zpt",
              "Y_s", "Yp_s", "Ypt_s")
_MP_TAGS = ("X", "Xp", "Xpt")


def membership(pred: SetPredicate, obj) -> bool:
    """Exact predicate evaluation; KindMismatch for the wrong object kind."""
    tag, k, r, j, s = pred.tag, pred.k, pred.r, pred.j, pred.s
    if tag in _MP_TAGS:
        if not (isinstance(obj, tuple) and all(isinstance(x, tuple) for x in obj)):
            raise KindMismatch(f"{tag} needs a multipartition")
        if tag == "X":
            return in_X(obj, j, r, k)
        par = k + r - j + (1 if tag == "Xpt" else 0)
        return in_X(obj, j, r, k, parity=par)
    if tag not in _FREQ_TAGS:
        raise InvalidParameters(f"unknown family tag {pred.tag!r}")
    if not all(isinstance(x, int) for x in obj):
        raise KindMismatch(f"{tag} needs a frequency sequence")
    f = obj
    if tag == "A":
        return in_A(f, k)
    if tag == "gordon":
        return in_gordon(f, k, r)
    if tag == "Y":
        return in_Y(f, j, r, k)
    if tag == "Z":
        return in_Z(f, j, r, k)
    if tag == "Y_s":
        return in_Y_s(f, s, k)
    if tag == "Yp_s":
        return in_Y_s(f, s, k) and parity_condition(f, k, k - s)
    if tag == "Ypt_s":
        return in_Y_s(f, s, k) and parity_condition(f, k, k - s + 1)
    base = in_Y(f, j, r, k) if tag.startswith("Y") else in_Z(f, j, r, k)
    par = k + r - j + (1 if tag.endswith("t") else 0)
    return base and parity_condition(f, k, par)


def enum_family(pred: SetPredicate, max_weight: int):
    """All members of a frequency-sequence family up to the given weight."""
    if pred.tag in _MP_TAGS:
        raise KindMismatch("use enum_mp_family for multipartition families")
    return [f for f in enum_freq(pred.k, max_weight) if membership(pred, f)]


# -- multipartition enumeration ------------------------------------------------------


def _enum_partitions(length, budget, lo, parity=None, cap=None):
    """Weakly decreasing tuples of given length, parts >= lo (and of the given
    parity when set), total <= budget."""
    lo = max(lo, 0)
    if parity is not None and lo % 2 != parity % 2:
        lo += 1
    if length == 0:
        return [()]
    out = []
    step = 2 if parity is not None else 1
    hi = budget - lo * (length - 1)
    if cap is not None:
        hi = min(hi, cap)
    p = lo
    while p <= hi:
        for rest in _enum_partitions(length - 1, budget - p, lo, parity, cap=p):
            out.append((p,) + rest)
        p += step
    return out


def enum_mp_family(k: int, j: int, r: int, max_size: int,
                   parity: Optional[int] = None):
    """Members (multipartitions) of the part-bounded family with
    |parts| + |frame| <= max_size; parity constrains the last partition."""
    out = []
    smax = 1
    while smax * smax - smax <= max_size:
        smax += 1

    def rec_shapes(i, prev, s_list):
        if i > k:
            fw = sum(v * v for v in s_list) - sum(s_list)
            if fw > max_size:
                return
            budget = max_size - fw
            lengths = [s_list[m] - (s_list[m + 1] if m + 1 < k else 0)
                       for m in range(k)]
            mins = [x_min_part(m, j, r, k) for m in range(1, k + 1)]
            floor = sum(lengths[m] * max(mins[m], 0) for m in range(k))
            if floor > budget:
                return
            def assemble(m, left, acc):
                if m == k:
                    out.append(tuple(acc))
                    return
                par = parity if m == k - 1 else None
                for lam in _enum_partitions(lengths[m], left, mins[m], par):
                    acc.append(lam)
                    assemble(m + 1, left - sum(lam), acc)
                    acc.pop()
            assemble(0, budget, [])
            return
        for v in range(prev, -1, -1):
            if v * v - v <= max_size:
                rec_shapes(i + 1, v, s_list + [v])

    for s1 in range(smax + 1):
        rec_shapes(2, s1, [s1])
    return out


# -- head rewriting between the Y and Z families ---------------------------------------


def phi(j: int, r: int, k: int, f) -> tuple:
    """Rewrite f_0 to carry a Y-family member onto the Z family."""
    if not in_Y(f, j, r, k):
        raise NotAMember("phi needs a member of the Y family")
    g = _pad2(f)
    f0 = g[0]
    if j >= r:
        if f0 <= j - r:
            f0p = f0
        else:
            l = f0 - (j - r)
            if l % 2 or not 1 <= l // 2 <= r:
                raise NotAMember(f"head value {f0} outside the Y head set")
            f0p = j - r + l // 2
    else:
        l = f0 - (r - j)
        if l % 2 or not 0 <= l // 2 <= j:
            raise NotAMember(f"head value {f0} outside the Y head set")
        f0p = l // 2
    return canonical([f0p] + list(f[1:]))


def pi(j: int, r: int, k: int, g) -> tuple:
    """Inverse of phi: Z family back to the Y family."""
    if not in_Z(g, j, r, k):
        raise NotAMember("pi needs a member of the Z family")
    gg = _pad2(g)
    g0 = gg[0]
    if j >= r:
        if g0 <= j - r:
            g0p = g0
        else:
            l = g0 - (j - r)
            if not 1 <= l <= r:
                raise NotAMember(f"head value {g0} outside the Z head range")
            g0p = j - r + 2 * l
    else:
        if not 0 <= g0 <= j:
            raise NotAMember(f"head value {g0} outside the Z head range")
        g0p = r - j + 2 * g0
    return canonical([g0p] + list(g[1:]))


# -- generating functions ----------------------------------------------------------------


def gf_members(members, max_weight: int, weight_fn=weight) -> QSeries:
    """sum q^{|member|} over the enumerated members, exact to max_weight."""
    counts = {}
    for m in members:
        w = weight_fn(m)
        if w <= max_weight:
            counts[2 * w] = counts.get(2 * w, 0) + 1
    return QSeries(counts, 2 * max_weight + 1)


def gf_family(pred: SetPredicate, max_weight: int) -> QSeries:
    return gf_members(enum_family(pred, max_weight), max_weight)


def mp_total_size(mp) -> int:
    from .motion import frame_of, mp_size
    return mp_size(mp) + weight(frame_of(mp))


def gf_mp_family(k, j, r, max_size, parity=None) -> QSeries:
    return gf_members(enum_mp_family(k, j, r, max_size, parity), max_size,
                      weight_fn=mp_total_size)


def oracle_mod_partitions(modulus: int, excluded, max_weight: int) -> QSeries:
    """Generating function of partitions avoiding the excluded residues mod
    ``modulus``; direct dynamic programming over allowed part sizes, fully
    independent of the Pochhammer machinery."""
    excl = {x % modulus for x in excluded}
    counts = [1] + [0] * max_weight
    for part in range(1, max_weight + 1):
        if part % modulus in excl:
            continue
        for w in range(part, max_weight + 1):
            counts[w] += counts[w - part]
    return QSeries({2 * w: c for w, c in enumerate(counts)},
                   2 * max_weight + 1)


def count_partitions(n: int, length: int, min_part: int,
                     parity: Optional[int] = None) -> int:
    """Brute count of partitions of n with the given length and lower bound."""
    return sum(1 for lam in _enum_partitions(length, n, min_part, parity)
               if sum(lam) == n)


# -- theorem-level checks -------------------------------------------------------------------


@dataclass
class SetReport:
    equal: bool
    first_mismatch: Optional[int]
    detail: str = ""


_INTERP = {
    "1.11": ("Z", "stanton_32"),
    "1.12": ("Zp", "stanton_42"),
    "1.13": ("Zpt", "nonbinom_kursungoz"),
}


def check_interpretation(theorem: str, k: int, r: int, j: int,
                         max_weight: int) -> SetReport:
    """Generating function of the stated frequency family against the
    corresponding catalog sum side, to q-order max_weight."""
    if theorem not in _INTERP:
        raise InvalidParameters(f"unknown interpretation {theorem!r}")
    if k < 1 or r < 0 or j < 0 or r + j > k:
        raise InvalidParameters(f"need k>=1, r,j>=0, r+j<=k; got {k=} {r=} {j=}")
    tag, row = _INTERP[theorem]
    gf = gf_family(SetPredicate(tag, k=k, r=r, j=j), max_weight)
    ref = lhs_series(row, {"k": k, "r": r, "j": j}, max_weight)
    eq, e = gf.equal_up_to(ref, min(gf.prec, ref.prec))
    return SetReport(eq, e, f"{tag} vs {row}")


def check_ztilde_relation(k: int, r: int, j: int,
                          max_weight: int) -> SetReport:
    """The three-term relation between the tilde family and its neighbours:
    (1+q) gf(Ztilde'_{j,r,k}) = gf(Z'_{j,r-1,k}) + q gf(Z'_{j,r+1,k}),
    plus the inclusion chain and the f_1 -> f_1 - 1 bijection between the
    difference sets.  Enumerative, weight-bounded, r >= 1 required."""
    if r < 1:
        raise InvalidParameters("r >= 1 required (r - 1 must stay defined)")
    if k < 1 or j < 0 or r + j > k:
        raise InvalidParameters(f"need k>=1, j>=0, r+j<=k; got {k=} {r=} {j=}")
    W = max_weight
    zt = set(enum_family(SetPredicate("Zpt", k=k, r=r, j=j), W))
    zm = set(enum_family(SetPredicate("Zp", k=k, r=r - 1, j=j), W))
    zp = set(enum_family(SetPredicate("Zp", k=k, r=r + 1, j=j), W))
    if not zp <= zt or not zt <= zm:
        return SetReport(False, None, "inclusion chain fails")
    lhs = gf_members(zt, W) * QSeries([(0, 1), (2, 1)])
    rhs = gf_members(zm, W) + gf_members(zp, W).shift(2)
    eq, e = lhs.equal_up_to(rhs, 2 * W + 1)
    if not eq:
        return SetReport(False, e, "three-term gf relation fails")
    # weight-(-1) shift bijection from Z'_{j,r-1,k} minus the tilde family
    # onto the tilde family minus Z'_{j,r+1,k}
    src = [f for f in zm - zt]
    dst = {f for f in zt - zp}
    seen = set()
    for f in src:
        g = _pad2(f)
        if g[1] < 1:
            return SetReport(False, None, f"shift map undefined on {f}")
        img = canonical([g[0], g[1] - 1] + list(g[2:]))
        if weight(img) != weight(f) - 1:
            return SetReport(False, None, f"shift map weight slip on {f}")
        if img not in dst:
            return SetReport(False, None, f"shift image {img} escapes the target")
        if img in seen:
            return SetReport(False, None, f"shift map collides at {img}")
        seen.add(img)
    missed = [g for g in dst if weight(g) <= W - 1 and g not in seen]
    if missed:
        return SetReport(False, None, f"shift map misses {missed[:3]}")
    return SetReport(True, None, "")
