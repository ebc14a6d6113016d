"""Particle motion, reverse motion, and the insertion bijection."""

import random

import pytest

from qident import motion as M
from qident.errors import PreconditionViolated

EXAMPLE_MP = ((3, 1), (), (6, 6, 5, 3), (19, 0))
EXAMPLE_OUT = (4, 0, 0, 3, 0, 1, 2, 1, 1, 2, 1, 2, 0, 3, 1, 0, 0, 1)


def test_frame_of_worked_example():
    fs = M.frame_of(EXAMPLE_MP)
    assert fs == M.canonical((4, 0, 4, 0, 3, 0, 3, 0, 3, 0, 3, 0, 1, 0, 1, 0))
    assert M.weight(fs) == 118
    assert M.frame_of(((), (), ())) == ()
    assert M.frame_of(()) == ()


def test_frame_weight_formula():
    # weight of the frame with column sums s_1 >= ... >= s_k equals
    # sum s_i^2 - sum s_i, for every shape with s_1 <= 6
    def shapes(k, hi):
        if k == 0:
            yield ()
            return
        for v in range(hi + 1):
            for rest in shapes(k - 1, v):
                yield (v,) + rest
    for k in (1, 2, 3):
        for s in shapes(k, 6):
            parts = []
            ss = list(s) + [0]
            for i in range(k):
                parts.append((0,) * (ss[i] - ss[i + 1]))
            fs = M.frame_of(tuple(parts))
            assert M.weight(fs) == M.frame_weight(s), s


def test_pm_examples():
    f = (4, 0, 2, 0, 3, 1)
    g, v = M.pm_stepwise(f, 0, 9)
    assert g == (2, 0, 3, 1, 0, 3, 1) and v == 5
    g2, v2 = M.pm_explicit(f, 0, 9)
    assert (g2, v2) == (g, v)
    # zero motions change nothing
    assert M.pm_stepwise(f, 0, 0) == (M.canonical(f), 0)
    assert M.pm_explicit(f, 0, 0)[0] == M.canonical(f)
    # dominance violation: (1,0,2) has f_1 + f_2 = 2 > h = 1
    with pytest.raises(PreconditionViolated):
        M.pm_stepwise((1, 0, 2), 0, 1)
    with pytest.raises(PreconditionViolated):
        M.pm_explicit((1, 0, 2), 0, 1)


def test_pm_weight_bookkeeping():
    # every single motion raises the weight by exactly one
    trace = []
    f = (4, 0, 2, 0, 3, 1)
    M.pm_stepwise(f, 0, 9, trace=trace)
    w = M.weight(f)
    for state, op, _pos in trace:
        if op == "pm":
            w += 1
            assert M.weight(state) == w
        else:
            assert M.weight(state) == w


def test_pm_engines_agree_randomized():
    rng = random.Random(11)
    for _ in range(300):
        h = rng.randint(1, 4)
        tail_len = rng.randint(0, 6)
        tail = []
        prev = 0
        for _ in range(tail_len):
            v = rng.randint(0, h - prev)
            tail.append(v)
            prev = v
        u = 2 * rng.randint(0, 2)
        f = [0] * u + [h, 0] + tail
        if u > 0:
            f[u - 1] = 0
        m = rng.randint(0, 12)
        a = M.pm_stepwise(f, u, m)
        b = M.pm_explicit(f, u, m)
        assert a == b, (f, u, m)


def test_rpm_examples():
    g, steps = M.rpm_explicit((2, 0, 3, 1, 0, 3, 1), 0)
    assert g == (4, 0, 2, 0, 0, 3, 1) and steps == 5
    assert M.rpm_stepwise((2, 0, 3, 1, 0, 3, 1), 0) == (g, 5)
    # a frame pair at its own position is a fixed point with zero steps
    frame = (3, 0, 2, 0, 1)
    g2, steps2 = M.rpm_explicit(frame, 0)
    assert g2 == M.canonical(frame) and steps2 == 0
    with pytest.raises(PreconditionViolated):
        M.rpm_explicit((1, 1, 1), 1)  # entry before u is nonzero


def test_rpm_engines_agree_randomized():
    rng = random.Random(23)
    for _ in range(300):
        k = rng.randint(1, 4)
        f = []
        prev = 0
        for _ in range(rng.randint(0, 8)):
            v = rng.randint(0, k - prev)
            f.append(v)
            prev = v
        u = 0
        a = M.rpm_explicit(f, u)
        b = M.rpm_stepwise(f, u)
        assert a == b, (f, a, b)
        # reverse motion lowers the weight by exactly the step count
        assert M.weight(a[0]) == M.weight(M.canonical(f)) - a[1]


def test_lambda_worked_example():
    out = M.lambda_map(EXAMPLE_MP)
    assert out == EXAMPLE_OUT
    assert M.weight(out) == 118 + 43 == 161
    assert M.lambda_map(EXAMPLE_MP, engine="stepwise") == out
    assert M.gamma_map(out, 4) == EXAMPLE_MP
    # intermediate states agree between engines and with the reverse pass
    se = M.lambda_states(EXAMPLE_MP, "explicit")
    assert se == M.lambda_states(EXAMPLE_MP, "stepwise")
    ge = M.gamma_states(out, "explicit")
    assert ge == M.gamma_states(out, "stepwise")
    assert se[::-1] == ge


def test_lambda_empty_and_zero_parts():
    assert M.lambda_map(()) == ()
    assert M.gamma_map(()) == ()
    # size-zero multipartitions map to their frame and back
    mp = ((0,), (0, 0))
    f = M.lambda_map(mp)
    assert f == M.frame_of(mp)
    assert M.gamma_map(f, 2) == mp


def test_gamma_of_frame_fixed_point():
    mp = M.gamma_map((2, 0, 1, 0))
    assert mp == ((0,), (0,))
    assert M.lambda_map(mp) == (2, 0, 1)


def test_landing_pair_is_leftmost_maximum():
    # along the insertion, each step lands on the smallest index attaining
    # the maximal adjacent sum of the suffix
    mps = [EXAMPLE_MP, ((2, 1), (3, 0)), ((5,), (4, 1), (2, 2))]
    for mp in mps:
        states = M.lambda_states(mp)
        seq = M.flatten_parts(mp)
        s1 = len(seq)
        for idx in range(s1):
            i = s1 - 1 - idx           # motion index for this step
            before = states[idx]
            after = states[idx + 1]
            g = list(before) + [0, 0]
            h = g[2 * i]
            assert g[2 * i + 1] == 0 and h >= 1
            _, v = M.pm_explicit(before, 2 * i, seq[i])
            gg = list(after) + [0, 0, 0]
            sums = [gg[t] + gg[t + 1] for t in range(2 * i, len(gg) - 1)]
            assert max(sums) == h
            assert 2 * i + sums.index(max(sums)) == v


def test_gamma_k_validation():
    with pytest.raises(PreconditionViolated):
        M.gamma_map((3, 0, 1), k=2)


def test_multipartition_validation():
    with pytest.raises(PreconditionViolated):
        M.check_multipartition(((1, 2),))
    with pytest.raises(PreconditionViolated):
        M.check_multipartition(((-1,),))


def test_trace_rendering():
    out, tr = M.lambda_map(EXAMPLE_MP, trace=True)
    txt = tr.text()
    assert "m=19" in txt and "=>" in txt
    blob = tr.to_json()
    assert blob["ops"][-1]["state"] == list(out)
    mp, tr2 = M.gamma_map(out, 4, trace=True)
    assert mp == EXAMPLE_MP
    assert tr2.to_json()["ops"][0]["op"] == "rpm"


def test_json_round_trip():
    blob = M.mp_to_json(EXAMPLE_MP)
    assert blob == {"parts": [[3, 1], [], [6, 6, 5, 3], [19, 0]]}
    assert M.mp_from_json(blob) == EXAMPLE_MP
