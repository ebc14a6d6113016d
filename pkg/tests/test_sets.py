"""Families, enumerators, head-rewriting bijections, and oracles."""

import pytest

from qident import identities as I
from qident import motion as M
from qident import sets as S
from qident.errors import InvalidParameters, KindMismatch, NotAMember
from qident.qfunctions import Q, SignedMonomial as SM, poch_infinite, triple_product


def test_enum_freq_small():
    members = sorted(S.enum_freq(1, 2))
    assert members == [(), (0, 0, 1), (0, 1), (1,), (1, 0, 1)]
    w0 = sorted(S.enum_freq(2, 0))
    assert w0 == [(), (1,), (2,)]
    # no duplicates, all canonical, all in the family
    big = S.enum_freq(3, 10)
    assert len(big) == len(set(big))
    assert all(f == M.canonical(f) and M.in_A(f, 3) for f in big)


def test_enum_freq_counts_match_insertion_transport():
    # the weight-w count of the bounded family equals the number of
    # multipartition pairs of total size w
    for k in (1, 2):
        W = 10
        a_counts = {}
        for f in S.enum_freq(k, W):
            a_counts[M.weight(f)] = a_counts.get(M.weight(f), 0) + 1
        p_counts = {}
        for mp in S.enum_mp_family(k, k, 0, W):  # j=k, r=0: all parts >= 0
            w = S.mp_total_size(mp)
            p_counts[w] = p_counts.get(w, 0) + 1
        for w in range(W + 1):
            assert a_counts.get(w, 0) == p_counts.get(w, 0), (k, w)


def test_membership_examples():
    assert not S.in_Z((1, 1), 1, 1, 2)
    assert S.in_Z((), 1, 1, 2)
    assert S.in_X(((3, 1), (), (6, 6, 5, 3), (19, 0)), 4, 0, 4)
    pred = S.SetPredicate("Z", k=2, r=1, j=1)
    assert pred.member((0, 1))
    with pytest.raises(KindMismatch):
        S.membership(pred, ((1,),))
    with pytest.raises(KindMismatch):
        S.membership(S.SetPredicate("X", k=1), (1, 0))
    with pytest.raises(InvalidParameters):
        S.membership(S.SetPredicate("nope", k=1), (1,))


def test_parity_condition_includes_position_zero():
    # pair (f_0, f_1) counts: 0*f_0 + 1*f_1 must match the parity
    f = (1, 2)  # f_0 + f_1 = 3 = k; f_1 = 2 even
    assert S.parity_condition(f, 3, 0)
    assert not S.parity_condition(f, 3, 1)


def test_phi_pi_examples():
    assert S.phi(2, 1, 3, (3,)) == (2,)
    assert S.phi(2, 1, 3, (1, 1)) == (1, 1)
    with pytest.raises(NotAMember):
        S.phi(1, 1, 2, (1, 1))     # not in the Y family
    with pytest.raises(NotAMember):
        S.pi(1, 1, 2, (1, 1))


def test_phi_pi_round_trip_sweep():
    for k in (1, 2, 3, 4):
        for r in range(0, k + 1):
            for j in range(0, k - r + 1):
                Y = S.enum_family(S.SetPredicate("Y", k=k, r=r, j=j), 20)
                Z = S.enum_family(S.SetPredicate("Z", k=k, r=r, j=j), 20)
                assert len(Y) == len(Z)
                for f in Y:
                    g = S.phi(j, r, k, f)
                    assert S.in_Z(g, j, r, k)
                    assert M.weight(g) == M.weight(f)
                    assert S.pi(j, r, k, g) == f


def test_phi_preserves_parity_on_primed_families():
    for k in (2, 3):
        for r in range(0, k + 1):
            for j in range(0, k - r + 1):
                Yp = S.enum_family(S.SetPredicate("Yp", k=k, r=r, j=j), 14)
                for f in Yp:
                    g = S.phi(j, r, k, f)
                    assert S.membership(S.SetPredicate("Zp", k=k, r=r, j=j), g)


def test_oracle_mod_partitions():
    s = S.oracle_mod_partitions(5, {0, 1, 4}, 20)
    assert s.qcoeff(4) == 1            # only 2 + 2
    assert s.qcoeff(0) == 1
    all_excluded = S.oracle_mod_partitions(3, {0, 1, 2}, 15)
    assert all_excluded.coeffs == {0: 1}
    # cross-check against the Pochhammer route
    tp = 41
    via_poch = (poch_infinite(SM(1, 4), 10, tp)
                * poch_infinite(SM(1, 6), 10, tp)).invert(tp)
    assert s.equal_up_to(via_poch, 41) == (True, None)


def test_partition_length_min_count_gf():
    # q^(d l)/(q)_l and the parity variants, against brute counts
    from qident.qfunctions import inv_poch_finite
    for length in (1, 2, 3):
        for d in (0, 1, 2):
            tp = 41
            gf = inv_poch_finite(Q, 2, length, tp).shift(2 * d * length)
            for n in range(18):
                assert gf.qcoeff(n) == S.count_partitions(n, length, d), \
                    (length, d, n)
            gf2 = inv_poch_finite(SM(1, 4), 4, length, tp).shift(2 * d * length)
            for n in range(18):
                assert gf2.qcoeff(n) == S.count_partitions(n, length, d,
                                                           parity=d % 2), \
                    (length, d, n)


def test_gordon_gf_vs_product_oracle():
    for k in (1, 2):
        for r in range(0, k + 1):
            gf = S.gf_family(S.SetPredicate("gordon", k=k, r=r), 20)
            orc = S.oracle_mod_partitions(2 * k + 3,
                                          {0, k - r + 1, -(k - r + 1)}, 20)
            assert gf.equal_up_to(orc, 41) == (True, None)


def test_y_single_head_lemma():
    # gf(Y_{s,k}) equals the odd-moduli product with the head as parameter
    for k in (1, 2, 3):
        for s in range(0, k + 1):
            W = 18
            tp = 2 * W + 1
            gf = S.gf_family(S.SetPredicate("Y_s", k=k, s=s), W)
            prod = (triple_product(2 * (2 * k + 3), 2 * (k + 1 - s), tp)
                    * poch_infinite(Q, 2, tp).invert(tp))
            assert gf.equal_up_to(prod.truncate(tp), tp) == (True, None)


def test_y_primed_head_lemmas():
    # the even-moduli analogues, with and without the parity flip
    for k in (1, 2, 3):
        for s in range(0, k + 1):
            W = 16
            tp = 2 * W + 1
            gf = S.gf_family(S.SetPredicate("Yp_s", k=k, s=s), W)
            A = 2 * (k + 1 - s)
            M_t = 2 * (2 * k + 2)
            prod = (triple_product(M_t, A, tp)
                    * poch_infinite(Q, 2, tp).invert(tp))
            assert gf.equal_up_to(prod.truncate(tp), tp) == (True, None)
            gft = S.gf_family(S.SetPredicate("Ypt_s", k=k, s=s), W)
            At = 2 * (k - s)
            if At % M_t != 0:
                prodt = (triple_product(M_t, At, tp)
                         * poch_infinite(Q, 2, tp).invert(tp))
                assert gft.equal_up_to(prodt.truncate(tp), tp) == (True, None)
            else:
                assert gft.is_zero()


def test_y_family_gf_matches_product_sum():
    # gf of the Y family equals the catalog product side (odd moduli)
    for (k, r, j) in ((2, 1, 1), (3, 1, 2), (3, 2, 1), (2, 0, 2)):
        W = 16
        gf = S.gf_family(S.SetPredicate("Y", k=k, r=r, j=j), W)
        ref = I.rhs_series("stanton_32", {"k": k, "r": r, "j": j}, W)
        assert gf.equal_up_to(ref.truncate(2 * W + 1), 2 * W + 1) == (True, None)


def test_interpretations_small():
    for thm in ("1.11", "1.12", "1.13"):
        rep = S.check_interpretation(thm, 2, 1, 1, 16)
        assert rep.equal, (thm, rep)
    with pytest.raises(InvalidParameters):
        S.check_interpretation("1.14", 2, 1, 1, 10)
    with pytest.raises(InvalidParameters):
        S.check_interpretation("1.11", 2, 2, 1, 10)


def test_ztilde_relation_small():
    rep = S.check_ztilde_relation(3, 1, 1, 14)
    assert rep.equal, rep
    with pytest.raises(InvalidParameters):
        S.check_ztilde_relation(3, 0, 1, 10)


def test_x_family_gf_matches_multisum():
    for (k, r, j) in ((2, 1, 1), (3, 1, 1), (2, 0, 2)):
        W = 14
        gfX = S.gf_mp_family(k, j, r, W)
        ref = I.lhs_series("stanton_32", {"k": k, "r": r, "j": j}, W)
        assert gfX.equal_up_to(ref.truncate(2 * W + 1), 2 * W + 1) == (True, None)


def test_lambda_transport_between_families():
    for (k, r, j) in ((2, 1, 1), (3, 1, 1)):
        for mp in S.enum_mp_family(k, j, r, 12):
            f = M.lambda_map(mp)
            assert S.in_Z(f, j, r, k)
            assert M.gamma_map(f, k) == mp
        Z = S.enum_family(S.SetPredicate("Z", k=k, r=r, j=j), 12)
        for f in Z:
            mp = M.gamma_map(f, k)
            assert S.in_X(mp, j, r, k)
            assert M.lambda_map(mp) == f


def test_lambda_transport_full_sweep():
    # every member of each part-bounded family lands in the matching
    # head-bounded family (and back), including the parity-constrained pairs,
    # with the head invariant holding along every intermediate state
    for k in (1, 2, 3):
        for r in range(0, k + 1):
            for j in range(0, k - r + 1):
                for mp in S.enum_mp_family(k, j, r, 12):
                    f = M.lambda_map(mp)
                    assert S.in_Z(f, j, r, k), (k, r, j, mp)
                    states = M.lambda_states(mp)
                    for idx, th in enumerate(states):
                        i = len(states) - 1 - idx
                        g = list(th) + [0] * (2 * i + 4 - len(th))
                        head, nxt = g[2 * i], g[2 * i + 1]
                        assert head <= j - max(head + nxt - (k - r), 0), \
                            (k, r, j, mp, i)
                for par, ztag in (((k + r - j) % 2, "Zp"),
                                  ((k + r - j + 1) % 2, "Zpt")):
                    for mp in S.enum_mp_family(k, j, r, 10, parity=par):
                        f = M.lambda_map(mp)
                        assert S.membership(
                            S.SetPredicate(ztag, k=k, r=r, j=j), f)
                Z = S.enum_family(S.SetPredicate("Z", k=k, r=r, j=j), 10)
                for f in Z:
                    assert S.in_X(M.gamma_map(f, k), j, r, k), (k, r, j, f)


def test_gordon_gf_vs_catalog_product():
    for k in (1, 2):
        for r in range(0, k + 1):
            gf = S.gf_family(S.SetPredicate("gordon", k=k, r=r), 25)
            ref = I.rhs_series("andrews_gordon", {"k": k, "r": r}, 25)
            assert gf.equal_up_to(ref.truncate(51), 51) == (True, None)


def classical_even_model_gf(k, r, parity_shift, W):
    """The 1-indexed even-moduli partition model: no zero parts, f_1 <= k-r,
    adjacent sums at most k, and every saturated pair at positions >= 1 obeys
    the parity condition (shift 0 or 1 selects the two companion models)."""
    from qident.series import QSeries
    counts = {}
    for f in S.enum_freq(k, W):
        g = list(f) + [0, 0]
        if g[0] != 0 or g[1] > k - r:
            continue
        ok = all((i * g[i] + (i + 1) * g[i + 1]) % 2
                 == (k - r + parity_shift) % 2
                 for i in range(1, len(g) - 1) if g[i] + g[i + 1] == k)
        if ok:
            w = M.weight(f)
            counts[2 * w] = counts.get(2 * w, 0) + 1
    return QSeries(counts, 2 * W + 1)


def test_classical_even_moduli_partition_models():
    from qident.series import QSeries
    W = 18
    tp = 2 * W + 1
    for k in (1, 2, 3):
        for r in range(0, k + 1):
            gf = classical_even_model_gf(k, r, 0, W)
            ref = I.rhs_series("bressoud_even", {"k": k, "r": r}, W)
            assert gf.equal_up_to(ref.truncate(tp), tp) == (True, None), (k, r)
            if r >= 1:
                # for r = 0 the two excluded residues coincide mod 2k+2 and
                # the product is no longer a plain congruence-class count
                orc = S.oracle_mod_partitions(2 * k + 2,
                                              {0, k - r + 1, -(k - r + 1)}, W)
                assert gf.equal_up_to(orc, tp) == (True, None), (k, r)
            gft = classical_even_model_gf(k, r, 1, W)
            rhs = I.rhs_series("kursungoz_0", {"k": k, "r": r}, W)
            reft = rhs * QSeries([(0, 1), (2, 1)]).invert(tp)
            assert gft.equal_up_to(reft.truncate(tp), tp) == (True, None), (k, r)
