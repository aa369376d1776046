"""Frame factories and existence predicates at desk scale."""

import random

import numpy as np
import pytest

from etfkit.constructions import (
    ASYMPTOTIC,
    CONSTRUCTIBLE,
    KNOWN,
    UNKNOWN,
    AdmissibilityError,
    ConstructionError,
    check_chen_classification,
    existence_status,
    gdd_etf,
    mols_tdtf,
    plan_gdd_etf,
    regular_simplex,
    steiner_etf,
)
from etfkit.cyclo import CycMatrix
from etfkit.designs import (
    affine_plane,
    gf_build,
    mols_from_field,
    steiner_triple_system,
    td_from_mols,
)
from etfkit.frames import EtfType, Frame, classify_type, gram, verify_etf, verify_tdtf
from etfkit.hadamard import fourier, sylvester


def td(k, m):
    p_k = {3: (3, 1), 4: (2, 2), 8: (2, 3), 9: (3, 2)}[m]
    return td_from_mols(mols_from_field(gf_build(*p_k)), k)


# ---------------------------------------------------------------------------
# regular simplices


def test_simplex_mercedes_benz():
    frame, cert = regular_simplex(3, fourier(3))
    assert (frame.d, frame.n) == (2, 3)
    assert cert.welch_equality and (cert.s, cert.t) == (2, 1)
    assert EtfType(3, -1, 2) in classify_type(2, 3)


def test_simplex_trivial_pair():
    frame, cert = regular_simplex(2, sylvester(1))
    assert (frame.d, frame.n) == (1, 2)
    assert cert.welch_equality and (cert.s, cert.t) == (1, 1)


def test_simplex_sylvester4():
    frame, _ = regular_simplex(4, sylvester(2))
    assert EtfType(2, -1, 3) in classify_type(frame.d, frame.n)


def test_simplex_size_mismatch():
    with pytest.raises(ConstructionError):
        regular_simplex(3, sylvester(2))


# ---------------------------------------------------------------------------
# Steiner ETFs


def test_steiner_6_16():
    frame, cert = steiner_etf(affine_plane(gf_build(2, 1)), sylvester(2))
    assert (frame.d, frame.n) == (6, 16)
    assert (cert.s, cert.t) == (3, 1) and cert.a == 8
    assert classify_type(6, 16) == [EtfType(2, 1, 3), EtfType(4, -1, 3)]


def test_steiner_12_45():
    frame, cert = steiner_etf(steiner_triple_system(9), fourier(5))
    assert (frame.d, frame.n) == (12, 45)
    assert (cert.s, cert.t) == (4, 1) and cert.a == 15
    types = classify_type(12, 45)
    assert EtfType(3, 1, 4) in types and EtfType(5, -1, 4) in types


def test_steiner_7_28():
    frame, cert = steiner_etf(steiner_triple_system(7), sylvester(2))
    assert (frame.d, frame.n) == (7, 28)
    assert (cert.s, cert.t) == (3, 1)
    types = classify_type(7, 28)
    assert EtfType(3, 1, 3) in types and EtfType(6, -1, 3) in types


def test_steiner_rejects_bad_inputs():
    with pytest.raises(ConstructionError):
        steiner_etf(td(3, 3), sylvester(2))            # group size 3, not 1
    with pytest.raises(ConstructionError):
        steiner_etf(steiner_triple_system(7), sylvester(3))   # needs size 4


# ---------------------------------------------------------------------------
# MOLS flat frames


def test_mols_centered_etf_6_16():
    frame, cert = mols_tdtf(td(2, 4), sylvester(2), "centered")
    assert (frame.d, frame.n) == (6, 16)
    assert cert.welch_equality and cert.flat and cert.centered


def test_mols_augmented_etf_10_16():
    frame, cert = mols_tdtf(td(3, 4), sylvester(2), "augmented")
    assert (frame.d, frame.n) == (10, 16)
    assert cert.welch_equality and cert.flat and not cert.centered
    assert classify_type(10, 16) == [EtfType(2, -1, 5)]


def test_mols_centered_tdtf_not_etf():
    frame, cert = mols_tdtf(td(3, 4), sylvester(2), "centered")
    assert not cert.welch_equality
    rep = verify_tdtf(frame)
    assert rep.ok
    vals = {v.as_integer() for v in rep.values}
    assert vals == {1, -3}          # M XX* - K J with M=4, K=3


def test_mols_rejects_non_td():
    with pytest.raises(ConstructionError):
        mols_tdtf(steiner_triple_system(7), sylvester(2), "centered")
    with pytest.raises(ConstructionError):
        mols_tdtf(td(2, 4), sylvester(2), "sideways")


# ---------------------------------------------------------------------------
# GDD extension planning


def test_plan_small_seed():
    plan = plan_gdd_etf(EtfType(3, -1, 2), 3)
    assert (plan.m, plan.r, plan.w, plan.s_out) == (3, 3, 3, 5)
    assert (plan.d_out, plan.n_out) == (15, 36)
    assert plan.hadamard_e_size == 1 and plan.hadamard_f_size == 4


def test_plan_medium_seed():
    plan = plan_gdd_etf(EtfType(4, -1, 3), 4)
    assert (plan.m, plan.r, plan.w, plan.s_out) == (8, 8, 4, 11)
    assert (plan.d_out, plan.n_out) == (88, 320)
    assert plan.s_out % 8 == 3


def test_plan_rejects_bad_u():
    with pytest.raises(AdmissibilityError) as exc:
        plan_gdd_etf(EtfType(4, -1, 3), 5)
    assert exc.value.condition == "(K-1) divides (U-1)"
    with pytest.raises(AdmissibilityError):
        plan_gdd_etf(EtfType(4, -1, 3), 2)     # U < K
    with pytest.raises(AdmissibilityError):
        plan_gdd_etf(EtfType(1, 1, 4), 5)      # K < 2


def test_plan_accepts_canonical_residue_class():
    # U = 1 (mod (S+L)K(K-1)) always satisfies every divisibility condition
    for seed in (EtfType(3, -1, 2), EtfType(4, -1, 3), EtfType(5, -1, 4),
                 EtfType(3, -1, 3), EtfType(2, 1, 3)):
        step = (seed.S + seed.L) * seed.K * (seed.K - 1)
        for j in (1, 2, 3):
            u = 1 + j * step
            if u < seed.K:
                continue
            plan = plan_gdd_etf(seed, u)
            assert plan.s_out == seed.S + plan.r


# ---------------------------------------------------------------------------
# the GDD extension, small instance


def build_etf_15_36():
    seed, _ = regular_simplex(3, fourier(3))
    return gdd_etf(seed, EtfType(3, -1, 2), td(3, 3), fourier(1), sylvester(2))


def test_gdd_etf_15_36():
    frame, cert = build_etf_15_36()
    assert (frame.d, frame.n) == (15, 36)
    assert cert.welch_equality and (cert.s, cert.t) == (5, 1)
    assert cert.a == 12
    assert classify_type(15, 36) == [EtfType(2, 1, 5), EtfType(3, -1, 5)]


def test_gdd_etf_15_36_same_block_offdiagonals():
    # columns sharing (u, m, i) but differing in j have inner product -L = 1
    frame, _ = build_etf_15_36()
    g = gram(frame)
    w1 = 4                     # W + 1 columns per (u, m, i) cluster
    for base in range(0, 36, w1):
        for j1 in range(w1):
            for j2 in range(j1 + 1, w1):
                assert g.entry(base + j1, base + j2) == 1


def test_gdd_etf_random_regrouping_certifies():
    rng = random.Random(97)
    seed, _ = regular_simplex(3, fourier(3))
    perm = list(range(3))
    rng.shuffle(perm)
    arr = seed.synthesis.array[:, perm, :]
    shuffled = Frame(CycMatrix(seed.synthesis.order, arr))
    frame, cert = gdd_etf(shuffled, EtfType(3, -1, 2), td(3, 3),
                          fourier(1), sylvester(2))
    assert cert.welch_equality and cert.s == 5


def test_gdd_etf_rejects_wrong_hadamard_sizes():
    seed, _ = regular_simplex(3, fourier(3))
    with pytest.raises(ConstructionError):
        gdd_etf(seed, EtfType(3, -1, 2), td(3, 3), fourier(2), sylvester(2))
    with pytest.raises(ConstructionError):
        gdd_etf(seed, EtfType(3, -1, 2), td(3, 3), fourier(1), sylvester(3))


def test_gdd_etf_rejects_wrong_seed():
    seed, _ = regular_simplex(4, sylvester(2))
    with pytest.raises(ConstructionError):
        gdd_etf(seed, EtfType(3, -1, 2), td(3, 3), fourier(1), sylvester(2))


def test_gdd_etf_rejects_mismatched_gdd():
    seed, _ = regular_simplex(3, fourier(3))
    with pytest.raises(ConstructionError):
        gdd_etf(seed, EtfType(3, -1, 2), td(3, 9), fourier(1), sylvester(2))


# ---------------------------------------------------------------------------
# existence predicates


def test_existence_pinned_negative_cases():
    st = existence_status(EtfType(4, -1, 19))
    assert st.status == KNOWN and "3 (mod 8)" in st.witness
    assert existence_status(EtfType(4, -1, 4)).status == UNKNOWN
    assert existence_status(EtfType(3, -1, 5)).status == KNOWN
    for s in (6, 7, 13, 14):
        assert existence_status(EtfType(14, -1, s)).status == UNKNOWN


def test_existence_negative_families():
    assert existence_status(EtfType(2, -1, 9)).status == KNOWN
    st = existence_status(EtfType(5, -1, 9))
    assert st.status == KNOWN and "280" in st.witness
    assert existence_status(EtfType(7, -1, 6)).status == KNOWN
    assert existence_status(EtfType(10, -1, 5)).status == KNOWN   # sporadic
    assert existence_status(EtfType(6, -1, 11)).status == KNOWN   # sporadic
    assert existence_status(EtfType(6, -1, 2)).status == KNOWN    # SIC
    st = existence_status(EtfType(12, -1, 35))
    assert st.status == KNOWN and "TD-extension" in st.witness
    assert existence_status(EtfType(9, -1, 9)).status == KNOWN    # hyperoval
    assert existence_status(EtfType(11, -1, 21)).status == UNKNOWN


def test_existence_positive_families():
    assert existence_status(EtfType(1, 1, 7)).status == CONSTRUCTIBLE
    assert existence_status(EtfType(3, 1, 4)).status == CONSTRUCTIBLE
    assert existence_status(EtfType(4, 1, 5)).status == CONSTRUCTIBLE
    assert existence_status(EtfType(5, 1, 5)).status == CONSTRUCTIBLE
    assert existence_status(EtfType(2, 1, 7)).status == KNOWN
    assert existence_status(EtfType(7, 1, 7)).status == KNOWN
    assert existence_status(EtfType(7, 1, 8)).status == CONSTRUCTIBLE
    assert existence_status(EtfType(7, 1, 57)).status == KNOWN    # geometry
    assert existence_status(EtfType(6, 1, 3)).status == KNOWN     # SIC S^2-1
    assert existence_status(EtfType(7, 1, 14)).status == ASYMPTOTIC


def test_existence_precondition():
    with pytest.raises(ConstructionError):
        existence_status(EtfType(4, -1, 5))     # 4 does not divide 30
    with pytest.raises(ConstructionError):
        existence_status(EtfType(3, -1, 1))     # S < 2


# ---------------------------------------------------------------------------
# two-parameter difference-set family classification


def test_chen_pinned():
    assert EtfType(4, -1, 3) in check_chen_classification(2, 1)
    assert EtfType(3, -1, 5) in check_chen_classification(3, 1)
    types = check_chen_classification(5, 1)
    assert types == [EtfType(2, 1, 9)]
    assert not any(t.L == -1 and t.K >= 4 for t in types)


def test_chen_larger():
    # J=2, Q=2 gives the next member of the K=4 geometric family
    types = check_chen_classification(2, 2)
    assert EtfType(4, -1, 11) in types
    with pytest.raises(ConstructionError):
        check_chen_classification(1, 1)
