import pytest

from qortho.errors import (
    BadFamily, ConditionFailed, IdentityFailed, NoPlaneConjugation,
    Unclassifiable, WitnessNotAutomorphism,
)
from qortho.linalg import SqMat, bar_mat, classical_mat, inverse
from qortho.realforms import (
    CROSS, STAR, AutoMatrix, ConjugationSpec, RealFormLabel, auto_from_signs,
    build_mpp, canonical_D, check_auto_conditions, check_equivalence_witness,
    check_reality, check_sostar, classify, count_real_forms, dsecond_canonical,
    enumerate_autos, plane_conjugation_matrix, symplectic_j, _match_up_to_unit,
)
from qortho.rmatrix import build_metric
from qortho.scalars import ConjRegime, Scalar

REAL = ConjRegime.REAL_Q
UNIT = ConjRegime.UNIT_MODULUS_Q

one = Scalar.one()
iu = Scalar.i_unit()


def star(autos):
    return ConjugationSpec(STAR, autos, REAL)


def cross(autos):
    return ConjugationSpec(CROSS, autos, UNIT)


# -- families ------------------------------------------------------------


def test_canonical_even_is_middle_swap():
    D = canonical_D(4)
    assert D.mat == SqMat(4, {(1, 1): one, (2, 3): one, (3, 2): one, (4, 4): one})
    assert D.square_sign == 1
    assert D.mat * D.mat == SqMat.identity(4)


def test_canonical_odd_flips_middle_sign():
    D = canonical_D(5)
    assert D.mat == SqMat.diag([one, one, -one, one, one])
    assert D.mat * D.mat == SqMat.identity(5)


def test_dprime_counts_and_order():
    assert len(enumerate_autos(5, "dprime")) == 4
    assert len(enumerate_autos(7, "dprime")) == 8
    assert len(enumerate_autos(4, "dprime")) == 2
    assert len(enumerate_autos(6, "dprime")) == 4
    first = enumerate_autos(6, "dprime")[0]
    assert first.eps == (1,) * 6  # all-plus comes first
    assert first.mat == SqMat.identity(6)


def test_dprime_respects_prime_symmetry_and_middle():
    for N in (4, 5, 6, 7):
        for dp in enumerate_autos(N, "dprime"):
            eps = dp.eps
            assert all(eps[a] == eps[N - 1 - a] for a in range(N))
            if N % 2:
                assert eps[(N - 1) // 2] == 1
            else:
                assert eps[N // 2 - 1] == 1 and eps[N // 2] == 1


def test_dsecond_counts_and_squares():
    ds = enumerate_autos(4, "dsecond")
    assert len(ds) == 2
    assert [d.eps for d in ds] == [(1, 1, -1, -1), (-1, 1, -1, 1)]
    for d in ds:
        assert d.square_sign == -1
        assert d.mat * d.mat == -SqMat.identity(4)
    assert len(enumerate_autos(8, "dsecond")) == 8


def test_dsecond_rejected_for_odd_N():
    with pytest.raises(BadFamily):
        enumerate_autos(5, "dsecond")


def test_bad_sign_vectors_rejected():
    with pytest.raises(BadFamily):
        auto_from_signs(4, "dprime", "+-+-")  # breaks eps_j = eps_j'
    with pytest.raises(BadFamily):
        auto_from_signs(5, "dprime", "++-++")  # middle must be +
    with pytest.raises(BadFamily):
        auto_from_signs(4, "dsecond", "++--"[::-1])
    with pytest.raises(BadFamily):
        enumerate_autos(4, "nope")


def test_auto_from_signs_roundtrip():
    for N, fam in ((5, "dprime"), (6, "dprime"), (6, "dsecond")):
        for a in enumerate_autos(N, fam):
            signs = a.tag().split(":")[1]
            b = auto_from_signs(N, fam, signs)
            assert a == b


# -- automorphism conditions ----------------------------------------------


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_families_satisfy_auto_conditions(N):
    autos = [canonical_D(N)] + enumerate_autos(N, "dprime")
    if N % 2 == 0:
        autos += enumerate_autos(N, "dsecond")
    for a in autos:
        cert = check_auto_conditions(a, N)
        assert cert["square_sign"] == a.square_sign


def test_auto_conditions_reject_bad_diagonal():
    bad = SqMat.diag([one, one, one, Scalar.from_frac(2)])
    with pytest.raises(ConditionFailed) as err:
        check_auto_conditions(bad, 4)
    assert err.value.name == "DCD"
    assert err.value.witness is not None


def test_composed_sharp_dprime_squares_to_plus_one():
    for N in (4, 6):
        D = canonical_D(N)
        for dp in enumerate_autos(N, "dprime"):
            G = ConjugationSpec(STAR, [D, dp], REAL).composed(N)
            assert G * G == SqMat.identity(N)


# -- reality conditions ----------------------------------------------------


def test_reality_all_families_star():
    for N in (4, 5, 6):
        assert check_reality(canonical_D(N), STAR, N)
        for dp in enumerate_autos(N, "dprime"):
            assert check_reality(dp, STAR, N)
        if N % 2 == 0:
            for ds in enumerate_autos(N, "dsecond"):
                assert check_reality(ds, STAR, N)


def test_reality_all_families_cross():
    for N in (4, 5, 6):
        assert check_reality(canonical_D(N), CROSS, N)
        for dp in enumerate_autos(N, "dprime"):
            assert check_reality(dp, CROSS, N)
        if N % 2 == 0:
            for ds in enumerate_autos(N, "dsecond"):
                assert check_reality(ds, CROSS, N)


def test_reality_negatives():
    two = Scalar.from_frac(2)
    assert not check_reality(two * SqMat.identity(4), CROSS, 4)
    skew = SqMat.diag([-one, one, one, one])  # not prime-symmetric
    assert not check_reality(skew, STAR, 4)


# -- plane conjugation matrix ----------------------------------------------


def test_plane_matrix_star_sharp_N4():
    K = plane_conjugation_matrix(star([canonical_D(4)]), 4)
    q = Scalar.q_power(1)
    assert K == SqMat(4, {(1, 4): q, (2, 2): one, (3, 3): one,
                          (4, 1): Scalar.q_power(-1)})


def test_plane_matrix_star_plain_is_metric_transpose():
    for N in (3, 4, 5):
        K = plane_conjugation_matrix(star([]), N)
        assert K == build_metric(N).transpose()


def test_plane_matrix_cross_is_composed_auto():
    D = canonical_D(5)
    assert plane_conjugation_matrix(cross([D]), 5) == D.mat


def test_plane_matrix_refused_for_imaginary_family():
    with pytest.raises(NoPlaneConjugation):
        plane_conjugation_matrix(star([dsecond_canonical(4)]), 4)


def test_spec_regime_consistency_enforced():
    with pytest.raises(ValueError):
        ConjugationSpec(STAR, [], UNIT)
    with pytest.raises(ValueError):
        ConjugationSpec(CROSS, [], REAL)


# -- classification ---------------------------------------------------------


def test_classify_star_plain_is_compact():
    assert classify(star([]), 4) == RealFormLabel.so(4, 0, REAL)
    assert str(classify(star([]), 5)) == "SO(5,0)"


def test_classify_star_sharp_N4_is_lorentz():
    assert str(classify(star([canonical_D(4)]), 4)) == "SO(3,1)"


def test_classify_cross_fixtures():
    assert str(classify(cross([canonical_D(4)]), 4)) == "SO(3,1)"
    assert str(classify(cross([]), 4)) == "SO(2,2)"
    assert str(classify(cross([]), 5)) == "SO(3,2)"


def test_classify_odd_dprime_gives_so21():
    dp = auto_from_signs(3, "dprime", "-+-")
    assert str(classify(star([dp]), 3)) == "SO(2,1)"


def test_witness_pair_shares_label_odd_cross():
    # the sharp twist relabels the metric but not the real form
    assert classify(cross([canonical_D(5)]), 5) == classify(cross([]), 5)


def test_classify_sostar():
    lab = classify(star([dsecond_canonical(4)]), 4)
    assert lab == RealFormLabel.sostar(4, REAL)
    assert str(lab) == "SO*(4)"
    for ds in enumerate_autos(6, "dsecond"):
        assert str(classify(star([ds]), 6)) == "SO*(6)"


def test_classify_rejects_cross_with_imaginary_family():
    spec = ConjugationSpec(CROSS, [dsecond_canonical(4)], UNIT)
    with pytest.raises(Unclassifiable):
        classify(spec, 4)


def test_label_signature_normalized():
    lab = RealFormLabel.so(1, 3, REAL)
    assert lab.signature == (3, 1)
    assert str(lab) == "SO(3,1)"


# -- SO* structure -----------------------------------------------------------


@pytest.mark.parametrize("N", [4, 6])
def test_sostar_checks_pass(N):
    for ds in enumerate_autos(N, "dsecond"):
        assert check_sostar(N, ds)


def test_sostar_metric_normalization():
    for N in (4, 6):
        Mpp = build_mpp(N)
        Minv = inverse(Mpp)
        T = classical_mat(Minv.transpose() * build_metric(N) * Minv)
        assert T == SqMat.identity(N)


def test_sostar_transport_hits_symplectic_form():
    N = 4
    Mpp = build_mpp(N)
    X = classical_mat(bar_mat(Mpp, REAL) * build_metric(N).transpose()
                      * dsecond_canonical(N).mat * inverse(Mpp))
    assert X == symplectic_j(N)


def test_sostar_unit_scalar_absorbs_sign_of_J():
    N = 4
    Mpp = build_mpp(N)
    X = classical_mat(bar_mat(Mpp, REAL) * build_metric(N).transpose()
                      * dsecond_canonical(N).mat * inverse(Mpp))
    assert _match_up_to_unit(X, -symplectic_j(N)) is not None


def test_sostar_fails_on_corrupted_basis():
    N = 4
    Mpp = build_mpp(N)
    entries = dict(Mpp.entries)
    for c in (1, 4):  # flip the sign of the first basis row
        entries[(1, c)] = -entries[(1, c)]
    assert not check_sostar(N, dsecond_canonical(N), mpp=SqMat(N, entries))


# -- equivalence witnesses ----------------------------------------------------


def odd_cross_witness(N):
    n = (N - 1) // 2
    return SqMat.diag([iu] * n + [one] + [-iu] * n)


@pytest.mark.parametrize("N", [3, 5, 7])
def test_witness_odd_cross_sharp_vs_plain(N):
    A = odd_cross_witness(N)
    assert check_equivalence_witness(A, cross([canonical_D(N)]), cross([]), N)


@pytest.mark.parametrize("N", [4, 6, 8])
def test_witness_even_star_sharp_dprime_pairs(N):
    n = N // 2
    A = SqMat.diag([-one] * n + [one] * n)
    D = canonical_D(N)
    for dp in enumerate_autos(N, "dprime"):
        if dp.eps[0] != 1:
            continue
        partner_signs = "".join(
            "-" if (e == 1) != (j in (n - 1, n)) else "+"
            for j, e in enumerate(dp.eps))
        dp2 = auto_from_signs(N, "dprime", partner_signs)
        assert check_equivalence_witness(A, star([D, dp]), star([D, dp2]), N)
        assert classify(star([D, dp]), N) == classify(star([D, dp2]), N)


@pytest.mark.parametrize("N", [4, 6, 8])
def test_witness_imaginary_reduction_at_q1(N):
    n = N // 2
    shape_prime = lambda j: N + 1 - j
    target = dsecond_canonical(N)
    for ds in enumerate_autos(N, "dsecond"):
        entries = {}
        for j in range(1, n + 1):
            jp = shape_prime(j)
            if ds.eps[j - 1] == -1:
                entries[(j, jp)] = one
                entries[(jp, j)] = one
            else:
                entries[(j, j)] = one
                entries[(jp, jp)] = one
        A = SqMat(N, entries)
        assert check_equivalence_witness(A, star([ds]), star([target]), N,
                                         at_q1=True)


def test_witness_identity_fails_between_distinct_specs():
    with pytest.raises(IdentityFailed):
        check_equivalence_witness(SqMat.identity(5), cross([canonical_D(5)]),
                                  cross([]), 5)


def test_witness_requires_automorphism():
    A = SqMat.diag([one, Scalar.from_frac(2), one, one])
    with pytest.raises(WitnessNotAutomorphism):
        check_equivalence_witness(A, cross([]), cross([]), 4)


def test_witness_requires_matching_base():
    with pytest.raises(ValueError):
        check_equivalence_witness(SqMat.identity(4), star([]), cross([]), 4)


# -- counting -----------------------------------------------------------------


def test_count_real_odd():
    res = count_real_forms(5, REAL)
    assert res.count == 4
    assert res.caveat is None
    labels = [r["label"] for r in res.rows]
    assert "SO(5,0)" in labels
    assert all(lab.startswith("SO(") for lab in labels)
    specs = [tuple(r["spec"]["autos"]) for r in res.rows]
    assert len(set(specs)) == 4


def test_count_real_even_N4():
    res = count_real_forms(4, REAL)
    assert res.count == 5
    labels = sorted(r["label"] for r in res.rows)
    assert labels == ["SO(2,2)", "SO(3,1)", "SO(4,0)", "SO*(4)", "SO*(4)"]
    sig = {r["label"]: r["signature"] for r in res.rows}
    assert sig["SO(3,1)"] == [3, 1]
    assert sig["SO*(4)"] is None


def test_count_real_even_N6():
    res = count_real_forms(6, REAL)
    assert res.count == 10  # 2^3 + 2^1
    assert sum(r["label"] == "SO*(6)" for r in res.rows) == 4


def test_count_unit():
    assert count_real_forms(5, UNIT).count == 1
    assert count_real_forms(7, UNIT).count == 1
    res = count_real_forms(4, UNIT)
    assert res.count == 2
    assert sorted(r["label"] for r in res.rows) == ["SO(2,2)", "SO(3,1)"]
    res6 = count_real_forms(6, UNIT)
    assert sorted(r["label"] for r in res6.rows) == ["SO(3,3)", "SO(4,2)"]


def test_count_flags_triality_dimension():
    assert count_real_forms(8, REAL).caveat is not None
    assert count_real_forms(8, UNIT).caveat is not None
    assert count_real_forms(6, REAL).caveat is None


def test_count_rows_carry_spec_json():
    row = count_real_forms(5, REAL).rows[0]
    assert row["spec"]["base"] == "star"
    assert row["spec"]["regime"] == "real"
    assert isinstance(row["spec"]["autos"], list)
