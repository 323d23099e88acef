"""R matrix, metric, and projector identities."""

from fractions import Fraction

import pytest

from qortho.errors import BadN
from qortho.linalg import SqMat, classical_mat, pack, rank
from qortho.rmatrix import (
    GroupShape, build_metric, build_projectors, build_R, build_rhat,
    build_rho, check_char_eq, check_r_reality, check_ybe,
)
from qortho.scalars import ConjRegime, Scalar

ONE = Scalar.one()
Q = Scalar.q_power(1)
QI = Scalar.q_power(-1)
LAM = Q - QI


def R_(R, N, ab, cd):
    return R.get(pack(ab, N), pack(cd, N))


def test_rho_examples():
    assert build_rho(4) == [1, 0, 0, -1]
    assert build_rho(5) == [Fraction(3, 2), Fraction(1, 2), 0,
                            Fraction(-1, 2), Fraction(-3, 2)]
    assert build_rho(6) == [2, 1, 0, 0, -1, -2]
    for N in range(3, 10):
        rho = build_rho(N)
        for a in range(1, N + 1):
            assert rho[a - 1] + rho[N - a] == 0


def test_bad_n():
    with pytest.raises(BadN):
        build_rho(2)
    with pytest.raises(BadN):
        build_R(0)
    with pytest.raises(BadN):
        GroupShape(3.0)


def test_metric_entries():
    C3 = build_metric(3)
    assert C3.get(1, 3) == Scalar.s_power(-1)
    assert C3.get(2, 2) == ONE
    assert C3.get(3, 1) == Scalar.s_power(1)
    C4 = build_metric(4)
    assert C4.get(1, 4) == QI
    assert C4.get(2, 3) == ONE
    assert C4.get(3, 2) == ONE
    assert C4.get(4, 1) == Q
    assert len(C4.entries) == 4


def test_metric_self_inverse():
    for N in range(3, 8):
        C = build_metric(N)
        assert C * C == SqMat.identity(N)
        assert all(c == N + 1 - r for (r, c) in C.entries)


def test_r_entries_n3():
    R = build_R(3)
    assert R_(R, 3, (1, 1), (1, 1)) == Q
    assert R_(R, 3, (2, 2), (2, 2)) == ONE
    assert R_(R, 3, (1, 3), (1, 3)) == QI
    assert R_(R, 3, (3, 1), (1, 3)) == LAM * (ONE - QI)
    assert R_(R, 3, (2, 1), (1, 2)) == LAM
    assert R_(R, 3, (2, 2), (1, 3)) == -LAM * Scalar.s_power(-1)
    assert R_(R, 3, (1, 2), (2, 1)).is_zero()


def test_r_classical_identity():
    for N in range(3, 7):
        assert classical_mat(build_R(N)) == SqMat.identity(N * N)


def test_ybe_passes():
    for N in (3, 4, 5):
        ok, witness = check_ybe(build_R(N), N)
        assert ok and witness is None


def test_ybe_negative():
    N = 4
    R = build_R(N)
    bad = dict(R.entries)
    bad[(pack((1, 1), N), pack((1, 1), N))] = Q + ONE
    ok, witness = check_ybe(SqMat(N * N, bad), N)
    assert not ok
    assert set(witness) == {"row", "col", "lhs", "rhs"}
    assert witness["lhs"] != witness["rhs"]


def test_projector_algebra():
    for N in (3, 4, 5):
        P0, PA, PS, Rhat = build_projectors(N)
        I = SqMat.identity(N * N)
        assert PA * PA == PA
        assert P0 * P0 == P0
        assert (PA * P0).is_zero() and (P0 * PA).is_zero()
        assert P0 + PA + PS == I
        assert PS * PS == PS
        assert P0.trace() == ONE
        assert rank(PA) == N * (N - 1) // 2
        # spectral decomposition of the flipped R matrix
        assert Rhat == Q * PS - QI * PA + Scalar.q_power(1 - N) * P0


def test_char_eq():
    for N in (3, 4, 5, 6):
        assert check_char_eq(N)


def test_char_eq_negative():
    # the unflipped R does not satisfy the cubic
    N = 4
    R = build_R(N)
    I = SqMat.identity(N * N)
    prod = ((R - Q * I) * (R + QI * I) * (R - Scalar.q_power(1 - N) * I))
    assert not prod.is_zero()


def test_r_reality():
    for N in (3, 4, 5):
        R = build_R(N)
        assert check_r_reality(R, ConjRegime.REAL_Q)
        assert check_r_reality(R, ConjRegime.UNIT_MODULUS_Q)


def test_r_reality_negative():
    N = 4
    R = build_R(N)
    bad = dict(R.entries)
    key = (pack((1, 1), N), pack((1, 1), N))
    bad[key] = bad[key] * Scalar.i_unit()
    assert not check_r_reality(SqMat(N * N, bad), ConjRegime.REAL_Q)


def test_rhat_flip():
    N = 3
    R = build_R(N)
    Rhat = build_rhat(R, N)
    assert Rhat.get(pack((1, 2), N), pack((1, 2), N)) == R_(R, N, (2, 1), (1, 2))
    assert Rhat * Rhat.transpose() is not None  # structural smoke only
