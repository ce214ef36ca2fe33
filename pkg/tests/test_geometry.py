"""Base-layer oracles: dimension table, Stirling numbers, and the pairing
identity of the frame connection."""

import pytest

from dworklie import MatF, family_dims
from dworklie.geometry import (Setup, _check_pairing_identity,
                               frame_connection, pairing_form, pairing_matrix,
                               stirling2)

# chart dimension, pairing half-size and coordinate count per dimension
DIMS = {
    1: (3, 1, 3),
    2: (3, 1, 4),
    3: (7, 2, 7),
    4: (7, 2, 8),
    5: (13, 3, 13),
    6: (13, 3, 14),
}


@pytest.mark.parametrize("n", sorted(DIMS))
def test_family_dims_table(n):
    assert family_dims(n) == DIMS[n]


def test_family_dims_parity_step():
    # moving from odd n to n+1 adds one coordinate but no chart dimension
    for n in (1, 3, 5, 7, 9):
        d, m, nc = family_dims(n)
        d2, m2, nc2 = family_dims(n + 1)
        assert (d2, m2) == (d, m)
        assert nc2 == nc + 1


def _stirling_rec(k, j):
    if k == 0:
        return 1 if j == 0 else 0
    if j <= 0 or j > k:
        return 0
    return j * _stirling_rec(k - 1, j) + _stirling_rec(k - 1, j - 1)


def test_stirling_matches_recurrence():
    for k in range(9):
        for j in range(k + 2):
            assert stirling2(k, j) == _stirling_rec(k, j)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_moving_pairing_symmetry(n):
    s = Setup(n)
    om = pairing_matrix(s)
    if n % 2:
        assert om.transpose() == om.scale(-1)
    else:
        assert om.transpose() == om


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_frame_connection_preserves_pairing(n):
    s = Setup(n)
    assert _check_pairing_identity(s, frame_connection(s), pairing_matrix(s))


def test_constant_pairing_squares_to_sign():
    for n in (1, 2, 3, 4):
        s = Setup(n)
        P = pairing_form(s)
        expect = MatF.identity(s.ring, n + 1)
        if n % 2:
            expect = expect.scale(-1)
        assert P @ P == expect
