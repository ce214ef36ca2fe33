"""Full connection on the chart: pairing invariance, the field-from-matrix
solver and its failure mode."""

import pytest

from dworklie import (MatF, NoSuchField, RatFn, VecField,
                      check_pairing_invariance, full_connection, resolve_chart,
                      vf_from_target)
from dworklie.connection import tangent_fields
from dworklie.group import lie_gen


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pairing_invariance(n):
    assert check_pairing_invariance(resolve_chart(n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_solver_roundtrip_through_basis_matrices(n):
    # solve for the field of a transposed basis matrix, contract it back
    ch = resolve_chart(n)
    A = full_connection(ch)
    from dworklie.group import basis_pairs
    for a, b in basis_pairs(n):
        g = lie_gen(n, a, b, ch.ring).transpose()
        H = vf_from_target(ch, g)
        assert A.contract(H) == g


@pytest.mark.parametrize("n", [2, 3])
def test_solver_rejects_unreachable_target(n):
    # entry (1,3) is outside the contraction image for every field
    ch = resolve_chart(n)
    target = MatF.zeros(ch.ring, n + 1)
    target.set1(1, 3, RatFn.of(ch.ring, 1))
    with pytest.raises(NoSuchField):
        vf_from_target(ch, target)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_solver_is_linear_over_random_combination(n):
    ch = resolve_chart(n)
    A = full_connection(ch)
    from dworklie.group import basis_pairs
    pairs = basis_pairs(n)
    g1 = lie_gen(n, *pairs[0], ring=ch.ring).transpose()
    g2 = lie_gen(n, *pairs[-1], ring=ch.ring).transpose()
    t1 = RatFn.var(ch.ring, "t1")
    target = g1.scale(t1) + g2.scale(RatFn.of(ch.ring, 3))
    H = vf_from_target(ch, target)
    assert A.contract(H) == target


@pytest.mark.parametrize("n", [2, 4])
def test_tangent_fields_respect_the_relation(n):
    # 2*piv*T(piv) == kappa*T(disc): the relation stays constant along each
    # lift.  Stated through the components, since inside the quotient ring
    # the relation itself reduces to zero.
    ch = resolve_chart(n)
    piv = RatFn.var(ch.ring, ch.pivot_var)
    for T in tangent_fields(ch):
        assert T.get(ch.pivot_var) * piv * 2 == ch.kappa * T.apply(ch.disc)


def test_tangent_fields_count():
    for n in (1, 2, 3, 4):
        ch = resolve_chart(n)
        assert len(tangent_fields(ch)) == ch.d
