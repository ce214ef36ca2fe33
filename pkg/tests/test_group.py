"""Group layer: pairing preservation, factor decomposition, the right action
on the chart, and its derivatives at the identity."""

import random
from fractions import Fraction

import pytest

from dworklie import (RatFn, act, basis_pairs, basis_vf, compose,
                      decompose_elem, group_elem, infinitesimal, lie_gen,
                      resolve_chart, symbolic_elem)
from dworklie.errors import ZeroScalar
from dworklie.geometry import family_dims
from dworklie.group import _phi, subgroup_counts, symbolic_pair

# which signed basis field each one-parameter derivative lands on
INFINITESIMAL_SIGNS = {
    1: {1: ((1, 1), -1), 2: ((1, 2), 1)},
    2: {1: ((1, 1), -1), 2: ((1, 2), -1)},
    3: {1: ((1, 1), -1), 2: ((2, 2), -1), 3: ((1, 2), -1),
        4: ((1, 3), 1), 5: ((1, 4), 1), 6: ((2, 3), 1)},
    4: {1: ((1, 1), -1), 2: ((2, 2), -1), 3: ((1, 2), -1),
        4: ((1, 3), -1), 5: ((1, 4), -1), 6: ((2, 3), -1)},
}


def random_params(n, rng):
    mult, add = subgroup_counts(n)
    out = [Fraction(rng.choice([1, 2, 3, -1, -2, -3]), rng.randint(1, 4))
           for _ in range(mult)]
    out += [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            for _ in range(add)]
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symbolic_element_preserves_pairing(n):
    g = symbolic_elem(n)
    phi = _phi(g.ring, n)
    assert g.matrix.transpose() @ phi @ g.matrix == phi


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_decomposition_roundtrip(n):
    rng = random.Random(1000 + n)
    for _ in range(100):
        g = group_elem(n, random_params(n, rng))
        assert decompose_elem(n, g.matrix) == g.params


@pytest.mark.parametrize("n", [1, 2, 3])
def test_compose_matches_matrix_product(n):
    rng = random.Random(77 + n)
    g = group_elem(n, random_params(n, rng))
    h = group_elem(n, random_params(n, rng))
    gh = compose(g, h)
    assert gh.matrix == g.matrix @ h.matrix


def test_zero_scalar_rejected():
    with pytest.raises(ZeroScalar):
        group_elem(2, [Fraction(0), Fraction(1)])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_right_action_axiom_symbolic(n):
    # acting by g then h equals acting by the composite, with every
    # parameter kept symbolic
    g, h = symbolic_pair(n)
    moved = act(n, g=g)
    hg = act(n, g=h)
    via_two = {v: rf.subs(moved) for v, rf in hg.items()}
    via_one = act(n, g=compose(g, h))
    assert via_two == via_one


@pytest.mark.parametrize("n", [1, 2, 3])
def test_action_at_rational_points(n):
    # evaluated action agrees with substituting the point into the formulas
    ch = resolve_chart(n)
    rng = random.Random(5 + n)
    g = group_elem(n, random_params(n, rng))
    pt = {v: RatFn.of(ch.ring, Fraction(rng.randint(1, 5), rng.randint(1, 3)))
          for v in ch.coords}
    f1 = act(n, t=pt, g=g)
    f2 = {v: rf.subs(pt) for v, rf in act(n, g=g).items()}
    assert f1 == f2


@pytest.mark.parametrize("n", sorted(INFINITESIMAL_SIGNS))
def test_infinitesimal_action_lands_on_signed_basis(n):
    d, m, _ = family_dims(n)
    B = basis_vf(n)
    table = INFINITESIMAL_SIGNS[n]
    for i in range(1, d):
        V = infinitesimal(n, i)
        hits = [(pair, s) for pair in basis_pairs(n) for s in (1, -1)
                if V == (B[pair] if s == 1 else -B[pair])]
        assert hits == [table[i]], f"parameter {i} of n={n}"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_basis_matrices_kill_the_pairing(n):
    ch = resolve_chart(n)
    phi = ch.phi
    for a, b in basis_pairs(n):
        g = lie_gen(n, a, b, ch.ring)
        assert (g.transpose() @ phi + phi @ g).is_zero


def test_basis_pair_count():
    for n in (1, 2, 3, 4, 5, 6):
        d, m, _ = family_dims(n)
        assert len(basis_pairs(n)) == m * (m + 1)
        for a, b in basis_pairs(n):
            assert 1 <= a <= m and a <= b <= 2 * m + 1 - a
