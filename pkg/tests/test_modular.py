"""The distinguished field, its couplings, the sl2 triple and the weight
grading."""

import pytest
from hypothesis import given, settings, strategies as st

from dworklie import (RatFn, basis_vf, full_connection, modular_vf,
                      quasi_degree, resolve_chart, sl2_triple, truncate_poly,
                      weights)
from dworklie.modular import yukawa_for

# weight vectors read off the displayed grading fields
WEIGHTS = {
    1: {"t1": 1, "t2": 2, "t3": 3},
    2: {"t1": 2, "t2": 2, "t3": 4, "t4": 8},
    3: {"t1": 1, "t2": 2, "t3": 3, "t4": 0, "t5": 5, "t6": 1, "t7": 2},
    4: {"t1": 1, "t2": 2, "t3": 3, "t4": 1, "t5": 2, "t6": 6, "t7": 0,
        "t8": 3},
}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_contraction_is_the_coupling_band(n):
    ch = resolve_chart(n)
    R, Y = modular_vf(n)
    assert full_connection(ch).contract(R) == Y.matrix()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_coupling_band_pairing_antisymmetry(n):
    ch = resolve_chart(n)
    _, Y = modular_vf(n)
    M = Y.matrix()
    assert (M @ ch.phi + ch.phi @ M.transpose()).is_zero


@pytest.mark.parametrize("n", [2, 3, 4])
def test_coupling_band_edges(n):
    # the band starts at 1 and ends at -1 (for n = 1 the single entry is 1:
    # the leading convention wins)
    ch = resolve_chart(n)
    Y = yukawa_for(ch)
    assert Y.coef(0) == RatFn.of(ch.ring, 1)
    assert Y.coef(n - 1) == RatFn.of(ch.ring, -1)
    assert yukawa_for(resolve_chart(1)).coef(0) == \
        RatFn.of(resolve_chart(1).ring, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_sl2_relations_are_verified_on_build(n):
    tr = sl2_triple(n)
    R, F, H = tr.E, tr.F, tr.Hf
    assert R.bracket(F) == H
    assert H.bracket(R) == R.scale(2)
    assert H.bracket(F) == F.scale(-2)


def test_sl2_case_split():
    # lowest dimension, doubled normalization, generic combination
    B1 = basis_vf(1)
    t1 = sl2_triple(1)
    assert t1.F == B1[(1, 2)] and t1.Hf == -B1[(1, 1)]
    B2 = basis_vf(2)
    t2 = sl2_triple(2)
    assert t2.F == B2[(1, 2)].scale(2) and t2.Hf == B2[(1, 1)].scale(-2)
    for n in (3, 4, 5):
        B = basis_vf(n)
        t = sl2_triple(n)
        assert t.F == B[(1, 2)]
        assert t.Hf == B[(2, 2)] - B[(1, 1)]


@pytest.mark.parametrize("n", sorted(WEIGHTS))
def test_weight_table(n):
    w, report = weights(n)
    assert w == WEIGHTS[n]
    assert all(ok for (_, _, _, ok) in report)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_modular_field_is_quasi_homogeneous(n):
    # every component of the field has degree w(v) + 2
    ch = resolve_chart(n)
    R, _ = modular_vf(n)
    w, _ = weights(n)
    for v in ch.coords:
        comp = R.get(v)
        if not comp.is_zero:
            assert quasi_degree(comp, w) == w[v] + 2


names3 = st.sampled_from(["t1", "t2", "t3", "t5", "t6", "t7"])


@given(st.lists(names3, min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_quasi_degree_is_additive(factors):
    ch = resolve_chart(3)
    w, _ = weights(3)
    f = RatFn.of(ch.ring, 1)
    total = 0
    for nm in factors:
        f = f * RatFn.var(ch.ring, nm)
        total += w[nm]
    assert quasi_degree(f, w) == total


def test_quasi_degree_none_for_mixed_terms():
    ch = resolve_chart(3)
    w, _ = weights(3)
    f = RatFn.var(ch.ring, "t1") + RatFn.var(ch.ring, "t2")
    assert quasi_degree(f, w) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_truncation_is_polynomial_and_idempotent(n):
    R, _ = modular_vf(n)
    T = truncate_poly(R)
    for v in T.vars():
        assert T.get(v).den.is_const
    assert truncate_poly(T) == T
