"""The stored display tables against freshly computed objects.  Everything in
closedforms is data transcribed once; these tests are the only place the
transcriptions and the computations meet."""

import pytest

from dworklie import VecField, modular_vf, resolve_chart, sl2_triple, truncate_poly
from dworklie.closedforms import (ACTION, REFERENCE, TRUNCATED, parse_field)
from dworklie.group import act, symbolic_elem


def as_field(ch, table):
    return VecField(ch.ring, parse_field(ch.ring, table))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_modular_display(n):
    ch = resolve_chart(n)
    R, _ = modular_vf(n)
    assert R == as_field(ch, REFERENCE[n]["modular"])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weight_display(n):
    ch = resolve_chart(n)
    assert sl2_triple(n).Hf == as_field(ch, REFERENCE[n]["weight"])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lowering_display(n):
    ch = resolve_chart(n)
    assert sl2_triple(n).F == as_field(ch, REFERENCE[n]["lowering"])


@pytest.mark.parametrize("n", [2, 4])
def test_relation_display(n):
    ch = resolve_chart(n)
    want = REFERENCE[n]["relation"]
    lhs, rhs = want.split(" = ")
    assert lhs == f"{ch.pivot_var}^2"
    from dworklie import parse_ratfn
    assert parse_ratfn(ch.ring, rhs) == ch.kappa * ch.disc


@pytest.mark.parametrize("n", [3, 4])
def test_truncation_display(n):
    ch = resolve_chart(n)
    R, _ = modular_vf(n)
    assert truncate_poly(R) == as_field(ch, TRUNCATED[n])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_action_display(n):
    g = symbolic_elem(n)
    formulas = act(n, g=g)
    want = parse_field(g.ring, ACTION[n])
    assert set(formulas) == set(want)
    for v, rf in want.items():
        assert formulas[v] == rf, f"moved coordinate {v} disagrees"
