"""Full Gauss-Manin connection on a chart and the inverse solver that turns a
prescribed connection matrix into the unique vector field realizing it.

The solver follows the constructive existence argument: entries (1,1) and
(1,2) of  T*S = dS + S*B(H)  form a 2x2 linear system for the two base
components, each carrier slot of S hands out one remaining component by
direct readout, and every other entry is a consistency or tangency residue
that must vanish identically."""

from __future__ import annotations

from .errors import LinearInconsistent, NoSuchField
from .linalg import MatF, OneFormMat, VecField, solve_linear
from .ratfn import RatFn


def connection_component(S, Bv, var):
    """(d_var S + S*Bv) * S^-1 for one coordinate direction."""
    return (S.derive(var) + S @ Bv) @ S.inverse()


_CONN = {}


def full_connection(chart):
    """OneFormMat A with A[v] = (d_v S + S*B[v]) * S^-1 over every chart
    variable; B[v] is zero except in the two base directions."""
    hit = _CONN.get(id(chart))
    if hit is not None and hit[0] is chart:
        return hit[1]
    S = chart.S
    Sinv = S.inverse()
    A = OneFormMat(chart.ring, chart.n + 1)
    for v in chart.coords:
        M = S.derive(v)
        Bv = chart.conn_base.comps.get(v)
        if Bv is not None:
            M = M + S @ Bv
        A.set(v, M @ Sinv)
    _CONN[id(chart)] = (chart, A)
    return A


def _pivot_corrections(chart):
    """dt_D expressed through dt1 and dt_{n+2} on the relation variety."""
    td = RatFn.var(chart.ring, chart.pivot_var)
    t1 = RatFn.var(chart.ring, "t1")
    c1 = chart.kappa * (t1 ** (chart.n + 1)) * (chart.n + 2) / (td * 2)
    cb = -(chart.kappa / (td * 2))
    return c1, cb


def tangent_fields(chart):
    """Coordinate lifts spanning the tangent sheaf: d/dv per free coordinate,
    with the pivot component forced by the slot relation for even n."""
    ring = chart.ring
    if chart.pivot_var is None:
        return [VecField(ring, {v: 1}) for v in chart.coords]
    c1, cb = _pivot_corrections(chart)
    out = []
    for v in chart.coords:
        if v == chart.pivot_var:
            continue
        comps = {v: RatFn.of(ring, 1)}
        if v == "t1":
            comps[chart.pivot_var] = c1
        elif v == chart.setup.base2:
            comps[chart.pivot_var] = cb
        out.append(VecField(ring, comps))
    return out


def check_pairing_invariance(chart, A=None):
    """A*Phi + Phi*A^T = 0 as a one-form identity on the chart variety.

    For even n the pivot direction is not free: its differential is rewritten
    through the base differentials before the components are required to
    vanish."""
    if A is None:
        A = full_connection(chart)
    phi = chart.phi
    E = {v: A.get(v) @ phi + phi @ A.get(v).transpose()
         for v in chart.coords}
    if chart.pivot_var is not None:
        Ep = E.pop(chart.pivot_var)
        c1, cb = _pivot_corrections(chart)
        E["t1"] = E["t1"] + Ep.scale(c1)
        E[chart.setup.base2] = E[chart.setup.base2] + Ep.scale(cb)
    return all(M.is_zero for M in E.values())


def vf_from_target(chart, target):
    """The unique vector field H with contract(full_connection, H) = target.

    Raises NoSuchField when any consistency or tangency residue is nonzero;
    by uniqueness, zero residue is equivalent to existence."""
    ring = chart.ring
    S = chart.S
    n = chart.n
    TS = target @ S
    SB1 = S @ chart.conn_base.get("t1")
    SB2 = S @ chart.conn_base.get(chart.setup.base2)
    try:
        res = solve_linear(
            ring,
            [[SB1.get1(1, 1), SB2.get1(1, 1)],
             [SB1.get1(1, 2), SB2.get1(1, 2)]],
            [TS.get1(1, 1), TS.get1(1, 2)])
    except LinearInconsistent:
        raise NoSuchField("base 2x2 system is inconsistent") from None
    if not res.unique:
        raise NoSuchField("base 2x2 system is degenerate")
    dt1, dtb = res.values
    M = TS - SB1.scale(dt1) - SB2.scale(dtb)

    comps = {"t1": dt1, chart.setup.base2: dtb}
    for slot, var in chart.indep_slots.items():
        comps[var] = M.get1(*slot)
    if chart.pivot_slot is not None:
        comps[chart.pivot_var] = M.get1(*chart.pivot_slot)
    H = VecField(ring, comps)

    if chart.pivot_slot is not None:
        td = RatFn.var(ring, chart.pivot_var)
        t1v = RatFn.var(ring, "t1")
        lhs = td * H.get(chart.pivot_var) * 2
        rhs = chart.kappa * (t1v ** (n + 1) * dt1 * (n + 2) - dtb)
        if lhs != rhs:
            raise NoSuchField("field is not tangent to the slot relation")

    handled = set(chart.indep_slots)
    if chart.pivot_slot is not None:
        handled.add(chart.pivot_slot)
    for (i, j), expr in chart.dep_exprs.items():
        if H.apply(expr) != M.get1(i, j):
            raise NoSuchField(f"consistency residue at dependent slot ({i},{j})")
        handled.add((i, j))
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            if (i, j) in handled:
                continue
            if not M.get1(i, j).is_zero:
                raise NoSuchField(f"nonzero residue at entry ({i},{j})")
    return H
