"""Symmetry group of the framed family: canonical Lie-algebra basis,
one-parameter subgroup factors, assembled group elements, the right action on
chart coordinates, and the infinitesimal fields of that action.

Elements are kept in factored normal form: the multiplicative (diagonal)
factors first, then one unipotent factor per additive subgroup in lexicographic
index order.  ``decompose_elem`` inverts the assembly and is verified by an
identity end-check rather than trusted.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import resolve_chart
from .errors import ActionShapeViolation, DworkError, ZeroScalar
from .geometry import family_dims, pairing_form
from .linalg import MatF, VecField
from .ratfn import RatFn
from .ring import Poly


def basis_pairs(n):
    """Index pairs (a,b) of the canonical Lie-algebra basis."""
    _, m, _ = family_dims(n)
    return [(a, b) for a in range(1, m + 1)
            for b in range(a, 2 * m + 2 - a)]


def lie_gen(n, a, b, ring=None):
    """Constant basis matrix g_ab; sparse two-cell (or one-cell) pattern."""
    d, m, _ = family_dims(n)
    if not (1 <= a <= m and a <= b <= 2 * m + 1 - a):
        raise IndexError(f"basis indices ({a},{b}) out of range for n={n}")
    if ring is None:
        ring = resolve_chart(n).ring
    M = MatF.zeros(ring, n + 1)
    one = RatFn.of(ring, 1)
    M.set1(a, b, one)
    ra, rb = n + 2 - b, n + 2 - a
    if (ra, rb) != (a, b):
        sign = 1 if (n % 2 and b >= m + 1) else -1
        M.set1(ra, rb, RatFn.of(ring, sign))
    phi = _phi(ring, n)
    if not (M.transpose() @ phi + phi @ M).is_zero:
        raise DworkError(f"basis matrix ({a},{b}) violates the pairing identity")
    return M


def _phi(ring, n):
    """Constant pairing matrix over an arbitrary ring."""
    _, m, _ = family_dims(n)
    P = MatF.zeros(ring, n + 1)
    for i in range(1, n + 2):
        val = -1 if (n % 2 and i > m) else 1
        P.set1(i, n + 2 - i, RatFn.of(ring, val))
    return P


def subgroup_pairs(n):
    """Additive subgroup indices (i,j) in the fixed lexicographic order."""
    _, m, _ = family_dims(n)
    hi = (lambda i: n + 2 - i) if n % 2 else (lambda i: n + 1 - i)
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, hi(i) + 1)]


def subgroup_counts(n):
    """(multiplicative, additive) subgroup counts."""
    _, m, _ = family_dims(n)
    return m, len(subgroup_pairs(n))


def param_slot(n, i):
    """Meaning of 1-based parameter index i: ("mult", a) or ("add", (a,b))."""
    d, m, _ = family_dims(n)
    if not 1 <= i <= d - 1:
        raise IndexError(f"parameter index {i} out of range for n={n}")
    if i <= m:
        return ("mult", i)
    return ("add", subgroup_pairs(n)[i - m - 1])


def factor_matrix(n, i, gamma, ring):
    """Matrix of the i-th one-parameter subgroup at parameter value gamma."""
    kind, idx = param_slot(n, i)
    gamma = gamma if isinstance(gamma, RatFn) else RatFn.of(ring, gamma)
    _, m, _ = family_dims(n)
    M = MatF.identity(ring, n + 1)
    if kind == "mult":
        if gamma.is_zero:
            raise ZeroScalar(f"multiplicative parameter {i} is zero")
        a = idx
        M.set1(a, a, gamma.inverse())
        M.set1(n + 2 - a, n + 2 - a, gamma)
        return M
    a, b = idx
    ra, rb = n + 2 - b, n + 2 - a
    if (ra, rb) == (a, b):
        M.set1(a, b, gamma)
        return M
    if n % 2 and b >= m + 1:
        M.set1(a, b, gamma)
    else:
        M.set1(a, b, -gamma)
    M.set1(ra, rb, gamma)
    if n % 2 == 0 and b == (n + 2) // 2:
        M.set1(a, n + 2 - a, -(gamma * gamma) / 2)
    return M


class GroupElem:
    """Group element assembled from its subgroup parameters."""

    __slots__ = ("n", "ring", "params", "matrix")

    def __init__(self, n, ring, params, matrix):
        self.n = n
        self.ring = ring
        self.params = params
        self.matrix = matrix

    def __repr__(self):
        return f"GroupElem(n={self.n}, params={self.params})"


def group_elem(n, params, c=None, ring=None):
    """Assemble an element from d-1 parameters (multiplicative ones first).

    Raises ZeroScalar on a vanishing multiplicative parameter; the pairing
    invariance of the assembled matrix is checked, not assumed.
    """
    d, m, _ = family_dims(n)
    if len(params) != d - 1:
        raise IndexError(f"expected {d - 1} parameters, got {len(params)}")
    if ring is None:
        ring = resolve_chart(n, c).ring
    vals = [p if isinstance(p, RatFn) else RatFn.of(ring, p) for p in params]
    M = MatF.identity(ring, n + 1)
    for i, gamma in enumerate(vals, start=1):
        M = M @ factor_matrix(n, i, gamma, ring)
    phi = _phi(ring, n)
    if M.transpose() @ phi @ M != phi:
        raise DworkError("assembled element does not preserve the pairing")
    return GroupElem(n, ring, vals, M)


def identity_params(n):
    mult, add = subgroup_counts(n)
    return [Fraction(1)] * mult + [Fraction(0)] * add


def symbolic_elem(n, c=None, prefix="g"):
    """Fully symbolic element over the chart ring extended by parameters."""
    d, _, _ = family_dims(n)
    names = tuple(f"{prefix}{i}" for i in range(1, d))
    ring = resolve_chart(n, c).ring.extend(names)
    return group_elem(n, [RatFn.var(ring, nm) for nm in names], ring=ring)


def symbolic_pair(n, c=None, prefixes=("g", "h")):
    """Two independent symbolic elements over one shared ring."""
    d, _, _ = family_dims(n)
    names = tuple(f"{p}{i}" for p in prefixes for i in range(1, d))
    ring = resolve_chart(n, c).ring.extend(names)
    out = []
    for p in prefixes:
        vals = [RatFn.var(ring, f"{p}{i}") for i in range(1, d)]
        out.append(group_elem(n, vals, ring=ring))
    return tuple(out)


def compose(g, h):
    """Product element; parameters recovered by decomposition."""
    if g.ring is not h.ring:
        raise DworkError("elements live over different rings")
    M = g.matrix @ h.matrix
    params = decompose_elem(g.n, M)
    return GroupElem(g.n, g.ring, params, M)


def decompose_elem(n, M):
    """Recover subgroup parameters from an assembled matrix.

    Diagonal entries give the multiplicative parameters directly; the
    unipotent remainder is peeled greedily in assembly order.  The peel must
    end at the identity matrix or the input was not in the group."""
    d, m, _ = family_dims(n)
    ring = M.ring
    params = []
    U = M
    for a in range(1, m + 1):
        gamma = M.get1(n + 2 - a, n + 2 - a)
        if gamma.is_zero:
            raise ZeroScalar(f"diagonal entry for subgroup {a} is zero")
        params.append(gamma)
        U = factor_matrix(n, a, gamma.inverse(), ring) @ U
    for k, (i, j) in enumerate(subgroup_pairs(n), start=m + 1):
        ra, rb = n + 2 - j, n + 2 - i
        cell = (i, j) if (ra, rb) == (i, j) else (ra, rb)
        gamma = U.get1(*cell)
        params.append(gamma)
        U = factor_matrix(n, k, -gamma, ring) @ U
    if U != MatF.identity(ring, n + 1):
        raise DworkError("matrix is not a product of the subgroup factors")
    return params


def act(n, t=None, g=None, c=None):
    """Right action on chart coordinates.

    Returns {var: formula} over the element's ring.  With t (a {var: value}
    map) given, the formulas are evaluated at that point instead.  The moved
    frame is checked against the chart normal form: unit corner, lower
    triangularity, dependent-slot equations, and the quadratic relation."""
    ch = resolve_chart(n, c)
    if g is None:
        g = symbolic_elem(n, c)
    ring = g.ring
    S = ch.S if ring is ch.ring else ch.S.map(lambda r: r.lift(ring))
    g1 = g.matrix.get1(n + 1, n + 1)
    D = MatF.zeros(ring, n + 1)
    for k in range(1, n + 2):
        D.set1(k, k, g1 ** k)
    Sp = g.matrix.transpose() @ S @ D
    if Sp.get1(1, 1) != RatFn.of(ring, 1):
        raise ActionShapeViolation("moved frame has a non-unit corner")
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            if not Sp.get1(i, j).is_zero:
                raise ActionShapeViolation(
                    f"moved frame is not lower triangular at ({i},{j})")
    new = {
        "t1": RatFn.var(ring, "t1") * g1,
        ch.setup.base2: RatFn.var(ring, ch.setup.base2) * g1 ** (n + 2),
    }
    for slot, var in ch.indep_slots.items():
        new[var] = Sp.get1(*slot)
    if ch.pivot_slot is not None:
        new[ch.pivot_var] = Sp.get1(*ch.pivot_slot)
    for (i, j), expr in ch.dep_exprs.items():
        want = expr.lift(ring).subs(new)
        if Sp.get1(i, j) != want:
            raise ActionShapeViolation(
                f"dependent slot ({i},{j}) broke its defining equation")
    if ch.pivot_slot is not None:
        kap = ch.kappa.lift(ring)
        lhs = new[ch.pivot_var] ** 2
        rhs = kap * (new["t1"] ** (n + 2) - new[ch.setup.base2])
        if lhs != rhs:
            raise ActionShapeViolation("moved point violates the relation")
    if t is not None:
        pt = {v: (x if isinstance(x, RatFn) else RatFn.of(ring, x))
              for v, x in t.items()}
        return {v: rf.subs(pt) for v, rf in new.items()}
    return new


def lower_ratfn(rf, ring):
    """Drop trailing unused variables, landing in the smaller ring."""
    k = ring.nvars

    def drop(p):
        terms = {}
        for e, cf in p.terms.items():
            if any(e[k:]):
                raise DworkError("value still involves removed parameters")
            terms[e[:k]] = terms.get(e[:k], 0) + cf
        return Poly(ring, terms, p.den)

    return RatFn(drop(rf.num), drop(rf.den))


def infinitesimal(n, i, c=None):
    """Derivative of the action along parameter i at the identity element."""
    ch = resolve_chart(n, c)
    kind, _ = param_slot(n, i)
    ring = ch.ring.extend(("gp",))
    gamma = RatFn.var(ring, "gp")
    params = [RatFn.of(ring, p) for p in identity_params(n)]
    params[i - 1] = gamma
    g = group_elem(n, params, ring=ring)
    formulas = act(n, g=g, c=c)
    center = Fraction(1) if kind == "mult" else Fraction(0)
    comps = {}
    for v, rf in formulas.items():
        dv = rf.derive("gp").subs({"gp": center})
        comps[v] = lower_ratfn(dv, ch.ring)
    return VecField(ch.ring, comps)
