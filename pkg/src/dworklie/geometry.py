"""Base data of the family: dimension bookkeeping, the constant pairing form,
the two-parameter frame connection, and the moving pairing matrix.

Everything lives on the small base with coordinates t1 and t_{n+2}; the frame
has n+1 sections.  The pairing matrix recursion feeds on the frame connection
and is re-verified against its defining identity after construction (the last
frame-row coefficients are induction from low dimensions, so the check is a
real guard, not decoration)."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import OmegaInconsistent
from .linalg import MatF, OneFormMat, solve_linear
from .ratfn import RatFn


def family_dims(n):
    """(d, m, ncoords): chart dimension, pairing half-size, coordinate count."""
    assert n >= 1
    if n % 2:
        d = (n + 1) * (n + 3) // 4 + 1
        m = (n + 1) // 2
        ncoords = d
    else:
        d = n * (n + 2) // 4 + 1
        m = n // 2
        ncoords = d + 1
    return d, m, ncoords


class Setup:
    """Variable context for one dimension n.  c_value None keeps the scaling
    constant c symbolic; a Fraction pins it."""

    __slots__ = ("n", "d", "m", "rho", "ncoords", "c_value", "ring", "c",
                 "base1", "base2")

    def __init__(self, n, c_value=None):
        self.n = n
        self.d, self.m, self.ncoords = family_dims(n)
        self.rho = n % 2
        self.c_value = None if c_value is None else Fraction(c_value)
        names = tuple(f"t{i}" for i in range(1, self.ncoords + 1))
        if self.c_value is None:
            names = names + ("c",)
        from .ring import Ring
        self.ring = Ring(names)
        if self.c_value is None:
            self.c = RatFn.var(self.ring, "c")
        else:
            self.c = RatFn.of(self.ring, self.c_value)
        self.base1 = "t1"
        self.base2 = f"t{n + 2}"

    def rebind(self, ring):
        """Clone bound to a compatible ring (same names, e.g. with a relation)."""
        s = Setup.__new__(Setup)
        s.n, s.d, s.m, s.ncoords = self.n, self.d, self.m, self.ncoords
        s.rho, s.c_value = self.rho, self.c_value
        s.ring = ring
        s.c = (RatFn.var(ring, "c") if self.c_value is None
               else RatFn.of(ring, self.c_value))
        s.base1, s.base2 = self.base1, self.base2
        return s


def stirling2(k, j):
    """Stirling number of the second kind via the alternating binomial sum."""
    if j < 0 or j > k:
        return 0
    total = 0
    for i in range(j + 1):
        total += (-1) ** i * comb(j, i) * (j - i) ** k
    q, r = divmod(total, factorial(j))
    assert r == 0
    return q


def pairing_form(setup):
    """Constant pairing on the chart group: antidiagonal, split signs when n is
    odd (symplectic type), all ones when n is even (symmetric type)."""
    n = setup.n
    P = MatF.zeros(setup.ring, n + 1)
    for i in range(1, n + 2):
        val = 1
        if setup.rho and i > setup.m:
            val = -1
        P.set1(i, n + 2 - i, val)
    return P


def frame_connection(setup):
    """Connection matrix of the frame over the base, as a one-form in dt1 and
    dt_{n+2}.  The last row interpolates the low-dimension pattern; its
    correctness is enforced by the pairing identity check downstream."""
    n = setup.n
    ring = setup.ring
    t1 = RatFn.var(ring, "t1")
    tb = RatFn.var(ring, setup.base2)
    disc = t1 ** (n + 2) - tb
    B1 = MatF.zeros(ring, n + 1)
    B2 = MatF.zeros(ring, n + 1)
    for i in range(1, n + 1):
        B2.set1(i, i, RatFn.of(ring, Fraction(-i, n + 2)) / tb)
        B1.set1(i, i + 1, 1)
        B2.set1(i, i + 1, -t1 / (tb * (n + 2)))
    for j in range(1, n + 1):
        s2 = stirling2(n + 2, j)
        B1.set1(n + 1, j, -s2 * t1 ** j / disc)
        B2.set1(n + 1, j, s2 * t1 ** (j + 1) / (tb * disc * (n + 2)))
    s2 = stirling2(n + 2, n + 1)
    B1.set1(n + 1, n + 1, -s2 * t1 ** (n + 1) / disc)
    B2.set1(n + 1, n + 1,
            (Fraction(n * (n + 1), 2) * t1 ** (n + 2) + (n + 1) * tb)
            / (tb * disc * (n + 2)))
    return OneFormMat(setup.ring, n + 1, {"t1": B1, setup.base2: B2})


def _check_pairing_identity(setup, conn, omega):
    """d(pairing) == B * pairing + pairing * B^T, both base components."""
    for v in ("t1", setup.base2):
        B = conn.get(v)
        rhs = B @ omega + omega @ B.transpose()
        lhs = omega.derive(v)
        if lhs != rhs:
            return False
    return True


def pairing_matrix(setup, conn=None):
    """Moving pairing matrix on the frame.

    Entries vanish above the main antidiagonal; the antidiagonal itself is the
    closed alternating form, and each further antidiagonal is solved linearly
    from the compatibility identity with the frame connection.  Raises
    OmegaInconsistent if the recursion or the final identity check fails."""
    n = setup.n
    ring = setup.ring
    if conn is None:
        conn = frame_connection(setup)
    t1 = RatFn.var(ring, "t1")
    tb = RatFn.var(ring, setup.base2)
    disc = t1 ** (n + 2) - tb
    base = RatFn.of(ring, Fraction((-(n + 2)) ** n)) * setup.c / disc

    sign = -1 if setup.rho else 1  # transpose sign (-1)^n
    vals = {}
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            if i + j <= n + 1:
                vals[(i, j)] = RatFn.of(ring, 0)
    for j in range(1, n + 2):
        vals[(j, n + 2 - j)] = RatFn.of(ring, (-1) ** (j - 1)) * base

    B1 = conn.get("t1")
    B2 = conn.get(setup.base2)
    zero = RatFn.of(ring, 0)

    for s in range(n + 2, 2 * n + 2):
        reps = []
        for i in range(1, n + 2):
            j = s + 1 - i
            if 1 <= j <= n + 2 and j <= n + 1 and i <= j:
                if setup.rho and i == j:
                    vals[(i, j)] = zero  # skew diagonal
                    continue
                reps.append((i, j))
        if not reps:
            continue
        rep_ix = {p: k for k, p in enumerate(reps)}

        def ref(a, b, coeffs, const, factor):
            """Accumulate factor * omega_{a,b} into the running equation."""
            if not (1 <= a <= n + 1 and 1 <= b <= n + 1):
                return const
            if (a, b) in vals:
                return const + factor * vals[(a, b)]
            key, sgn = ((a, b), 1) if a <= b else ((b, a), sign)
            if key in vals:
                return const + factor * sgn * vals[key]
            k = rep_ix.get(key)
            assert k is not None, f"reference to unsolved level: {a},{b}"
            coeffs[k] = coeffs[k] + factor * sgn
            return const

        rows, rhs = [], []
        for i in range(1, n + 2):
            j = s - i
            if not (1 <= j <= n + 1):
                continue
            for B, v in ((B1, "t1"), (B2, setup.base2)):
                coeffs = [zero] * len(reps)
                const = zero
                for k in range(1, n + 2):
                    f = B.get1(i, k)
                    if not f.is_zero:
                        const = ref(k, j, coeffs, const, f)
                    g = B.get1(j, k)
                    if not g.is_zero:
                        const = ref(i, k, coeffs, const, g)
                lhs = vals[(i, j)].derive(v)
                rows.append(coeffs)
                rhs.append(lhs - const)
        try:
            res = solve_linear(ring, rows, rhs)
        except Exception as e:
            raise OmegaInconsistent(f"level {s + 1} unsolvable: {e}") from e
        if not res.unique:
            raise OmegaInconsistent(f"level {s + 1} underdetermined")
        for p, val in zip(reps, res.values):
            vals[p] = val
            a, b = p
            if a != b:
                vals[(b, a)] = RatFn.of(ring, sign) * val

    omega = MatF.zeros(ring, n + 1)
    for (i, j), val in vals.items():
        omega.set1(i, j, val)

    if not _check_pairing_identity(setup, conn, omega):
        raise OmegaInconsistent("pairing matrix fails its defining identity")
    tr = omega.transpose().scale(sign)
    if tr != omega:
        raise OmegaInconsistent("pairing matrix has the wrong transpose type")
    return omega
