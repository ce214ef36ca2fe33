"""Exact multivariate polynomial arithmetic over Q, with an optional quadratic slot relation.

A polynomial is a dict mapping exponent tuples to nonzero ints plus a positive integer
denominator, with gcd(content, denominator) == 1.  All heavy arithmetic stays in the
integers; rational coefficients enter only through that single denominator.

Monomial order: graded lex, ties broken by the exponent of the highest variable first.
Variables are ordered by their position in Ring.names (earlier = lower).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd
from operator import add as _iadd


# ---------------------------------------------------------------------------
# term-dict helpers (dict[tuple[int, ...], int], coefficients never zero)

def _ordkey(e):
    return (sum(e), e[::-1])


def _lead(T):
    """Exponent tuple of the largest monomial."""
    return max(T, key=_ordkey)


def _tadd(A, B):
    out = dict(A)
    for e, c in B.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _tneg(A):
    return {e: -c for e, c in A.items()}


def _tscale(A, k):
    if k == 0:
        return {}
    return {e: c * k for e, c in A.items()}


def _tmul(A, B):
    if not A or not B:
        return {}
    if len(B) > len(A):
        A, B = B, A
    if len(B) == 1:
        ((eb, cb),) = B.items()
        if not any(eb):
            return {e: c * cb for e, c in A.items()}
        return {tuple(map(_iadd, e, eb)): c * cb for e, c in A.items()}
    out = {}
    get = out.get
    for eb, cb in B.items():
        for ea, ca in A.items():
            e = tuple(map(_iadd, ea, eb))
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _tpow(A, k):
    if k == 0:
        assert A, "0^0 of an empty term dict (width unknown)"
        return {(0,) * len(next(iter(A))): 1}
    out = None
    base = A
    while k:
        if k & 1:
            out = base if out is None else _tmul(out, base)
        k >>= 1
        if k:
            base = _tmul(base, base)
    return out if out is not None else {}


def _content(A):
    g = 0
    for c in A.values():
        g = igcd(g, c)
        if g == 1:
            return 1
    return g


def _tderive(T, v):
    out = {}
    for e, c in T.items():
        k = e[v]
        if k:
            e2 = e[:v] + (k - 1,) + e[v + 1:]
            s = out.get(e2, 0) + c * k
            if s:
                out[e2] = s
            else:
                del out[e2]
    return out


def _teval(T, point):
    """Evaluate at a tuple of Fractions."""
    total = Fraction(0)
    for e, c in T.items():
        v = Fraction(c)
        for x, k in zip(point, e):
            if k:
                v *= x ** k
        total += v
    return total


def _tdiv_exact(A, B):
    """Exact division of term dicts; returns the quotient or None if B does not divide A."""
    if not B:
        raise ZeroDivisionError("division by zero polynomial")
    if not A:
        return {}
    eB = _lead(B)
    cB = B[eB]
    Q = {}
    R = dict(A)
    while R:
        eR = _lead(R)
        diff = tuple(x - y for x, y in zip(eR, eB))
        if any(x < 0 for x in diff):
            return None
        q, rem = divmod(R[eR], cB)
        if rem:
            return None
        Q[diff] = q
        for e, c in B.items():
            e2 = tuple(x + y for x, y in zip(e, diff))
            s = R.get(e2, 0) - q * c
            if s:
                R[e2] = s
            else:
                del R[e2]
    return Q


def _tdiv_strict(A, B):
    Q = _tdiv_exact(A, B)
    assert Q is not None, "division expected to be exact"
    return Q


# ---------------------------------------------------------------------------
# multivariate gcd: integer content + primitive subresultant PRS.  A rigorous
# evaluation shortcut certifies the (very common) coprime case first: for any
# substitution of the other variables, deg_v gcd(A, B) <= deg gcd(A|pt, B|pt),
# so a degree-zero univariate image gcd proves the true gcd is free of v.

_GCD_RNG = random.Random(0x5eed)


def _uni_image(T, v, pt):
    """Collapse T to a univariate integer dict deg_v -> coeff at the point pt
    (pt: list of ints, entry at v ignored)."""
    out = {}
    for e, c in T.items():
        w = c
        for i, k in enumerate(e):
            if k and i != v:
                w *= pt[i] ** k
        if w:
            d = e[v]
            out[d] = out.get(d, 0) + w
    return {d: c for d, c in out.items() if c}


def _uni_gcd_deg(A, B):
    """Degree of gcd of two univariate integer dicts (Euclid with content strip)."""
    fa = [0] * (max(A) + 1)
    for d, c in A.items():
        fa[d] = c
    fb = [0] * (max(B) + 1)
    for d, c in B.items():
        fb[d] = c
    while fb and any(fb):
        while fb and fb[-1] == 0:
            fb.pop()
        if not fb:
            break
        g = 0
        for c in fb:
            g = igcd(g, c)
        if g > 1:
            fb = [c // g for c in fb]
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        # pseudo-reduce fa by fb (one leading-term kill per pass)
        lb = fb[-1]
        la = fa[-1]
        shift = len(fa) - len(fb)
        fa = [c * lb for c in fa]
        for i, c in enumerate(fb):
            fa[i + shift] -= la * c
        while fa and fa[-1] == 0:
            fa.pop()
        fa, fb = fb, fa
    return len(fa) - 1


def _certify_coprime(A, B, shared, nv):
    """True only with proof that gcd(A, B) is free of every shared variable."""
    for v in shared:
        certified = False
        misses = 0
        for _ in range(8):
            pt = [_GCD_RNG.randint(-9, 9) for _ in range(nv)]
            ia = _uni_image(A, v, pt)
            ib = _uni_image(B, v, pt)
            if not ia or not ib:
                continue  # degenerate point, resample
            if _uni_gcd_deg(ia, ib) == 0:
                certified = True
                break
            misses += 1
            if misses >= 2:
                break  # plausibly a real common factor: let PRS decide
        if not certified:
            return False
    return True


def _uni_view(T, v):
    """Split T into dict deg_v -> coefficient term-dict (v-exponent zeroed)."""
    out = {}
    for e, c in T.items():
        k = e[v]
        base = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[base] = c
    return out


def _uni_join(U, v):
    out = {}
    for k, coeff in U.items():
        for e, c in coeff.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return out


def _prem(A, B, nv):
    """Pseudo-remainder in the main variable: lc(B)^(dA-dB+1) * A = Q*B + R."""
    dB = max(B)
    lB = B[dB]
    R = {d: dict(c) for d, c in A.items()}
    e = max(A) - dB + 1
    while R:
        dR = max(R)
        if dR < dB:
            break
        lR = R.pop(dR)
        e -= 1
        Rn = {d: _tmul(c, lB) for d, c in R.items()}
        for d, c in B.items():
            if d == dB:
                continue
            sh = d + dR - dB
            t = _tmul(c, lR)
            cur = Rn.get(sh)
            Rn[sh] = _tadd(cur, _tneg(t)) if cur is not None else _tneg(t)
        R = {d: c for d, c in Rn.items() if c}
    if e > 0 and R:
        m = _tpow(lB, e)
        R = {d: _tmul(c, m) for d, c in R.items()}
    return R


def _coeff_gcd(U, nv):
    """Recursive gcd of all coefficient dicts of a univariate view."""
    g = {}
    for coeff in U.values():
        g = _tgcd(g, coeff, nv)
        if g == {(0,) * nv: 1}:
            break
    return g


def _subres_prim_gcd(A, B, nv):
    """Primitive gcd in the main variable of two primitive univariate views (or None for 1)."""
    if max(A) < max(B):
        A, B = B, A
    one = {(0,) * nv: 1}
    g, h = one, one
    while True:
        delta = max(A) - max(B)
        R = _prem(A, B, nv)
        if not R:
            break
        if max(R) == 0:
            return None
        denom = _tmul(g, _tpow(h, delta))
        Rq = {d: _tdiv_strict(c, denom) for d, c in R.items()}
        A, B = B, Rq
        g = A[max(A)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = _tdiv_strict(_tpow(g, delta), _tpow(h, delta - 1))
    return B


def _tgcd(A, B, nv):
    """Gcd of integer term dicts, sign-normalized to positive leading coefficient."""
    if not A:
        return _pos_lead(B)
    if not B:
        return _pos_lead(A)
    zero = (0,) * nv

    # common monomial factor
    ma = [min(e[i] for e in A) for i in range(nv)]
    mb = [min(e[i] for e in B) for i in range(nv)]
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(mono):
        A = {tuple(x - y for x, y in zip(e, mono)): c for e, c in A.items()}
        B = {tuple(x - y for x, y in zip(e, mono)): c for e, c in B.items()}
        ma = [x - y for x, y in zip(ma, mono)]
        mb = [x - y for x, y in zip(mb, mono)]

    ca, cb = _content(A), _content(B)
    c = igcd(ca, cb)
    if ca > 1:
        A = {e: x // ca for e, x in A.items()}
    if cb > 1:
        B = {e: x // cb for e, x in B.items()}

    def done(prim):
        out = _tmul(prim, {mono: c}) if (any(mono) or c != 1) else prim
        return _pos_lead(out)

    if len(A) == 1 or len(B) == 1:
        da = [min(e[i] for e in A) for i in range(nv)]
        db = [min(e[i] for e in B) for i in range(nv)]
        return done({tuple(min(x, y) for x, y in zip(da, db)): 1})
    if A == B or A == _tneg(B):
        return done(_pos_lead(A))
    if _tdiv_exact(A, B) is not None:
        return done(_pos_lead(B))
    if _tdiv_exact(B, A) is not None:
        return done(_pos_lead(A))

    shared = [i for i in range(nv)
              if any(e[i] for e in A) and any(e[i] for e in B)]
    if not shared:
        return done({zero: 1})
    if _certify_coprime(A, B, shared, nv):
        return done({zero: 1})
    v = min(shared, key=lambda i: max(e[i] for e in A) + max(e[i] for e in B))

    UA, UB = _uni_view(A, v), _uni_view(B, v)
    contA = _coeff_gcd(UA, nv)
    contB = _coeff_gcd(UB, nv)
    cont = _tgcd(contA, contB, nv)
    if contA != {zero: 1}:
        UA = {d: _tdiv_strict(cf, contA) for d, cf in UA.items()}
    if contB != {zero: 1}:
        UB = {d: _tdiv_strict(cf, contB) for d, cf in UB.items()}
    prim = _subres_prim_gcd(UA, UB, nv)
    if prim is None:
        res = cont
    else:
        pc = _coeff_gcd(prim, nv)
        if pc != {zero: 1}:
            prim = {d: _tdiv_strict(cf, pc) for d, cf in prim.items()}
        res = _tmul(cont, _uni_join(prim, v))
    return done(res)


def _pos_lead(T):
    if T and T[_lead(T)] < 0:
        return _tneg(T)
    return T


# ---------------------------------------------------------------------------

class Ring:
    """Ordered variable context.  May carry one relation pivot^2 = rel_num/rel_den
    (both sides free of the pivot) used to reduce pivot powers eagerly."""

    __slots__ = ("names", "index", "pivot", "rel_num", "rel_den", "_relpow",
                 "zero", "one")

    def __init__(self, names, pivot=None, rel_num=None, rel_den=None):
        self.names = tuple(names)
        assert len(set(self.names)) == len(self.names), "duplicate variable names"
        self.index = {s: i for i, s in enumerate(self.names)}
        self.pivot = pivot
        self.rel_num = rel_num
        self.rel_den = rel_den
        self._relpow = {0: ({(0,) * len(self.names): 1}, {(0,) * len(self.names): 1})}
        self.zero = Poly(self, {}, 1)
        self.one = Poly(self, {(0,) * len(self.names): 1}, 1)

    @property
    def nvars(self):
        return len(self.names)

    def var(self, name):
        i = self.index[name]
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {e: 1}, 1)

    def const(self, q):
        q = Fraction(q)
        if q == 0:
            return self.zero
        return Poly(self, {(0,) * self.nvars: q.numerator}, q.denominator)

    def poly(self, terms, den=1):
        return Poly(self, dict(terms), den)

    def with_relation(self, pivot_name, num, den):
        """New ring over the same variables where pivot^2 = num/den (Poly args)."""
        p = self.index[pivot_name]
        RN = _tscale(num.terms, den.den)
        RD = _tscale(den.terms, num.den)
        g = igcd(_content(RN), _content(RD))
        if g > 1:
            RN = {e: c // g for e, c in RN.items()}
            RD = {e: c // g for e, c in RD.items()}
        if RD[_lead(RD)] < 0:
            RN, RD = _tneg(RN), _tneg(RD)
        assert all(e[p] == 0 for e in RN), "relation right side touches the pivot"
        assert all(e[p] == 0 for e in RD), "relation denominator touches the pivot"
        return Ring(self.names, pivot=p, rel_num=RN, rel_den=RD)

    def extend(self, extra):
        """New ring with extra variables appended; relation carries over."""
        names = self.names + tuple(extra)
        pad = len(extra)
        r = Ring(names)
        if self.pivot is not None:
            r2 = Ring(names, pivot=self.pivot,
                      rel_num={e + (0,) * pad: c for e, c in self.rel_num.items()},
                      rel_den={e + (0,) * pad: c for e, c in self.rel_den.items()})
            return r2
        return r

    def lift_terms(self, T, src):
        """Re-key terms from a ring whose names are a prefix of ours."""
        assert self.names[: src.nvars] == src.names, "not a prefix extension"
        pad = self.nvars - src.nvars
        if pad == 0:
            return dict(T)
        return {e + (0,) * pad: c for e, c in T.items()}

    def _rel_pow(self, k):
        cache = self._relpow
        if k not in cache:
            n1, d1 = self._rel_pow(k - 1)
            cache[k] = (_tmul(n1, self.rel_num), _tmul(d1, self.rel_den))
        return cache[k]

    def reduce_terms(self, T):
        """Rewrite pivot^2 via the relation: returns (T', k) with T == T'/rel_den^k
        and pivot degree <= 1 in T'."""
        p = self.pivot
        if p is None or not T:
            return T, 0
        kmax = 0
        for e in T:
            k = e[p] // 2
            if k > kmax:
                kmax = k
        if kmax == 0:
            return T, 0
        out = {}
        for e, c in T.items():
            k = e[p] // 2
            r = e[p] - 2 * k
            base = e[:p] + (r,) + e[p + 1:]
            numk, _ = self._rel_pow(k)
            _, denk = self._rel_pow(kmax - k)
            factor = _tmul(numk, denk)
            for ef, cf in factor.items():
                e2 = tuple(x + y for x, y in zip(ef, base))
                s = out.get(e2, 0) + c * cf
                if s:
                    out[e2] = s
                else:
                    del out[e2]
        return out, kmax

    def __repr__(self):
        rel = "" if self.pivot is None else f", {self.names[self.pivot]}^2 bound"
        return f"Ring({', '.join(self.names)}{rel})"


class Poly:
    """Immutable polynomial; see module docstring for the representation."""

    __slots__ = ("ring", "terms", "den")

    def __init__(self, ring, terms, den=1):
        terms = {e: c for e, c in terms.items() if c}
        if den < 0:
            den = -den
            terms = _tneg(terms)
        assert den > 0, "zero denominator"
        if not terms:
            den = 1
        else:
            g = igcd(_content(terms), den)
            if g > 1:
                terms = {e: c // g for e, c in terms.items()}
                den //= g
        self.ring = ring
        self.terms = terms
        self.den = den

    # -- predicates ---------------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and not any(_lead(self.terms)))

    def const_value(self):
        assert self.is_const, "not a constant"
        if not self.terms:
            return Fraction(0)
        return Fraction(next(iter(self.terms.values())), self.den)

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.ring.index[var]
        return max(e[i] for e in self.terms)

    def weighted_degree(self, weights):
        """Common weighted degree of all monomials, or None if mixed."""
        if not self.terms:
            return None
        degs = {sum(w * k for w, k in zip(weights, e)) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    # -- arithmetic ---------------------------------------------------------
    def _chk(self, other):
        assert self.ring is other.ring, "mixed rings"

    def __add__(self, other):
        self._chk(other)
        a, b = self, other
        T = _tadd(_tscale(a.terms, b.den), _tscale(b.terms, a.den))
        return Poly(self.ring, T, a.den * b.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        p = Poly.__new__(Poly)
        p.ring, p.terms, p.den = self.ring, _tneg(self.terms), self.den
        return p

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Poly(self.ring, _tscale(self.terms, q.numerator),
                        self.den * q.denominator)
        self._chk(other)
        return Poly(self.ring, _tmul(self.terms, other.terms), self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert k >= 0
        return Poly(self.ring, _tpow(self.terms, k), self.den ** k)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.ring is other.ring and self.den == other.den
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.ring), self.den, frozenset(self.terms.items())))

    def derive(self, var):
        v = self.ring.index[var]
        p = Poly.__new__(Poly)
        p.ring, p.terms, p.den = self.ring, _tderive(self.terms, v), self.den
        return p if p.terms else self.ring.zero

    def eval(self, point):
        """point: dict name -> Fraction, must cover every variable that occurs."""
        pt = tuple(Fraction(point.get(nm, 0)) for nm in self.ring.names)
        return _teval(self.terms, pt) / self.den

    def lift(self, ring):
        return Poly(ring, ring.lift_terms(self.terms, self.ring), self.den)

    def __repr__(self):
        from .ratfn import poly_string  # local import to avoid a cycle
        s = poly_string(self.terms, self.ring.names) if self.terms else "0"
        return s if self.den == 1 else f"({s})/{self.den}"
