"""Rational functions over a Ring, kept in a canonical normal form.

Invariants after every operation:
  * denominator has integer coefficients (scalar 1), content 1, positive leading
    coefficient, and shares no polynomial factor with the numerator;
  * in a ring with a slot relation the denominator is free of the pivot and the
    numerator has pivot degree <= 1.
Equality of canonical forms is therefore structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from .ring import (Poly, _content, _lead, _ordkey, _tadd, _tdiv_strict, _teval,
                   _tgcd, _tmul, _tneg, _tpow, _tscale)


class RatFn:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = num.ring.one
        self.num, self.den = _normalize(num, den)

    @property
    def ring(self):
        return self.num.ring

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_const(self):
        return self.num.is_const and self.den.is_const

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    # -- constructors -------------------------------------------------------
    @staticmethod
    def of(ring, value):
        """Lift an int/Fraction/Poly to a RatFn."""
        if isinstance(value, RatFn):
            return value
        if isinstance(value, Poly):
            return RatFn(value)
        return RatFn(ring.const(Fraction(value)))

    @staticmethod
    def var(ring, name):
        return RatFn(ring.var(name))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFn.of(self.ring, other)
        if isinstance(other, Poly):
            return RatFn(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        num = a.num * b.den + b.num * a.den
        return RatFn(num, a.den * b.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        r = RatFn.__new__(RatFn)
        r.num, r.den = -self.num, self.den
        return r

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return RatFn(self.ring.zero)
        # cross-cancellation keeps the gcds small
        g1 = _tgcd(self.num.terms, o.den.terms, self.ring.nvars)
        g2 = _tgcd(o.num.terms, self.den.terms, self.ring.nvars)
        n1 = Poly(self.ring, _tdiv_strict(self.num.terms, g1), self.num.den)
        d2 = Poly(self.ring, _tdiv_strict(o.den.terms, g1), o.den.den)
        n2 = Poly(self.ring, _tdiv_strict(o.num.terms, g2), o.num.den)
        d1 = Poly(self.ring, _tdiv_strict(self.den.terms, g2), self.den.den)
        return RatFn(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        assert not self.is_zero, "inverse of zero"
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFn.of(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- calculus / evaluation ---------------------------------------------
    def derive(self, var):
        """Formal partial derivative; a relation pivot counts as an independent slot."""
        p, q = self.num, self.den
        num = p.derive(var) * q - p * q.derive(var)
        return RatFn(num, q * q)

    def subs(self, mapping):
        """Substitute RatFn values for variables (others stay)."""
        ring = self.ring
        vals = {}
        for name, v in mapping.items():
            vals[ring.index[name]] = RatFn.of(ring, v)
        return _subs_poly(self.num, vals) / _subs_poly(self.den, vals)

    def eval(self, point):
        nv = self.num.eval(point)
        dv = self.den.eval(point)
        return nv / dv

    def lift(self, ring):
        return RatFn(self.num.lift(ring), self.den.lift(ring))

    def __repr__(self):
        return ratfn_string(self)


def _subs_poly(p, vals):
    ring = p.ring
    out = RatFn.of(ring, 0)
    for e, c in p.terms.items():
        term = RatFn.of(ring, Fraction(c, p.den))
        for i, k in enumerate(e):
            if not k:
                continue
            if i in vals:
                term = term * vals[i] ** k
            else:
                term = term * RatFn(ring.var(ring.names[i]) ** k)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# normalization

def _normalize(num, den):
    ring = num.ring
    assert den.ring is ring, "mixed rings"
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return ring.zero, ring.one

    N, kn = ring.reduce_terms(num.terms)
    D, kd = ring.reduce_terms(den.terms)
    if not N:
        return ring.zero, ring.one
    if not D:
        raise ZeroDivisionError("denominator is zero under the slot relation")
    # value = (N/RD^kn) * beta / ((D/RD^kd) * alpha)
    net = kd - kn
    if net > 0:
        N = _tmul(N, _tpow(ring.rel_den, net))
    elif net < 0:
        D = _tmul(D, _tpow(ring.rel_den, -net))

    p = ring.pivot
    if p is not None and any(e[p] for e in D):
        conj = {e: (-c if e[p] else c) for e, c in D.items()}
        N = _tmul(N, conj)
        D = _tmul(D, conj)
        N, kn2 = ring.reduce_terms(N)
        D, kd2 = ring.reduce_terms(D)
        assert D and not any(e[p] for e in D), "pivot survived rationalization"
        net = kd2 - kn2
        if net > 0:
            N = _tmul(N, _tpow(ring.rel_den, net))
        elif net < 0:
            D = _tmul(D, _tpow(ring.rel_den, -net))

    g = _tgcd(N, D, ring.nvars)
    if len(g) > 1 or any(_lead(g)) or g[_lead(g)] != 1:
        N = _tdiv_strict(N, g)
        D = _tdiv_strict(D, g)

    q = Fraction(den.den, num.den)
    cn = _content(N)
    if cn > 1:
        N = {e: c // cn for e, c in N.items()}
        q *= cn
    cd = _content(D)
    if cd > 1:
        D = {e: c // cd for e, c in D.items()}
        q /= cd
    if D[_lead(D)] < 0:
        N, D = _tneg(N), _tneg(D)
    num_poly = Poly(ring, _tscale(N, q.numerator), q.denominator)
    den_poly = Poly(ring, D, 1)
    return num_poly, den_poly


# ---------------------------------------------------------------------------
# canonical serialization

def _mono_string(e, c, names):
    parts = []
    ac = abs(c)
    for nm, k in zip(names, e):
        if k == 1:
            parts.append(nm)
        elif k > 1:
            parts.append(f"{nm}^{k}")
    if not parts:
        return str(ac)
    if ac != 1:
        parts.insert(0, str(ac))
    return "*".join(parts)


def poly_string(terms, names=None):
    """Ascending graded-lex listing; names default to positional lookup by caller."""
    if not terms:
        return "0"
    if names is None:
        raise ValueError("variable names required")
    items = sorted(terms.items(), key=lambda kv: _ordkey(kv[0]))
    out = []
    for i, (e, c) in enumerate(items):
        m = _mono_string(e, c, names)
        if i == 0:
            out.append(f"-{m}" if c < 0 else m)
        else:
            out.append(f" - {m}" if c < 0 else f" + {m}")
    return "".join(out)


def ratfn_string(r):
    names = r.ring.names
    ns = poly_string(r.num.terms, names) if not r.num.is_zero else "0"
    D = _tscale(r.den.terms, r.num.den)
    if D == {(0,) * r.ring.nvars: 1}:
        return ns
    ds = poly_string(D, names)
    if len(r.num.terms) > 1:
        ns = f"({ns})"
    bare = len(D) == 1 and _is_bare_factor(D)
    if not bare:
        ds = f"({ds})"
    return f"{ns}/{ds}"


def _is_bare_factor(D):
    (e, c), = D.items()
    if not any(e):
        return True  # plain positive integer
    return c == 1 and sum(e) == 1  # single variable, exponent 1


# ---------------------------------------------------------------------------
# parsing (accepts everything the serializer emits, plus whitespace freedom)

class ParseError(ValueError):
    pass


def _tokenize(s):
    toks = []
    i, n = 0, len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and s[j].isdigit():
                j += 1
            toks.append(("int", s[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (s[j].isalnum() or s[j] == "_"):
                j += 1
            toks.append(("name", s[i:j]))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
            continue
        raise ParseError(f"bad character {ch!r} at {i}")
    toks.append(("end", ""))
    return toks


def parse_ratfn(ring, s):
    toks = _tokenize(s)
    pos = [0]

    def peek():
        return toks[pos[0]][0]

    def take(kind=None):
        k, v = toks[pos[0]]
        if kind is not None and k != kind:
            raise ParseError(f"expected {kind}, got {k} ({v!r})")
        pos[0] += 1
        return v

    def atom():
        k = peek()
        if k == "int":
            return RatFn.of(ring, int(take()))
        if k == "name":
            nm = take()
            if nm not in ring.index:
                raise ParseError(f"unknown variable {nm!r}")
            return RatFn.var(ring, nm)
        if k == "(":
            take()
            v = expr()
            take(")")
            return v
        raise ParseError(f"unexpected token {k}")

    def primary():
        v = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            k = int(take("int"))
            v = v ** (-k if neg else k)
        return v

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return primary()

    def term():
        v = unary()
        while peek() in ("*", "/"):
            op = take()
            w = unary()
            v = v * w if op == "*" else v / w
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    v = expr()
    if peek() != "end":
        raise ParseError("trailing input")
    return v


# ---------------------------------------------------------------------------
# randomized-evaluation equality oracle (second route, independent of the
# canonical-form equality)

def _split_pivot(T, p):
    if p is None:
        return dict(T), {}
    even, odd = {}, {}
    for e, c in T.items():
        base = e[:p] + (0,) + e[p + 1:]
        assert e[p] <= 1, "unreduced pivot power"
        (odd if e[p] else even)[base] = c
    return even, odd


def eq_by_random_eval(f, g, rng, trials=5):
    """Compare f and g at random rational points (pivot handled componentwise)."""
    ring = f.ring
    assert g.ring is ring
    p = ring.pivot
    fa, fb = _split_pivot(f.num.terms, p)
    ga, gb = _split_pivot(g.num.terms, p)
    fd, gd = f.den.terms, g.den.terms
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        assert attempts < 200, "could not find enough admissible sample points"
        pt = tuple(Fraction(rng.randint(-19, 19), rng.randint(1, 7))
                   for _ in range(ring.nvars))
        dfv = _teval(fd, pt)
        dgv = _teval(gd, pt)
        if dfv == 0 or dgv == 0:
            continue
        lhs_even = _teval(fa, pt) * dgv * g.num.den
        rhs_even = _teval(ga, pt) * dfv * f.num.den
        if lhs_even != rhs_even:
            return False
        lhs_odd = _teval(fb, pt) * dgv * g.num.den
        rhs_odd = _teval(gb, pt) * dfv * f.num.den
        if lhs_odd != rhs_odd:
            return False
        done += 1
    return True
