"""Univariate machinery: gcd, Sturm chains, root isolation, exact signs.

Everything operates on one-variable :class:`~inflectionary.poly.SparsePoly`
inputs with Fraction coefficients and is exact.  Internally polynomials
travel as ascending coefficient lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import SparsePoly, as_fraction

DEFAULT_REFINE_WIDTH = Fraction(1, 2 ** 40)


# -- coefficient-list helpers -------------------------------------------------

def _coeffs(p: SparsePoly):
    name, coeffs = p.univariate_coeffs()
    return name, coeffs


def _strip(c):
    while c and not c[-1]:
        c.pop()
    return c


def _degree(c):
    return len(c) - 1


def _eval(c, t: Fraction) -> Fraction:
    value = Fraction(0)
    for coeff in reversed(c):
        value = value * t + coeff
    return value


def _derive(c):
    return [c[i] * i for i in range(1, len(c))]


def _neg_rem(a, b):
    """Return -(a mod b) for Fraction coefficient lists."""
    a = list(a)
    db = _degree(b)
    lead = b[-1]
    while _degree(a) >= db and a:
        shift = _degree(a) - db
        factor = a[-1] / lead
        for i in range(db + 1):
            a[shift + i] -= factor * b[i]
        a.pop()
        _strip(a)
    return [-v for v in a]


def _to_int_primitive(c):
    """Clear denominators and content; normalize the leading sign to +."""
    if not c:
        return []
    denom = 1
    for v in c:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    ints = [int(v * denom) for v in c]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _pseudo_rem_int(a, b):
    """Pseudo-remainder of integer coefficient lists (content removed)."""
    a = list(a)
    db = _degree(b)
    lead = b[-1]
    steps = _degree(a) - db + 1
    a = [v * lead ** steps for v in a]
    while a and _degree(a) >= db:
        shift = _degree(a) - db
        factor, rem = divmod(a[-1], lead)
        assert not rem
        for i in range(db + 1):
            a[shift + i] -= factor * b[i]
        a.pop()
        _strip(a)
    return a


def _gcd_lists(a, b):
    """Monic gcd via the primitive pseudo-remainder sequence over the integers."""
    a = _strip(list(a))
    b = _strip(list(b))
    if not a and not b:
        return []
    if not a:
        a, b = b, a
    if not b:
        lead = a[-1]
        return [v / lead for v in a]
    a = _to_int_primitive(a)
    b = _to_int_primitive(b)
    if _degree(a) < _degree(b):
        a, b = b, a
    while b:
        r = _pseudo_rem_int(a, b)
        a, b = b, _to_int_primitive(r) if r else []
    lead = Fraction(a[-1])
    return [Fraction(v) / lead for v in a]


# -- public gcd and squarefree helpers ---------------------------------------

def gcd_univariate(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Monic greatest common divisor of two one-variable polynomials."""
    if a.is_zero and b.is_zero:
        return a
    if a.is_zero:
        a, b = b, a
    name, ca = _coeffs(a)
    if b.is_zero:
        lead = ca[-1]
        return SparsePoly.from_univariate(name, [v / lead for v in ca])
    name_b, cb = _coeffs(b)
    if name_b != name:
        raise ValueError(f"variable mismatch: {name!r} vs {name_b!r}")
    return SparsePoly.from_univariate(name, _gcd_lists(ca, cb))


def squarefree_part(p: SparsePoly) -> SparsePoly:
    """The monic radical ``p / gcd(p, p')``."""
    if p.is_zero:
        raise ValueError("zero polynomial has no squarefree part")
    name, c = _coeffs(p)
    g = _gcd_lists(c, _derive(c))
    if _degree(g) < 1:
        lead = c[-1]
        return SparsePoly.from_univariate(name, [v / lead for v in c])
    q = _exact_div(c, g)
    lead = q[-1]
    return SparsePoly.from_univariate(name, [v / lead for v in q])


def _exact_div(a, b):
    a = list(a)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    db = _degree(b)
    lead = b[-1]
    while a and _degree(a) >= db:
        shift = _degree(a) - db
        factor = a[-1] / lead
        out[shift] = factor
        for i in range(db + 1):
            a[shift + i] -= factor * b[i]
        _strip(a)
    if a:
        raise ValueError("division was not exact")
    return out


def cauchy_root_bound(p: SparsePoly) -> Fraction:
    """A rational B with every real root of p strictly inside (-B, B)."""
    if p.is_zero:
        raise ValueError("zero polynomial has no root bound")
    _, c = _coeffs(p)
    lead = abs(c[-1])
    top = max((abs(v) for v in c[:-1]), default=Fraction(0))
    return 1 + top / lead


def root_multiplicity(p: SparsePoly, r) -> int:
    """Multiplicity of the rational point ``r`` as a root of ``p``."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    r = as_fraction(r)
    _, c = _coeffs(p)
    count = 0
    while len(c) > 1:
        # one synthetic division by (x - r); the final accumulator is p(r)
        acc = Fraction(0)
        steps = []
        for coeff in reversed(c):
            acc = acc * r + coeff
            steps.append(acc)
        if steps[-1]:
            break
        c = list(reversed(steps[:-1]))
        count += 1
    return count


# -- Sturm chains -------------------------------------------------------------

class SturmChain:
    """Standard Sturm remainder chain of a nonzero polynomial.

    ``polys[0]`` is the input, ``polys[1]`` its derivative, and each later
    entry is the negated remainder of the two before it.  The chain ends at
    the last nonzero element, a constant multiple of gcd(p, p').
    """

    def __init__(self, p: SparsePoly):
        if p.is_zero:
            raise ValueError("Sturm chain of the zero polynomial")
        self.var, c0 = _coeffs(p)
        chain = [c0]
        c1 = _derive(c0)
        if c1:
            chain.append(c1)
            while _degree(chain[-1]) > 0:
                nxt = _neg_rem(chain[-2], chain[-1])
                if not nxt:
                    break
                chain.append(nxt)
        self._chain = chain

    @property
    def polys(self):
        return [SparsePoly.from_univariate(self.var, c) for c in self._chain]

    def variations_at(self, t) -> int:
        t = as_fraction(t)
        signs = []
        for c in self._chain:
            v = _eval(c, t)
            if v:
                signs.append(1 if v > 0 else -1)
        flips = 0
        for a, b in zip(signs, signs[1:]):
            if a != b:
                flips += 1
        return flips

    def count(self, lo, hi) -> int:
        """Distinct roots in the half-open interval (lo, hi]."""
        return self.variations_at(lo) - self.variations_at(hi)


@dataclass(frozen=True)
class IsolatingInterval:
    """Half-open rational interval (lo, hi] isolating one real root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json_dict(self):
        return {"lo": str(self.lo), "hi": str(self.hi)}


class RootIsolator:
    """Isolates and refines the distinct real roots of one polynomial.

    The Sturm chain is built once on the squarefree part, so multiple roots
    of the input are counted once and endpoint degeneracies cannot occur.
    """

    def __init__(self, p: SparsePoly):
        if p.is_zero:
            raise ValueError("cannot isolate roots of the zero polynomial")
        self.poly = p
        self.reduced = squarefree_part(p)
        self.chain = SturmChain(self.reduced)
        self.bound = cauchy_root_bound(self.reduced)

    def count(self, lo=None, hi=None) -> int:
        """Distinct real roots in (lo, hi]; None means the matching infinity."""
        if lo is not None and hi is not None and as_fraction(lo) >= as_fraction(hi):
            raise ValueError("empty interval: lo >= hi")
        b = self.bound
        if lo is not None:
            b = max(b, abs(as_fraction(lo)) + 1)
        if hi is not None:
            b = max(b, abs(as_fraction(hi)) + 1)
        lo = -b if lo is None else as_fraction(lo)
        hi = b if hi is None else as_fraction(hi)
        return self.chain.count(lo, hi)

    def isolate(self):
        """Disjoint isolating intervals, in ascending order of the roots."""
        if self.reduced.degree(self.chain.var) < 1:
            return []
        out = []
        stack = [(-self.bound, self.bound, self.chain.count(-self.bound, self.bound))]
        while stack:
            lo, hi, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                out.append(IsolatingInterval(lo, hi))
                continue
            mid = (lo + hi) / 2
            left = self.chain.count(lo, mid)
            stack.append((mid, hi, n - left))
            stack.append((lo, mid, left))
        out.sort(key=lambda iv: iv.lo)
        return out

    def refine(self, iv: IsolatingInterval, target_width=DEFAULT_REFINE_WIDTH):
        """Shrink an isolating interval below ``target_width`` by bisection."""
        lo, hi = iv.lo, iv.hi
        if self.chain.count(lo, hi) != 1:
            raise ValueError("interval does not isolate a root of this polynomial")
        while hi - lo > target_width:
            mid = (lo + hi) / 2
            if self.chain.count(lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        return IsolatingInterval(lo, hi)


def sturm_count(p: SparsePoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in (lo, hi]; None means infinite.

    Infinite endpoints are realized with a Cauchy bound 1 + max|c_i / c_lead|,
    outside which the polynomial provably has no roots.
    """
    if p.is_zero:
        raise ValueError("cannot count roots of the zero polynomial")
    name, c = _coeffs(p)
    if _degree(c) < 1:
        if lo is not None and hi is not None and as_fraction(lo) >= as_fraction(hi):
            raise ValueError("empty interval: lo >= hi")
        return 0
    return RootIsolator(p).count(lo, hi)


def isolate_real_roots(p: SparsePoly):
    return RootIsolator(p).isolate()


def refine_interval(p: SparsePoly, iv: IsolatingInterval, target_width=DEFAULT_REFINE_WIDTH):
    return RootIsolator(p).refine(iv, target_width)


def sign_at_root(q: SparsePoly, p: SparsePoly, iv: IsolatingInterval) -> int:
    """Exact sign of q at the root of p isolated by ``iv``.

    A zero sign is certified through gcd(p, q); otherwise the interval is
    refined until q provably has no root inside, making its sign constant.
    """
    iso = RootIsolator(p)
    if iso.count(iv.lo, iv.hi) != 1:
        raise ValueError("interval does not isolate a root of p")
    name = iso.chain.var
    if q.is_zero:
        return 0
    qname, qc = _coeffs(q)
    if qname != name:
        raise ValueError(f"variable mismatch: {name!r} vs {qname!r}")
    if _degree(qc) >= 1:
        shared = gcd_univariate(iso.reduced, q)
        if shared.degree(name) >= 1 and SturmChain(shared).count(iv.lo, iv.hi) == 1:
            return 0
        qchain = SturmChain(squarefree_part(q))
    else:
        qchain = None
    lo, hi = iv.lo, iv.hi
    while True:
        if qchain is None or qchain.count(lo, hi) == 0:
            value = _eval(qc, hi)
            if value:
                return 1 if value > 0 else -1
        mid = (lo + hi) / 2
        if iso.chain.count(lo, mid) == 1:
            hi = mid
        else:
            lo = mid


# -- rational root certification ----------------------------------------------

def simplest_rational_between(lo, hi) -> Fraction:
    """The smallest-denominator rational in the closed interval [lo, hi]."""
    lo = as_fraction(lo)
    hi = as_fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational_between(-hi, -lo)
    floor = lo.numerator // lo.denominator
    ceil = -((-lo.numerator) // lo.denominator)
    if ceil <= hi:
        return Fraction(ceil)
    inner = simplest_rational_between(1 / (hi - floor), 1 / (lo - floor))
    return floor + 1 / inner


def certified_rational_roots(p: SparsePoly, max_denominator=2 ** 24):
    """Split the real roots of ``p`` into exact rationals and leftovers.

    Returns ``(rationals, unresolved)`` where ``rationals`` are certified
    exact roots and ``unresolved`` are isolating intervals whose root could
    not be recognized as a rational of denominator <= max_denominator.  No
    root is ever dropped.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    iso = RootIsolator(p)
    name = iso.chain.var
    _, coeffs = _coeffs(iso.reduced)
    rationals = []
    unresolved = []
    for iv in iso.isolate():
        found = None
        lo, hi = iv.lo, iv.hi
        width = Fraction(1, max_denominator ** 2)
        for _ in range(4):
            while hi - lo > width:
                mid = (lo + hi) / 2
                if iso.chain.count(lo, mid) == 1:
                    hi = mid
                else:
                    lo = mid
            cand = simplest_rational_between(lo, hi)
            if lo < cand <= hi and not _eval(coeffs, cand):
                found = cand
                break
            width /= 2 ** 8
        if found is not None:
            rationals.append(found)
        else:
            unresolved.append(IsolatingInterval(lo, hi))
    return rationals, unresolved
