"""Exact arithmetic and total ordering in Q(rho) for a real algebraic rho in (0,1).

A field is described by an integer polynomial (ascending coefficients) together
with a rational interval isolating exactly one of its real roots. Elements are
dense coefficient vectors modulo that polynomial, reduced eagerly, so an element
is zero iff every coefficient is zero. All order decisions go through interval
arithmetic on a refinable rational enclosure of the root; floating point is
never consulted for a decision.

Irreducibility of the polynomial is the caller's responsibility (only
square-freeness is verified). With a reducible square-free polynomial the
coefficient representation is still unique but the zero test no longer matches
evaluation at the root, and comparisons of such ghost-zero differences cannot
terminate; they abort with ArithmeticError after a bisection cap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import (
    MultipleRootsInInterval,
    NoRootInInterval,
    NotSquareFree,
    RootNotInUnitInterval,
)

LT, EQ, GT = -1, 0, 1

_COMPARE_BISECTION_CAP = 20000


def _norm_num(q):
    """Collapse integral Fractions to int; keeps arithmetic on fast paths."""
    if type(q) is int:
        return q
    if q.denominator == 1:
        return q.numerator
    return q


# ----------------------------------------------------------------------------
# plain polynomial helpers over Fraction/int coefficients, ascending degree
# ----------------------------------------------------------------------------

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_deriv(c):
    return [i * c[i] for i in range(1, len(c))]


def _poly_divmod(a, b):
    """Quotient/remainder of coefficient lists (b nonzero)."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    b = _poly_trim(b)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(_poly_trim(r)) >= len(b):
        r = _poly_trim(r)
        k = len(r) - len(b)
        f = r[-1] / b[-1]
        q[k] = f
        for i, bc in enumerate(b):
            r[i + k] -= f * bc
        r.pop()
    return q, _poly_trim(r)


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def _sturm_chain(poly):
    chain = [_poly_trim(poly), _poly_trim(_poly_deriv(poly))]
    while chain[-1]:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return [c for c in chain if c]


def _eval_poly(c, x):
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def _sign_changes(chain, x):
    signs = []
    for c in chain:
        v = _eval_poly(c, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(poly, lo, hi):
    """Number of distinct real roots of poly in (lo, hi]; assumes poly(lo) != 0."""
    chain = _sturm_chain(poly)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


# ----------------------------------------------------------------------------
# the field
# ----------------------------------------------------------------------------

class NumberField:
    """Q(rho) with rho the unique root of ``minpoly`` inside the isolating interval."""

    __slots__ = (
        "minpoly", "degree", "_lo", "_hi", "_orig", "_pow_table", "_inv_rho",
        "_sign_cache", "zero", "one",
    )

    def __init__(self, minpoly, isolating_interval):
        mp = [int(c) for c in minpoly]
        mp = _poly_trim(mp)
        if len(mp) < 2:
            raise NoRootInInterval("polynomial is constant; it has no root")
        self.minpoly = tuple(mp)
        self.degree = len(mp) - 1

        lo, hi = (Fraction(isolating_interval[0]), Fraction(isolating_interval[1]))
        if not (0 < lo < hi <= 1):
            raise RootNotInUnitInterval(
                f"isolating interval ({lo}, {hi}) must sit inside (0, 1]")

        g = _poly_gcd(mp, _poly_deriv(mp))
        if len(g) > 1:
            raise NotSquareFree("polynomial shares a factor with its derivative")

        if _eval_poly(mp, lo) == 0 or _eval_poly(mp, hi) == 0:
            raise MultipleRootsInInterval(
                "an isolating-interval endpoint is itself a root; shrink the interval")
        n = count_roots(mp, lo, hi)
        if n == 0:
            raise NoRootInInterval(f"no root of {self._poly_str()} in ({lo}, {hi})")
        if n > 1:
            raise MultipleRootsInInterval(
                f"{n} roots of {self._poly_str()} in ({lo}, {hi}); shrink the interval")
        if hi > 1 and count_roots(mp, Fraction(0), Fraction(1)) == 0:
            raise RootNotInUnitInterval("isolated root does not lie in (0, 1)")

        self._lo, self._hi = lo, hi
        self._orig = (lo, hi)

        k = self.degree
        # rho^k .. rho^(2k-2) expressed on the power basis, for eager reduction
        lead = mp[-1]
        base = tuple(_norm_num(Fraction(-c, lead)) for c in mp[:-1])
        table = [base]
        for _ in range(k - 2):
            prev = table[-1]
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            table.append(tuple(
                _norm_num(shifted[i] + top * base[i]) for i in range(k)))
        self._pow_table = table

        self._sign_cache = {}
        self.zero = FieldElement(self, (0,) * k)
        self.one = FieldElement(self, (1,) + (0,) * (k - 1))
        self._inv_rho = None  # computed lazily

        self.refine(128)

    # -- construction helpers ---------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        cs = [_norm_num(Fraction(c)) for c in coeffs]
        if len(cs) > self.degree:
            raise ValueError(f"coefficient vector longer than degree {self.degree}")
        cs += [0] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)])

    def rho(self) -> "FieldElement":
        if self.degree == 1:
            a0, a1 = self.minpoly
            return self.rational(Fraction(-a0, a1))
        return self.element([0, 1])

    def inv_rho(self) -> "FieldElement":
        if self._inv_rho is None:
            self._inv_rho = self.rho().inverse()
        return self._inv_rho

    # -- enclosure -----------------------------------------------------------

    def enclosure(self):
        return self._lo, self._hi

    def refine(self, steps=32):
        """Bisect the isolating interval ``steps`` times (or until exact)."""
        mp = self.minpoly
        lo, hi = self._lo, self._hi
        if lo == hi:
            return
        slo = 1 if _eval_poly(mp, lo) > 0 else -1
        for _ in range(steps):
            mid = (lo + hi) / 2
            v = _eval_poly(mp, mid)
            if v == 0:
                lo = hi = mid
                break
            if (1 if v > 0 else -1) == slo:
                lo = mid
            else:
                hi = mid
        self._lo, self._hi = lo, hi
        self._sign_cache.clear()

    def interval_eval(self, coeffs):
        """Rigorous rational interval for sum(coeffs[i] * rho**i) via Horner."""
        lo, hi = self._lo, self._hi
        alo = ahi = Fraction(0)
        for c in reversed(coeffs):
            # multiply [alo, ahi] by [lo, hi]; 0 < lo <= hi
            cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
            alo, ahi = min(cands) + c, max(cands) + c
        return alo, ahi

    def sign_of(self, coeffs):
        """Exact sign of the element with the given canonical coefficients."""
        if all(c == 0 for c in coeffs):
            return 0
        if all(c == 0 for c in coeffs[1:]):
            return 1 if coeffs[0] > 0 else -1
        cached = self._sign_cache.get(coeffs)
        if cached is not None:
            return cached
        for _ in range(_COMPARE_BISECTION_CAP):
            lo, hi = self.interval_eval(coeffs)
            if lo > 0:
                s = 1
                break
            if hi < 0:
                s = -1
                break
            if self._lo == self._hi:
                # exact rational root: the evaluation interval is a point
                s = 0 if lo == 0 else (1 if lo > 0 else -1)
                break
            self.refine(32)
        else:
            raise ArithmeticError(
                "sign determination did not terminate; the defining polynomial "
                "is probably reducible and this value vanishes at the root")
        self._sign_cache[coeffs] = s
        return s

    # -- misc ------------------------------------------------------------

    def _poly_str(self):
        terms = []
        for i, c in enumerate(self.minpoly):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                terms.append(x if c == 1 else (f"-{x}" if c == -1 else f"{c}{x}"))
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"NumberField({self._poly_str()}, rho in ({self._lo}, {self._hi}))"

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.minpoly == other.minpoly
                and self._orig == other._orig)

    def __hash__(self):
        return hash((self.minpoly, self._orig))


def make_field(minpoly, isolating_interval) -> NumberField:
    """Validate and build the field Q(rho)."""
    return NumberField(minpoly, isolating_interval)


# ----------------------------------------------------------------------------
# elements
# ----------------------------------------------------------------------------

class FieldElement:
    """Immutable element of a NumberField in canonical power-basis form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixed-field arithmetic")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            k = self.field.degree
            return (_norm_num(Fraction(other)),) + (0,) * (k - 1)
        return None

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElement(self.field,
                            tuple(_norm_num(a + b) for a, b in zip(self.coeffs, oc)))

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElement(self.field,
                            tuple(_norm_num(a - b) for a, b in zip(self.coeffs, oc)))

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElement(self.field,
                            tuple(_norm_num(b - a) for a, b in zip(self.coeffs, oc)))

    def __neg__(self):
        return FieldElement(self.field, tuple(_norm_num(-a) for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _norm_num(Fraction(other))
            return FieldElement(self.field, tuple(_norm_num(a * q) for a in self.coeffs))
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        k = self.field.degree
        a, b = self.coeffs, oc
        if k == 1:
            return FieldElement(self.field, (_norm_num(a[0] * b[0]),))
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    conv[i + j] += ai * bj
        table = self.field._pow_table
        out = conv[:k]
        for t in range(k, 2 * k - 1):
            c = conv[t]
            if c != 0:
                row = table[t - k]
                for i in range(k):
                    if row[i] != 0:
                        out[i] += c * row[i]
        return FieldElement(self.field, tuple(_norm_num(x) for x in out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return self.field.rational(1 / Fraction(self.coeffs[0]))
        # extended gcd of self (as poly) and minpoly over Q
        r0 = [Fraction(c) for c in self.field.minpoly]
        r1 = _poly_trim([Fraction(c) for c in self.coeffs])
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            # s = s0 - q*s1
            prod = [Fraction(0)] * (len(q) + len(s1) - 1) if s1 else []
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        prod[i + j] += qi * sj
            s = [Fraction(0)] * max(len(s0), len(prod))
            for i, c in enumerate(s0):
                s[i] += c
            for i, c in enumerate(prod):
                s[i] -= c
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s) or [Fraction(0)]
        if len(r1) != 1:
            raise ZeroDivisionError(
                "element is a zero divisor: the defining polynomial is reducible")
        inv_lead = 1 / r1[0]
        return self.field.element([c * inv_lead for c in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError
            return self * (1 / q)
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return self * FieldElement(self.field, oc).inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- predicates and order ----------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.coeffs[0])

    def sign(self) -> int:
        return self.field.sign_of(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.coeffs == other.coeffs and (
                self.field is other.field or self.field == other.field)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.coeffs[0]) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.minpoly, self.coeffs))

    def __lt__(self, other):
        return compare(self, self._as_elem(other)) == LT

    def __le__(self, other):
        return compare(self, self._as_elem(other)) != GT

    def __gt__(self, other):
        return compare(self, self._as_elem(other)) == GT

    def __ge__(self, other):
        return compare(self, self._as_elem(other)) != LT

    def _as_elem(self, other):
        if isinstance(other, FieldElement):
            return other
        return FieldElement(self.field, self._coerce(other))

    # -- rendering -----------------------------------------------------------

    def to_decimal(self, digits: int) -> str:
        return to_decimal(self, digits)

    def __float__(self):
        if self.is_rational():
            return float(Fraction(self.coeffs[0]))
        f = self.field
        lo, hi = f.interval_eval(self.coeffs)
        while hi - lo > Fraction(1, 10**20) and f._lo != f._hi:
            f.refine(64)
            lo, hi = f.interval_eval(self.coeffs)
        return float((lo + hi) / 2)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                p = "r" if i == 1 else f"r^{i}"
                if c == 1:
                    terms.append(p)
                elif c == -1:
                    terms.append(f"-{p}")
                else:
                    terms.append(f"{c}*{p}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# ----------------------------------------------------------------------------
# module-level operations
# ----------------------------------------------------------------------------

def compare(a: FieldElement, b: FieldElement) -> int:
    """Total order on one field: returns LT, EQ or GT (-1, 0, 1)."""
    d = a - b
    s = d.sign()
    return EQ if s == 0 else (GT if s > 0 else LT)


def to_decimal(a: FieldElement, digits: int) -> str:
    """Decimal expansion of ``a`` correctly rounded to ``digits`` places.

    Ties (exact half-units in the last place) round away from zero; every
    rounding decision is made by exact sign tests, never by floating point.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    s = a.sign()
    if s == 0:
        return "0." + "0" * digits
    mag = a if s > 0 else -a
    scale = 10 ** digits
    scaled = mag * scale

    if scaled.is_rational():
        q = Fraction(scaled.coeffs[0])
        n = (2 * q.numerator + q.denominator) // (2 * q.denominator)  # half-up
    else:
        f = a.field
        lo, hi = f.interval_eval(scaled.coeffs)
        while hi - lo > Fraction(1, 8):
            f.refine(32)
            lo, hi = f.interval_eval(scaled.coeffs)
        n = int((lo + hi) / 2 + Fraction(1, 2))
        # certify n by exact sign tests against the two half-unit boundaries
        while (scaled - (Fraction(2 * n - 1, 2))).sign() < 0:
            n -= 1
        while (scaled - (Fraction(2 * n + 1, 2))).sign() >= 0:
            n += 1
    whole, frac = divmod(n, scale)
    return f"{'-' if s < 0 else ''}{whole}.{frac:0{digits}d}"


def sort_unique(elements):
    """Sort distinct FieldElements ascending; duplicates (exact) are collapsed.

    Ordering is resolved by disjoint rational enclosures, refining the field
    enclosure until every pair separates; exactness comes from canonical-form
    dedup, so distinct survivors always separate eventually.
    """
    if not elements:
        return []
    field = elements[0].field
    unique = {}
    for e in elements:
        unique.setdefault(e.coeffs, e)
    elems = list(unique.values())
    if len(elems) == 1:
        return elems
    for _ in range(64):
        keyed = sorted(
            ((field.interval_eval(e.coeffs), e) for e in elems),
            key=lambda t: t[0][0])
        ok = all(keyed[i][0][1] < keyed[i + 1][0][0] for i in range(len(keyed) - 1))
        if ok:
            return [e for _, e in keyed]
        if field._lo == field._hi:
            # point enclosure: intervals are exact values; equal means duplicate,
            # which cannot happen after canonical dedup unless minpoly is reducible
            return [e for _, e in sorted(keyed, key=lambda t: t[0][0])]
        field.refine(64)
    raise ArithmeticError("could not separate field elements; reducible polynomial?")
