"""Exact coefficient fields: the rationals and prime fields of odd characteristic.

All coefficient arithmetic in the package goes through the objects defined
here.  No floating point is ever used.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


class GFElement:
    """Element of a prime field F_p, p an odd prime."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldError("mixed characteristics %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return GFElement(self.p, other)
        if isinstance(other, Fraction):
            return GFElement(self.p, other.numerator) / GFElement(self.p, other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElement(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElement(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElement(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElement(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return GFElement(self.p, self.v * pow(o.v, self.p - 2, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GFElement(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return self.v == o.v
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "GF(%d)(%d)" % (self.p, self.v)

    def __str__(self):
        return str(self.v)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Coefficient field: characteristic 0 (rationals) or an odd prime p."""

    def __init__(self, char=0):
        if char != 0:
            if char == 2:
                raise FieldError("characteristic 2 is not supported")
            if not _is_prime(char):
                raise FieldError("%d is not prime" % char)
        self.char = char
        self._zero = self.of(0)
        self._one = self.of(1)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def of(self, v):
        """Coerce an int, Fraction or field element into this field."""
        if self.char == 0:
            if isinstance(v, Fraction):
                return v
            if isinstance(v, int):
                return Fraction(v)
            if isinstance(v, GFElement):
                raise FieldError("cannot coerce F_%d element into Q" % v.p)
            raise FieldError("cannot coerce %r into Q" % (v,))
        if isinstance(v, GFElement):
            if v.p != self.char:
                raise FieldError("mixed characteristics")
            return v
        if isinstance(v, int):
            return GFElement(self.char, v)
        if isinstance(v, Fraction):
            return GFElement(self.char, v.numerator) / GFElement(self.char, v.denominator)
        raise FieldError("cannot coerce %r into F_%d" % (v, self.char))

    def is_one(self, v):
        """Cheap test against 1, avoiding generic rich comparison."""
        if self.char == 0:
            return v._denominator == 1 and v._numerator == 1
        return v.v == 1

    def parse(self, text):
        """Parse 'p' or 'p/q' with integer p, q."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.of(Fraction(int(num), int(den)))
        return self.of(int(text))

    def render(self, v):
        if self.char == 0:
            if v.denominator == 1:
                return str(v.numerator)
            return "%d/%d" % (v.numerator, v.denominator)
        return str(v.v)

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "Field(char=%d)" % self.char


QQ = Field(0)
