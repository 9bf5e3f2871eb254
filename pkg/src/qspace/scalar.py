"""Exact scalars over the rationals or a prime field.

Every scalar is held in canonical form (a reduced ``Fraction`` or a residue in
``[0, p)``), so equality is a plain structural comparison.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import FieldError, ParseError

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")
_RESIDUE_RE = re.compile(r"\d+")


def is_prime(p: int) -> bool:
    if p <= 1:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


class Field:
    """Descriptor of the working field: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    __slots__ = ("prime",)

    def __init__(self, prime: int | None = None):
        if prime is not None:
            if isinstance(prime, bool) or not isinstance(prime, int):
                raise FieldError(f"prime must be an integer, got {prime!r}")
            if not is_prime(prime):
                raise FieldError(f"{prime} is not prime")
        object.__setattr__(self, "prime", prime)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def rational(cls) -> Field:
        return cls()

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    def __eq__(self, other):
        return isinstance(other, Field) and other.prime == self.prime

    def __hash__(self):
        return hash(("Field", self.prime))

    def __repr__(self):
        return "QQ" if self.prime is None else f"GF({self.prime})"

    def __reduce__(self):
        return (Field, (self.prime,))

    # construction -------------------------------------------------------

    def _canonical(self, value):
        if self.prime is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.prime == 0:
                raise FieldError(f"{value} has no image in {self!r}")
            return value.numerator * pow(value.denominator, -1, self.prime) % self.prime
        return int(value) % self.prime

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction, string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field!r} scalar into {self!r}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise FieldError(f"cannot coerce {type(value).__name__} into {self!r}")
        return Scalar._make(self, self._canonical(value))

    def parse(self, text: str) -> Scalar:
        text = text.strip() if isinstance(text, str) else text
        if not isinstance(text, str):
            raise ParseError(f"expected a string, got {type(text).__name__}")
        if self.prime is None:
            if not _RATIONAL_RE.fullmatch(text):
                raise ParseError(f"not a rational literal: {text!r}")
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return Scalar._make(self, Fraction(int(num), int(den or 1)))
        if not _RESIDUE_RE.fullmatch(text):
            raise ParseError(f"not a residue literal for {self!r}: {text!r}")
        return Scalar._make(self, int(text) % self.prime)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.prime is None:
            raise FieldError("Q is not enumerable")
        return [Scalar._make(self, r) for r in range(self.prime)]

    # serialization ------------------------------------------------------

    def to_json(self):
        return "rational" if self.prime is None else {"prime": self.prime}

    @classmethod
    def from_json(cls, obj) -> Field:
        if obj == "rational":
            return cls()
        if isinstance(obj, dict) and set(obj) == {"prime"}:
            return cls(obj["prime"])
        raise FieldError(f"bad field descriptor {obj!r}")


QQ = Field()


class Scalar:
    """Immutable field element; use ``Field.__call__`` or ``Field.parse`` to build one."""

    __slots__ = ("field", "value")

    @classmethod
    def _make(cls, field: Field, value) -> Scalar:
        s = object.__new__(cls)
        object.__setattr__(s, "field", field)
        object.__setattr__(s, "value", value)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar._make, (self.field, self.value))

    @property
    def numerator(self) -> int:
        return self.value.numerator if self.field.prime is None else self.value

    @property
    def denominator(self) -> int:
        return self.value.denominator if self.field.prime is None else 1

    def _other(self, other) -> Scalar | None:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        return None

    def _wrap(self, value) -> Scalar:
        p = self.field.prime
        return Scalar._make(self.field, value if p is None else value % p)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.value - o.value)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(o.value - self.value)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.value * o.value)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inv(self) -> Scalar:
        if not self.value:
            raise ZeroDivisionError("inverse of zero")
        p = self.field.prime
        if p is None:
            return Scalar._make(self.field, 1 / self.value)
        return Scalar._make(self.field, pow(self.value, p - 2, p))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self.inv() if k < 0 else self
        p = self.field.prime
        if p is None:
            return Scalar._make(self.field, base.value ** abs(k))
        return Scalar._make(self.field, pow(base.value, abs(k), p))

    def is_zero(self) -> bool:
        return not self.value

    def is_one(self) -> bool:
        return self.value == 1

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field._canonical(other)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.prime, self.value))

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.value})"
