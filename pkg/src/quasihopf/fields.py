"""Exact ground fields: arbitrary-precision rationals and prime fields GF(p)."""

from __future__ import annotations

import functools
import os
from fractions import Fraction
from numbers import Integral, Rational

DEFAULT_FIELD_ENV = "QUASIHOPF_FIELD"


class GFElement:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, Integral):
            return int(other)
        if isinstance(other, Rational):
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> GFElement:
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * GFElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GFElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF{self.p}({self.value})"

    def __str__(self):
        return str(self.value)


class Field:
    """Base class for an exact field; instances convert Python numbers to scalars."""

    spec: str

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def serialize(self, x) -> list[int]:
        raise NotImplementedError

    def deserialize(self, data) -> object:
        """Read a scalar from ``[num, den]``, ``[residue]`` or a bare integer."""
        if isinstance(data, bool):
            raise ValueError(f"not a scalar: {data!r}")
        if isinstance(data, int):
            return self(data)
        if isinstance(data, str):
            return self(Fraction(data))
        if len(data) == 1:
            return self(int(data[0]))
        if len(data) == 2:
            num, den = data
            if den == 0:
                raise ZeroDivisionError("zero denominator in serialized scalar")
            return self(Fraction(int(num), int(den)))
        raise ValueError(f"not a scalar: {data!r}")

    def __repr__(self):
        return f"<Field {self.spec}>"


class RationalField(Field):
    spec = "rational"

    def __call__(self, x):
        if isinstance(x, GFElement):
            raise TypeError("cannot lift a GF(p) element to the rationals")
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def serialize(self, x) -> list[int]:
        x = Fraction(x)
        return [x.numerator, x.denominator]

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")


class PrimeField(Field):
    def __init__(self, p: int):
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise ValueError(f"GF(p) needs a prime p < 2^31, got {p}")
        self.p = p
        self.spec = f"gf:{p}"

    def __call__(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError(f"element of GF({x.p}) passed to GF({self.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Integral):
            return GFElement(int(x), self.p)
        if isinstance(x, Rational):
            den = int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes in GF({self.p})")
            return GFElement(int(x.numerator) * pow(den, -1, self.p), self.p)
        raise TypeError(f"cannot convert {x!r} to GF({self.p})")

    def serialize(self, x) -> list[int]:
        return [self(x).value]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str | Field | None) -> Field:
    """Resolve ``"rational"`` / ``"gf:<p>"``; ``None`` reads ``$QUASIHOPF_FIELD``."""
    if isinstance(spec, Field):
        return spec
    if spec is None:
        spec = os.environ.get(DEFAULT_FIELD_ENV, "rational")
    spec = spec.strip().lower()
    if spec in ("rational", "q", "qq"):
        return QQ
    if spec.startswith("gf:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError(f"bad field spec {spec!r}") from None
        return GF(p)
    raise ValueError(f"bad field spec {spec!r}")
