"""Exact coefficient fields.

Elements are plain Python values (``Fraction`` over the rationals, ints in
``[0, p)`` over a prime field); a ``Field`` object supplies the operations.
Keeping elements unboxed keeps the dense linear algebra cheap.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


class Field:
    """Abstract exact field. ``char`` is 0 or a prime p < 2**31."""

    char: int

    def __call__(self, value):
        """Coerce an int, Fraction, or string to a field element."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def to_spec(self) -> object:
        """JSON-serializable field tag: "Q" or the prime p."""
        raise NotImplementedError


class RationalField(Field):
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational literal {value!r}") from exc
        raise ParseError(f"cannot coerce {value!r} to Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def is_zero(self, a) -> bool:
        return not a

    def format(self, a) -> str:
        return str(a)

    def to_spec(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField(Field):
    """F_p with p an odd-or-even prime below 2**31.

    The bound keeps every product of two reduced elements inside int64,
    which the compiled row-reduction kernel relies on.
    """

    def __init__(self, p: int):
        if not (1 < p < 2**31):
            raise ValueError(f"prime must lie in (1, 2^31), got {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def __call__(self, value):
        p = self.char
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator % p * pow(den, p - 2, p) % p
        if isinstance(value, str):
            try:
                return self(Fraction(value))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coefficient literal {value!r}") from exc
        raise ParseError(f"cannot coerce {value!r} to F_{p}")

    def add(self, a, b):
        s = a + b
        p = self.char
        return s - p if s >= p else s

    def sub(self, a, b):
        d = a - b
        return d + self.char if d < 0 else d

    def mul(self, a, b):
        return a * b % self.char

    def neg(self, a):
        return self.char - a if a else 0

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.char - 2, self.char)

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return str(a)

    def to_spec(self):
        return self.char

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("GF", self.char))

    def __repr__(self):
        return f"GF({self.char})"


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    field = _gf_cache.get(p)
    if field is None:
        field = _gf_cache[p] = PrimeField(p)
    return field


def field_from_spec(spec) -> Field:
    """Inverse of ``Field.to_spec``; also accepts "QQ" and digit strings."""
    if isinstance(spec, str):
        if spec in ("Q", "QQ"):
            return QQ
        if spec.isdigit():
            return GF(int(spec))
        raise ParseError(f"unknown field spec {spec!r}")
    if isinstance(spec, int):
        return GF(spec)
    raise ParseError(f"unknown field spec {spec!r}")
