"""Exact scalar fields: the rationals and prime fields F_p."""

from fractions import Fraction
from functools import lru_cache

DEFAULT_PRIME = 32003


@lru_cache(maxsize=None)
def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Rationals:
    """The field Q, elements are :class:`fractions.Fraction`."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def reduce(self, x):
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def to_str(self, x):
        return str(x)

    @property
    def tag(self):
        return "q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """F_p with elements stored as ints in ``[0, p)``."""

    def __init__(self, p=DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def to_str(self, x):
        return str(x)

    @property
    def tag(self):
        return f"fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()


def field_from_tag(tag):
    """Parse ``"q"`` or ``"fp:P"`` into a field."""
    if tag in ("q", "Q", "qq"):
        return QQ
    if tag.startswith("fp"):
        _, _, p = tag.partition(":")
        return PrimeField(int(p) if p else DEFAULT_PRIME)
    raise ValueError(f"unknown field {tag!r}; expected 'q' or 'fp:P'")
