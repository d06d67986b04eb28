"""Exact coefficient rings: rationals, prime fields, integers."""

from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Rationals:
    name = "QQ"
    is_field = True

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def scale(self, a, k: int):
        return a * k

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        return 1 / Fraction(a)

    def to_str(self, a) -> str:
        return str(Fraction(a))

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class Integers:
    """Plain integers; Python ints never overflow, division unavailable."""

    name = "ZZ"
    is_field = False

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def scale(self, a, k: int):
        return a * k

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not invertible over the integers")

    def to_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return "Integers()"

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("ZZ")


class PrimeField:
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def coerce(self, x):
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def scale(self, a, k: int):
        return (a * k) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def inv(self, a):
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        return f"{a % self.p} mod {self.p}"

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def ring_from_name(name: str):
    name = name.strip()
    if name in ("Q", "QQ", "rational", "rationals"):
        return Rationals()
    if name in ("Z", "ZZ", "int", "integers"):
        return Integers()
    if name.startswith("F") or name.startswith("GF"):
        p = int(name.lstrip("GF(").rstrip(")"))
        return PrimeField(p)
    raise ValueError(f"unknown ring {name!r}")
