"""Exact scalar fields: arbitrary-precision rationals and prime fields.

Scalars are raw values (``Fraction`` for the rationals, ``int`` residues for a
prime field); all arithmetic is routed through a field object so matrix code
stays field-agnostic and never mixes representations.
"""

from __future__ import annotations

from fractions import Fraction


class ScalarParseError(ValueError):
    pass


class RationalField:
    """The rationals. Values are ``fractions.Fraction`` (always reduced)."""

    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, s) -> Fraction:
        if isinstance(s, int):
            return Fraction(s)
        if isinstance(s, str):
            try:
                return Fraction(s.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ScalarParseError(f"bad rational {s!r}") from exc
        raise ScalarParseError(f"bad rational {s!r}")

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Integers modulo a prime. Values are ints in ``range(p)``."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"F{p}"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def of(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def format(self, a) -> str:
        return f"{a % self.p} mod {self.p}"

    def parse(self, s) -> int:
        if isinstance(s, int):
            return s % self.p
        if isinstance(s, str):
            body = s.strip()
            if "mod" in body:
                value, _, modulus = body.partition("mod")
                if modulus.strip() != str(self.p):
                    raise ScalarParseError(f"{s!r} is not in F{self.p}")
                body = value
            try:
                return int(body.strip()) % self.p
            except ValueError as exc:
                raise ScalarParseError(f"bad residue {s!r}") from exc
        raise ScalarParseError(f"bad residue {s!r}")

    def to_json(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def field_from_json(spec) -> "RationalField | PrimeField":
    """Parse ``"Q"`` or ``{"Fp": p}`` (also accepts ``"Fp:<p>"`` from the CLI)."""
    if spec == "Q" or spec is None:
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return GF(int(spec["Fp"]))
    if isinstance(spec, str) and spec.startswith("Fp:"):
        return GF(int(spec.split(":", 1)[1]))
    raise ScalarParseError(f"unknown field spec {spec!r}")
