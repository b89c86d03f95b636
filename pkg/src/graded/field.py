"""Exact ground fields: the rationals and the prime fields F_p.

Scalars are sympy domain elements (``QQ`` or ``GF(p)``); a ``Field`` wraps the
domain together with its tag so that parsing, formatting and sign handling
live in one place.
"""
from typing import Any, Union
from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ
from src.utils.errors import FieldError

FieldElement = Any


class Field:
    """The ground field of a presentation: ``q`` (rationals) or ``f<p>``."""

    def __init__(self, tag: str):
        """Build a field from its tag.

        Args:
            tag: ``q`` for the rationals, ``f<p>`` for the prime field of order p

        Raises:
            FieldError: If the tag is unknown or p is not prime
        """
        normalized = tag.strip().lower()
        if normalized in ("q", "qq", "rational"):
            self.tag = "q"
            self.characteristic = 0
            self.domain = QQ
        elif normalized.startswith("f") and normalized[1:].isdigit():
            p = int(normalized[1:])
            if not isprime(p):
                raise FieldError(f"f{p}: {p} is not prime")
            self.tag = f"f{p}"
            self.characteristic = p
            self.domain = GF(p, symmetric=False)
        else:
            raise FieldError(f"unknown field '{tag}' (expected q or f<p>)")

    @classmethod
    def parse(cls, tag: str) -> "Field":
        """Parse a field tag, e.g. ``q`` or ``f3``."""
        return cls(tag)

    @property
    def zero(self) -> FieldElement:
        return self.domain.zero

    @property
    def one(self) -> FieldElement:
        return self.domain.one

    def __call__(self, value: Union[int, str, FieldElement]) -> FieldElement:
        """Convert an int, a scalar string or a field element into this field."""
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, int):
            return self.domain(value)
        return self.domain.convert(value)

    def parse_scalar(self, text: str) -> FieldElement:
        """Parse ``a/b`` (rationals) or an integer reduced mod p.

        Raises:
            FieldError: If the text is not a scalar or divides by zero
        """
        raw = text.strip()
        try:
            if self.characteristic == 0:
                value = Rational(raw)
                if not value.is_Rational:
                    raise FieldError(f"division by zero in '{text}' over {self.tag}")
                return self.domain.from_sympy(value)
            if "/" in raw:
                num, den = raw.split("/", 1)
                den_value = int(den) % self.characteristic
                if den_value == 0:
                    raise FieldError(f"division by zero in '{text}' over {self.tag}")
                return self.domain(int(num)) / self.domain(den_value)
            return self.domain(int(raw))
        except (ValueError, TypeError, ZeroDivisionError) as e:
            raise FieldError(f"invalid scalar '{text}' over {self.tag}: {e}")

    def format(self, value: FieldElement) -> str:
        """Canonical text form: ``a/b`` over Q, an integer in [0, p) over F_p."""
        as_sympy = self.domain.to_sympy(value)
        if self.characteristic == 0:
            return str(as_sympy)
        return str(int(as_sympy) % self.characteristic)

    def is_zero(self, value: FieldElement) -> bool:
        return self.domain.is_zero(value)

    def sign(self, exponent: int) -> FieldElement:
        """Return (-1)^exponent as a field element."""
        return self.one if exponent % 2 == 0 else -self.one

    def inverse(self, value: FieldElement) -> FieldElement:
        if self.is_zero(value):
            raise ZeroDivisionError(f"zero has no inverse in {self.tag}")
        return self.domain.quo(self.one, value)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self) -> int:
        return hash(self.tag)

    def __repr__(self) -> str:
        return f"Field({self.tag!r})"
