"""Coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_MAX_DEGREE = 512


class FieldMismatchError(ValueError):
    pass


class DegreeGuardError(ArithmeticError):
    """Raised when a polynomial product exceeds the configured degree guard."""


def _env_max_degree() -> int:
    raw = os.environ.get("NSTEPMF_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    return int(raw)


_max_degree: ContextVar[int | None] = ContextVar("nstepmf_max_degree", default=None)


def max_degree() -> int:
    value = _max_degree.get()
    return _env_max_degree() if value is None else value


@contextmanager
def degree_guard(limit: int):
    """Temporarily change the maximal polynomial degree allowed in products."""
    token = _max_degree.set(int(limit))
    try:
        yield
    finally:
        _max_degree.reset(token)


def is_prime(p: int) -> bool:
    # deterministic Miller-Rabin for p < 3.3e24
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either Q (``p is None``) or the prime field F_p.

    Elements are ``Fraction`` for Q and ``int`` in ``range(p)`` for F_p.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"field modulus {self.p} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``Q``, ``F101``, ``F_101`` or ``Fp:101``."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls.rationals()
        for prefix in ("Fp:", "F_", "F"):
            if t.startswith(prefix):
                return cls.prime(int(t[len(prefix):]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    def elem(self, value):
        """Canonical field element from an int, Fraction or ``"a/b"`` string."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1
