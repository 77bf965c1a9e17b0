"""Dense univariate polynomials over a :class:`FieldSpec`."""

from __future__ import annotations

from fractions import Fraction

from .field import DegreeGuardError, FieldMismatchError, FieldSpec, max_degree


class Poly:
    """Immutable polynomial, coefficients stored lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs=()):
        cs = [field.elem(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, field, coeffs):
        # coeffs already canonical elements, trailing zeros allowed
        cs = list(coeffs)
        if field.p is not None:
            p = field.p
            cs = [c % p for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(cs)
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (field.one,))

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, (field.elem(c),))

    @classmethod
    def x(cls, field):
        return cls._raw(field, (field.zero, field.one))

    @classmethod
    def monomial(cls, field, exponent: int, c=1):
        return cls._raw(field, (field.zero,) * exponent + (field.elem(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(self.field, other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.field, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        deg = len(a) + len(b) - 2
        if deg > max_degree():
            raise DegreeGuardError(f"product degree {deg} exceeds guard {max_degree()}")
        out = [0] * (deg + 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        if self.field.p is None:
            out = [Fraction(c) for c in out]
        return Poly._raw(self.field, out)

    __rmul__ = __mul__

    def scale(self, c) -> Poly:
        return Poly._raw(self.field, [c * a for a in self.coeffs])

    def __pow__(self, e: int):
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divrem(self, other) -> tuple[Poly, Poly]:
        """Return ``(q, r)`` with ``self = q*other + r`` and ``deg r < deg other``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly.zero(F), self
        inv_lc = F.inv(other.lc)
        q = [F.zero] * (len(r) - db)
        b = other.coeffs
        p = F.p
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv_lc
            if p is not None:
                c %= p
            if not c:
                continue
            q[k] = c
            for j, cb in enumerate(b):
                r[k + j] -= c * cb
            if p is not None:
                for j in range(len(b)):
                    r[k + j] %= p
        return Poly._raw(F, q), Poly._raw(F, r[:db])

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def exact_div(self, other) -> Poly:
        q, r = self.divrem(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def __call__(self, value):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return self.field.elem(acc) if self.field.p is not None else acc

    def __repr__(self):
        return f"Poly({self.format()})"

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if self.field.p is not None and c > self.field.p // 2:
                c = c - self.field.p
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out
