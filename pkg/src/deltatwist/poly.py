"""Exact univariate integer polynomials in z.

Coefficients are Python ints, so subset counts like 2^n and negative
recursion intermediates never overflow.  Division is certified: it either
returns an exact quotient or raises ``NonzeroRemainder``.  Evaluation at
rational points uses ``fractions.Fraction`` so identities asserted at
z = -1/2 are checked exactly, never in floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DivisionByZeroPoly, NonzeroRemainder

# Exact rational scalars; reduced form with positive denominator is
# guaranteed by Fraction itself.
Rational = Fraction


class IntPoly:
    """Dense polynomial; ``coeffs[k]`` is the coefficient of z^k.

    Canonical form: no trailing zero coefficient, and the zero polynomial
    stores an empty tuple.  Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        return cls([0] * degree + [coeff])

    @classmethod
    def from_width_histogram(cls, counts: Mapping[int, int]) -> "IntPoly":
        """Sum of count_w * z^w over a width -> count mapping."""
        if not counts:
            return cls(())
        for w in counts:
            if w < 0:
                raise ValueError(f"negative width {w}")
        cs = [0] * (max(counts) + 1)
        for w, c in counts.items():
            cs[w] = c
        return cls(cs)

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- ring operations -----------------------------------------------------

    @staticmethod
    def _coerce(value) -> "IntPoly":
        if isinstance(value, IntPoly):
            return value
        if isinstance(value, int):
            return IntPoly((value,))
        raise TypeError(f"cannot treat {type(value).__name__} as a polynomial")

    def __add__(self, other) -> "IntPoly":
        q = self._coerce(other)
        a, b = self.coeffs, q.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "IntPoly":
        q = self._coerce(other)
        if not self.coeffs or not q.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(q.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(q.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, divisor) -> "IntPoly":
        """Return s with self = divisor * s exactly over the integers.

        Raises ``NonzeroRemainder`` when no such integer polynomial exists;
        the recursion formulas rely on that signal to certify their
        divisibility hypotheses rather than sampling values.
        """
        q = self._coerce(divisor)
        if not q.coeffs:
            raise DivisionByZeroPoly("division by the zero polynomial")
        rem = list(self.coeffs)
        qc = q.coeffs
        if len(rem) < len(qc):
            if not rem:
                return IntPoly(())
            raise NonzeroRemainder(f"({self}) is not divisible by ({q})")
        out = [0] * (len(rem) - len(qc) + 1)
        lead = qc[-1]
        for k in range(len(rem) - len(qc), -1, -1):
            top = rem[k + len(qc) - 1]
            if top == 0:
                continue
            f, r = divmod(top, lead)
            if r:
                raise NonzeroRemainder(f"({self}) is not divisible by ({q})")
            out[k] = f
            for i, c in enumerate(qc):
                rem[k + i] -= f * c
        if any(rem):
            raise NonzeroRemainder(f"({self}) is not divisible by ({q})")
        return IntPoly(out)

    def eval_rational(self, at) -> Fraction:
        """Exact Horner evaluation at an integer or Fraction point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * at + c
        return acc

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        """Canonical text: decreasing degree, 'c*z^k' / 'c*z' / 'c' terms."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            elif k == 1:
                term = f"{mag}*z"
            else:
                term = f"{mag}*z^{k}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f" + {term}" if c > 0 else f" - {term}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r})"

    def coefficient_strings(self) -> list[str]:
        """Machine rendering: decimal coefficient strings, ascending degree."""
        return [str(c) for c in self.coeffs]


#: The variable z, for building formulas like 4*Z**2 - 2*Z - 2.
Z = IntPoly((0, 1))
