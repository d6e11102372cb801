"""Exact bivariate polynomial arithmetic.

Small helper used by the operator verification oracle and the manufactured
solution machinery: fields are polynomials in (x1, x2) with a coefficient
matrix c[i, j] multiplying x1**i * x2**j, so differentiation, products and
linear combinations are exact and the composed constitutive maps can be
evaluated symbol-free.
"""

from __future__ import annotations

import numpy as np


class Poly2D:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = np.atleast_2d(np.asarray(c, dtype=float))

    @classmethod
    def zero(cls) -> "Poly2D":
        return cls([[0.0]])

    @classmethod
    def const(cls, value: float) -> "Poly2D":
        return cls([[float(value)]])

    @classmethod
    def random(cls, rng, degree: int, scale: float = 1.0) -> "Poly2D":
        """Random polynomial of total degree <= degree."""
        c = rng.uniform(-scale, scale, size=(degree + 1, degree + 1))
        for i in range(degree + 1):
            for j in range(degree + 1):
                if i + j > degree:
                    c[i, j] = 0.0
        return cls(c)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        ni = max(self.c.shape[0], other.c.shape[0])
        nj = max(self.c.shape[1], other.c.shape[1])
        c = np.zeros((ni, nj))
        c[: self.c.shape[0], : self.c.shape[1]] += self.c
        c[: other.c.shape[0], : other.c.shape[1]] += other.c
        return Poly2D(c)

    __radd__ = __add__

    def __neg__(self):
        return Poly2D(-self.c)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly2D):
            ni = self.c.shape[0] + other.c.shape[0] - 1
            nj = self.c.shape[1] + other.c.shape[1] - 1
            c = np.zeros((ni, nj))
            for i in range(self.c.shape[0]):
                for j in range(self.c.shape[1]):
                    if self.c[i, j] != 0.0:
                        c[i : i + other.c.shape[0], j : j + other.c.shape[1]] += (
                            self.c[i, j] * other.c
                        )
            return Poly2D(c)
        return Poly2D(float(other) * self.c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Poly2D(self.c / float(other))

    # -- calculus ---------------------------------------------------------

    def dx1(self) -> "Poly2D":
        if self.c.shape[0] == 1:
            return Poly2D.zero()
        i = np.arange(1, self.c.shape[0])
        return Poly2D(self.c[1:, :] * i[:, None])

    def dx2(self) -> "Poly2D":
        if self.c.shape[1] == 1:
            return Poly2D.zero()
        j = np.arange(1, self.c.shape[1])
        return Poly2D(self.c[:, 1:] * j[None, :])

    def __call__(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        out = np.zeros(np.broadcast(x1, x2).shape)
        for i in range(self.c.shape[0]):
            for j in range(self.c.shape[1]):
                if self.c[i, j] != 0.0:
                    out = out + self.c[i, j] * x1**i * x2**j
        return out

    def max_abs_coeff(self) -> float:
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    def __repr__(self):
        return f"Poly2D({self.c!r})"


def _as_poly(x) -> Poly2D:
    if isinstance(x, Poly2D):
        return x
    return Poly2D.const(float(x))


def apply_symbol_monomials(coeffs, field: Poly2D) -> Poly2D:
    """Apply c0 + c1*d1 + c2*d2 + c3*d11 + c4*d12 + c5*d22 to a polynomial.

    ``coeffs`` is the 6-vector of an operator entry over the monomial basis
    [1, xi1, xi2, xi1^2, xi1*xi2, xi2^2] with the formal substitution
    xi_a -> d/dx_a.
    """
    c0, c1, c2, c3, c4, c5 = coeffs
    out = c0 * field
    if c1 != 0.0:
        out = out + c1 * field.dx1()
    if c2 != 0.0:
        out = out + c2 * field.dx2()
    if c3 != 0.0:
        out = out + c3 * field.dx1().dx1()
    if c4 != 0.0:
        out = out + c4 * field.dx1().dx2()
    if c5 != 0.0:
        out = out + c5 * field.dx2().dx2()
    return out
