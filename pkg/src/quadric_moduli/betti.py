"""Exact integer polynomials in one variable for Betti-number bookkeeping.

The Poincare polynomial of a smooth projective variety without odd homology
doubles as its counting polynomial: evaluating at a prime power q gives the
number of points over the field with q elements.  This module provides the
polynomial arithmetic, the projective-space and Grassmannian polynomials,
and the five-stratum combination for the moduli space under study.
"""

from __future__ import annotations


class XiPoly:
    """Dense integer-coefficient polynomial in one variable xi.

    Coefficients are stored ascending (index = degree) with the trailing
    zeros trimmed; arithmetic is exact over the integers.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "XiPoly":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial mapped to -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def eval(self, q: int) -> int:
        """Exact evaluation by Horner's rule (arbitrary-precision)."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def __add__(self, other: "XiPoly") -> "XiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return XiPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other: "XiPoly") -> "XiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return XiPoly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self) -> "XiPoly":
        return XiPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return XiPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return XiPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return XiPoly(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int) -> "XiPoly":
        result = XiPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def divmod(self, divisor: "XiPoly") -> tuple["XiPoly", "XiPoly"]:
        """Long division by a divisor with leading coefficient +-1."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        lead = divisor.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("division requires a divisor with unit leading coefficient")
        rem = list(self.coeffs)
        d = divisor.degree
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            factor = rem[k] * lead
            if factor:
                quot[k - d] = factor
                for j, c in enumerate(divisor.coeffs):
                    rem[k - d + j] -= factor * c
        return XiPoly(quot), XiPoly(rem)

    def exact_div(self, divisor: "XiPoly") -> "XiPoly":
        """Division that must leave no remainder; raises otherwise."""
        quot, rem = self.divmod(divisor)
        if not rem.is_zero:
            raise ArithmeticError(f"{self} is not divisible by {divisor}")
        return quot

    def __eq__(self, other) -> bool:
        return isinstance(other, XiPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if not c:
                continue
            body = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}{body}")
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __repr__(self) -> str:
        return f"XiPoly({self})"


def proj_poincare(n: int) -> XiPoly:
    """Poincare polynomial 1 + xi + ... + xi^n of n-dimensional projective space."""
    if n < 0:
        raise ValueError(f"projective dimension must be nonnegative, got {n}")
    return XiPoly([1] * (n + 1))


def grass_poincare(k: int, n: int) -> XiPoly:
    """Gaussian binomial [n choose k]_xi, the Poincare polynomial of the
    Grassmannian of k-planes in n-space.

    Computed as the product formula prod (xi^(n-k+i) - 1) / (xi^i - 1) with
    every division checked to leave no remainder.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    numerator = XiPoly([1])
    for i in range(1, k + 1):
        numerator = numerator * (XiPoly.monomial(n - k + i) - XiPoly([1]))
    result = numerator
    for i in range(1, k + 1):
        result = result.exact_div(XiPoly.monomial(i) - XiPoly([1]))
    return result


def poincare_moduli() -> XiPoly:
    """Poincare polynomial of the 13-dimensional moduli space, assembled from
    its strata: a P^9-bundle over Grass(2, 4) minus a line and a quadric
    surface, plus the universal (2, 3)-curve, plus a P^11 of twisted
    structure sheaves."""
    p1 = proj_poincare(1)
    return (
        proj_poincare(9) * grass_poincare(2, 4)
        - p1
        - p1 * p1
        + proj_poincare(10) * p1 * p1
        + proj_poincare(11)
    )


def eval_at(P: XiPoly, q: int) -> int:
    """Exact big-integer evaluation of P at q."""
    return P.eval(q)
