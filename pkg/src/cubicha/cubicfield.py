"""Trinomial cubic fields Q(alpha), alpha^3 = a*alpha - b, and the rational
realization of the unique Hopf-Galois structure acting on Z[alpha].

The field is described by validated integers (a, b): f = x^3 - a*x + b must
have no rational root, both coefficients nonzero, and (a, b) reduced in the
sense that no prime p has p^2 | a and p^3 | b (a looser convention allowing
everything with v_p(a) <= 2 or v_p(b) <= 3 can be selected).  The
discriminant is delta = 4a^3 - 27b^2 and g = gcd(a, b).

Elements of Z[alpha] carry coordinates with respect to B = {1, alpha,
alpha^2}.  The acting Hopf algebra is only ever touched through coordinates
with respect to a fixed basis W = {w1, w2, w3}: w1 is the identity operator,
and the other two act on B through the Gram matrix

    w2 . 1 = 0     w2 . alpha = 6a*alpha^2 + 9b*alpha - 4a^2
                   w2 . alpha^2 = -9b*alpha^2 - 2a^2*alpha + 6ab
    w3 . 1 = 2     w3 . alpha = -alpha
                   w3 . alpha^2 = -alpha^2 + 2a

with the multiplication table w2^2 = delta*(w3 - 2*w1), w2*w3 = w3*w2 = -w2,
w3^2 = 2*w1 + w3.  Everything downstream (associated orders, freeness,
maximality) consumes only these rational data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import factorize, valuation
from .errors import ValidationError
from .exactlinalg import IntMatrix

REDUCED_STRICT = "strict"
REDUCED_LOOSE = "loose"


@dataclass(frozen=True)
class TrinomialCubic:
    """Validated descriptor of f = x^3 - a*x + b.  Construct via validate()."""

    a: int
    b: int
    delta: int
    g: int


@dataclass(frozen=True)
class OrderElement:
    """Element of Z[alpha] with coordinates (c0, c1, c2) w.r.t. {1, alpha, alpha^2}."""

    c0: int
    c1: int
    c2: int

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.c0, self.c1, self.c2)

    def __neg__(self) -> "OrderElement":
        return OrderElement(-self.c0, -self.c1, -self.c2)


@dataclass(frozen=True)
class HopfElement:
    """Element of the Hopf algebra with rational coordinates w.r.t. W."""

    h1: Fraction
    h2: Fraction
    h3: Fraction

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.h1, self.h2, self.h3)

    @staticmethod
    def of(h1, h2, h3) -> "HopfElement":
        return HopfElement(Fraction(h1), Fraction(h2), Fraction(h3))


def _integer_roots(a: int, b: int):
    # rational roots of the monic x^3 - a*x + b are integer divisors of b
    n = abs(b)
    d = 1
    while d * d <= n:
        if n % d == 0:
            for r in (d, -d, n // d, -(n // d)):
                if r * r * r - a * r + b == 0:
                    yield r
        d += 1


def validate(a: int, b: int, reduced_convention: str = REDUCED_STRICT) -> TrinomialCubic:
    """Check (a, b) and build the field descriptor, or raise ValidationError.

    Rejections: ZERO_A and ZERO_B (the formulas downstream divide by a, and
    b = 0 is always reducible); REDUCIBLE when f has an integer root;
    NOT_REDUCED when some prime violates the selected reducedness convention.
    """
    if a == 0:
        raise ValidationError("ZERO_A", "a = 0 is outside the supported family")
    if b == 0:
        raise ValidationError("ZERO_B", "b = 0 makes x^3 - a*x + b reducible")
    for r in _integer_roots(a, b):
        raise ValidationError("REDUCIBLE", f"f has integer root x = {r}")
    if reduced_convention == REDUCED_STRICT:
        amin, bmin = 2, 3
    elif reduced_convention == REDUCED_LOOSE:
        amin, bmin = 3, 4
    else:
        raise ValueError(f"unknown reduced convention {reduced_convention!r}")
    g = gcd(a, b)
    common, cof = factorize(g)
    assert cof == 1  # g <= min(|a|, |b|), far below the trial division limit
    for p in common:
        if valuation(a, p) >= amin and valuation(b, p) >= bmin:
            raise ValidationError(
                "NOT_REDUCED",
                f"prime {p} has v_p(a) >= {amin} and v_p(b) >= {bmin}",
            )
    delta = 4 * a**3 - 27 * b**2
    assert delta != 0  # would force a rational root
    return TrinomialCubic(a, b, delta, g)


def _coords(u) -> tuple:
    if isinstance(u, OrderElement):
        return u.coords
    return tuple(u)


def _mul_coords(a: int, b: int, u: tuple, v: tuple) -> tuple:
    """Product of two elements in coordinates, reduced by alpha^3 = a*alpha - b.

    Works for int or Fraction coordinates alike.
    """
    u0, u1, u2 = u
    v0, v1, v2 = v
    e0 = u0 * v0
    e1 = u0 * v1 + u1 * v0
    e2 = u0 * v2 + u1 * v1 + u2 * v0
    e3 = u1 * v2 + u2 * v1
    e4 = u2 * v2
    # alpha^3 = a*alpha - b, alpha^4 = a*alpha^2 - b*alpha
    return (e0 - b * e3, e1 + a * e3 - b * e4, e2 + a * e4)


def mul(k: TrinomialCubic, u: OrderElement, v: OrderElement) -> OrderElement:
    return OrderElement(*_mul_coords(k.a, k.b, u.coords, v.coords))


def trace(k: TrinomialCubic, u: OrderElement) -> int:
    # alpha has trace 0 and alpha^2 has trace 2a
    return 3 * u.c0 + 2 * k.a * u.c2


def gram_matrix(k: TrinomialCubic) -> tuple[tuple[OrderElement, ...], ...]:
    """The 3x3 array of values w_i . gamma_j, each an element of Z[alpha]."""
    a, b = k.a, k.b
    return (
        (OrderElement(1, 0, 0), OrderElement(0, 1, 0), OrderElement(0, 0, 1)),
        (
            OrderElement(0, 0, 0),
            OrderElement(-4 * a * a, 9 * b, 6 * a),
            OrderElement(6 * a * b, -2 * a * a, -9 * b),
        ),
        (OrderElement(2, 0, 0), OrderElement(0, -1, 0), OrderElement(2 * a, 0, -1)),
    )


def action_matrix(k: TrinomialCubic) -> IntMatrix:
    """The 9x3 coordinate matrix of the W-action on B.

    Rows are grouped in blocks of three by basis element of B (block j holds
    the B-coordinates of w1.gamma_j, w2.gamma_j, w3.gamma_j as columns);
    columns are indexed by W.
    """
    a, b = k.a, k.b
    return IntMatrix.from_rows(
        [
            [1, 0, 2],
            [0, 0, 0],
            [0, 0, 0],
            [0, -4 * a * a, 0],
            [1, 9 * b, -1],
            [0, 6 * a, 0],
            [0, 6 * a * b, 2 * a],
            [0, -2 * a * a, 0],
            [1, -9 * b, -1],
        ]
    )


def hopf_mul(k: TrinomialCubic, u: HopfElement, v: HopfElement) -> HopfElement:
    """Bilinear product under the W multiplication table."""
    d = k.delta
    u1, u2, u3 = u.coords
    v1, v2, v3 = v.coords
    c1 = u1 * v1 - 2 * d * u2 * v2 + 2 * u3 * v3
    c2 = u1 * v2 + u2 * v1 - (u2 * v3 + u3 * v2)
    c3 = d * u2 * v2 + u1 * v3 + u3 * v1 + u3 * v3
    return HopfElement.of(c1, c2, c3)


@lru_cache(maxsize=None)
def _w_action(k: TrinomialCubic):
    # 3x3 integer matrices: column j of the i-th matrix is w_i . gamma_j in B
    gm = gram_matrix(k)
    return tuple(
        tuple(tuple(gm[i][j].coords[r] for j in range(3)) for r in range(3))
        for i in range(3)
    )


def apply_hopf(k: TrinomialCubic, h: HopfElement, u) -> tuple[Fraction, Fraction, Fraction]:
    """Act by h = h1*w1 + h2*w2 + h3*w3 on a field element u given in B
    coordinates (OrderElement or a 3-tuple of rationals)."""
    uc = _coords(u)
    acts = _w_action(k)
    out = [Fraction(0)] * 3
    for hi, mat in zip(h.coords, acts):
        if hi == 0:
            continue
        for r in range(3):
            row = mat[r]
            out[r] += hi * (row[0] * uc[0] + row[1] * uc[1] + row[2] * uc[2])
    return tuple(out)


def verify_sqrt_identity(k: TrinomialCubic) -> bool:
    """The polynomial identity grounding the Gram matrix:

        (6a*alpha^2 + 9b*alpha - 4a^2)^2 = delta * (-3*alpha^2 + 4a)

    holds in Z[alpha] mod f.  Both sides are computed with mul and compared
    coordinate-wise.
    """
    a, b, d = k.a, k.b, k.delta
    s = (-4 * a * a, 9 * b, 6 * a)
    lhs = _mul_coords(a, b, s, s)
    rhs = (4 * a * d, 0, -3 * d)
    return lhs == rhs
