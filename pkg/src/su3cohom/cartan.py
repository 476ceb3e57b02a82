"""Exact Cartan-subalgebra calculus for su(3): the A2 root system, its Weyl
group, circle subgroups U_{k,l} and their normalizers.

Diagonal elements are handled through the integer (or rational) triple of
their diagonal entries divided by i. A circle U_{k,l} has triple
(k, l, -k-l); the Weyl group S3 permutes triples and a global sign flips the
orientation of the circle without changing the subgroup.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd

import numpy as np

from .errors import ZeroPair, ZeroVector

GRAM = ((2, -1), (-1, 2))
"""Gram matrix of the basis {u, u'} under <X, Y> = -Tr(XY)."""

# Realises the Weyl reflection swapping the first two diagonal entries.
TAU = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=complex)


@dataclass(frozen=True)
class CartanVector:
    """a u + b u', i.e. the diagonal element i * diag(a, b - a, -b)."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def from_triple(cls, triple) -> "CartanVector":
        x, y, z = (Fraction(t) for t in triple)
        if x + y + z != 0:
            raise ValueError(f"triple {triple} is not traceless")
        return cls(x, -z)

    def triple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b - self.a, -self.b)

    def inner(self, other: "CartanVector") -> Fraction:
        (g11, g12), (g21, g22) = GRAM
        return (
            self.a * (g11 * other.a + g12 * other.b)
            + self.b * (g21 * other.a + g22 * other.b)
        )

    def __add__(self, other: "CartanVector") -> "CartanVector":
        return CartanVector(self.a + other.a, self.b + other.b)

    def __rmul__(self, c) -> "CartanVector":
        c = Fraction(c)
        return CartanVector(c * self.a, c * self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def matrix(self) -> np.ndarray:
        return np.diag([1j * float(t) for t in self.triple()])


U_VEC = CartanVector(1, 0)
U_PRIME_VEC = CartanVector(0, 1)
V_VEC = CartanVector(1, 2)


class CircleType(str, enum.Enum):
    ROOT = "RootType"
    SINGULAR = "SingularType"
    GENERIC = "Generic"


def circle_type(triple) -> CircleType:
    x, y, z = triple
    if 0 in (x, y, z):
        return CircleType.ROOT
    if x == y or y == z or x == z:
        return CircleType.SINGULAR
    return CircleType.GENERIC


@dataclass(frozen=True)
class CircleSubgroup:
    k: int
    l: int

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.k, self.l, -self.k - self.l)

    @property
    def kind(self) -> CircleType:
        return circle_type(self.triple)

    def cartan(self) -> CartanVector:
        return CartanVector(self.k, self.k + self.l)

    def __str__(self) -> str:
        return f"U({self.k},{self.l})"


@dataclass(frozen=True)
class WeylElement:
    """A permutation of the three diagonal slots and a global sign."""

    perm: tuple[int, int, int]
    sign: int = 1

    def apply(self, triple):
        return tuple(self.sign * triple[i] for i in self.perm)

    def matrix(self) -> np.ndarray:
        """A representative in SU(3): signed permutation matrix with det 1."""
        m = np.zeros((3, 3), dtype=complex)
        for row, col in enumerate(self.perm):
            m[row, col] = 1
        if round(np.linalg.det(m).real) < 0:
            m[0] *= -1
        return m


WEYL = tuple(WeylElement(p) for p in permutations(range(3)))


def weyl_sign_images(triple) -> list[tuple]:
    """The 12 images of a triple under S3 x {+1, -1} (with repetitions)."""
    return [WeylElement(w.perm, s).apply(triple) for w in WEYL for s in (1, -1)]


def canonicalize(k: int, l: int) -> CircleSubgroup:
    """Canonical representative of U_{k,l} up to conjugacy.

    Divides out gcd(k, l) and keeps the lexicographically greatest pair among
    the first two entries of the 12 Weyl-and-sign images of (k, l, -k-l).
    """
    k, l = int(k), int(l)
    if k == 0 and l == 0:
        raise ZeroPair("(k, l) = (0, 0) is not a circle subgroup")
    d = gcd(k, l)
    k, l = k // d, l // d
    best = max(img[:2] for img in weyl_sign_images((k, l, -k - l)))
    return CircleSubgroup(*best)


def weyl_stabilizer_order(triple) -> int:
    """|{sigma in S3 : sigma . triple = +- triple}|."""
    t = tuple(triple)
    neg = tuple(-x for x in t)
    return sum(1 for w in WEYL if w.apply(t) in (t, neg))


def normalizer_components(c: CircleSubgroup) -> tuple[str, int]:
    """(identity component, number of components) of N(U_{k,l}) in SU(3).

    Root circles give T^2 u tau T^2, singular circles the connected U(2),
    everything else T^2. The Weyl elements stabilising the line are counted
    and the two of them already inside U(2) are divided out in the singular case.
    """
    c = canonicalize(c.k, c.l)
    identity = "U2" if c.kind is CircleType.SINGULAR else "Torus"
    count = weyl_stabilizer_order(c.triple)
    return identity, count // (2 if identity == "U2" else 1)


def normalizer_components_nonconnected(c: CircleSubgroup, h: int) -> int:
    """Number of components of N(U_{k,l} x Z_h) modulo its identity component."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    c = canonicalize(c.k, c.l)
    if c.kind is CircleType.SINGULAR and h > 1:
        # Z_h adds regular elements, so the normalizer drops into N(T^2)
        return 2
    return normalizer_components(c)[1]


def primitive_integer_pair(x: Fraction, y: Fraction) -> tuple[int, int]:
    x, y = Fraction(x), Fraction(y)
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    xi, yi = int(x * den), int(y * den)
    d = gcd(xi, yi)
    return xi // d, yi // d


def perp_direction(z: CartanVector) -> CartanVector:
    """A primitive integral Cartan vector spanning z^perp."""
    if z.is_zero():
        raise ZeroVector("the zero vector has no orthogonal line")
    (g11, g12), (g21, g22) = GRAM
    gz1 = g11 * z.a + g12 * z.b
    gz2 = g21 * z.a + g22 * z.b
    # (x1, x2) . (gz1, gz2) = 0
    x1, x2 = primitive_integer_pair(-gz2, gz1)
    return CartanVector(x1, x2)


def perp_line_in_cartan(z: CartanVector) -> CircleSubgroup:
    """The circle subgroup whose Lie algebra is the line orthogonal to z."""
    x = perp_direction(z)
    k, l, _ = x.triple()
    return canonicalize(int(k), int(l))


def same_class(c1: CircleSubgroup, c2: CircleSubgroup) -> bool:
    return canonicalize(c1.k, c1.l) == canonicalize(c2.k, c2.l)


def coprime_pairs(bound: int):
    """All coprime (k, l) with |k|, |l| <= bound."""
    for k in range(-bound, bound + 1):
        for l in range(-bound, bound + 1):
            if gcd(k, l) == 1:
                yield k, l


# -- numeric cross-checks -----------------------------------------------------


def circle_generator(k: int, l: int) -> np.ndarray:
    return np.diag([1j * k, 1j * l, -1j * (k + l)])


def numeric_weyl_count(k: int, l: int, tol: float = 1e-9) -> int:
    """Brute force: conjugate the generator by SU(3) representatives of the
    six Weyl elements and count those mapping it to +- itself."""
    h = circle_generator(k, l)
    count = 0
    for w in WEYL:
        g = w.matrix()
        img = g @ h @ g.conj().T
        if np.abs(img - h).max() < tol or np.abs(img + h).max() < tol:
            count += 1
    return count
