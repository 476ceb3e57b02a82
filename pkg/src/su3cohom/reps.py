"""Sphere-transitive slice representations of the connected singular
stabilizers SU(2), SO(3), U(2) and T^2, and the principal stabilizers they
produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

import numpy as np

from . import liealg
from .cartan import (
    CartanVector,
    CircleSubgroup,
    U_VEC,
    V_VEC,
    canonicalize,
    perp_line_in_cartan,
)
from .errors import NotOdd


@dataclass(frozen=True)
class SU2Standard:
    real_dim = 3

    @property
    def label(self) -> str:
        return "SU2Standard"


@dataclass(frozen=True)
class SO3Standard:
    real_dim = 3

    @property
    def label(self) -> str:
        return "SO3Standard"


@dataclass(frozen=True)
class U2Rep:
    """Sigma^1 (x) (A^m + A^-m); m and -m give the same real representation."""

    m: int
    real_dim = 4

    def __post_init__(self):
        if self.m % 2 == 0:
            raise NotOdd(f"U(2) slice weight must be odd, got {self.m}")
        object.__setattr__(self, "m", abs(int(self.m)))

    @property
    def label(self) -> str:
        return f"U2({self.m})"


@dataclass(frozen=True)
class TorusRep:
    """A^p (x) A^q, identified with A^-p (x) A^-q (first nonzero entry positive)."""

    p: int
    q: int
    real_dim = 2

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p == 0 and q == 0:
            raise ValueError("Torus(0, 0) is the trivial representation")
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def label(self) -> str:
        return f"Torus({self.p},{self.q})"


SliceRep = Union[SU2Standard, SO3Standard, U2Rep, TorusRep]


@dataclass(frozen=True)
class PrincipalStabilizer:
    """U_{k,l} x Z_h with the circle in canonical form."""

    circle: CircleSubgroup
    finite_part: int = 1

    def __str__(self) -> str:
        tail = "" if self.finite_part == 1 else f" x Z{self.finite_part}"
        return f"{self.circle}{tail}"


@dataclass(frozen=True)
class WeightVector:
    """p z1 + q z2 with z1 = v/3 and z2 = (2u + u')/3."""

    p: int
    q: int

    def cartan(self) -> CartanVector:
        return CartanVector(Fraction(self.p + 2 * self.q, 3), Fraction(2 * self.p + self.q, 3))


Z1 = WeightVector(1, 0)
Z2 = WeightVector(0, 1)

STABILIZERS = ("SU2", "U2", "SO3", "T2")


def enumerate_slice_reps(stabilizer: str, bound: int) -> list[SliceRep]:
    """Sphere-transitive slices of a connected singular stabilizer.

    ``bound`` caps m for U(2) and max(|p|, |q|) for T^2.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if stabilizer == "SU2":
        return [SU2Standard()]
    if stabilizer == "SO3":
        return [SO3Standard()]
    if stabilizer == "U2":
        return [U2Rep(m) for m in range(1, bound + 1, 2)]
    if stabilizer == "T2":
        reps = {
            TorusRep(p, q)
            for p in range(-bound, bound + 1)
            for q in range(-bound, bound + 1)
            if (p, q) != (0, 0)
        }
        return sorted(reps, key=lambda r: (max(abs(r.p), abs(r.q)), abs(r.p) + abs(r.q), -r.p, -r.q))
    raise ValueError(f"unknown stabilizer {stabilizer!r}; expected one of {STABILIZERS}")


ROOT_CIRCLE = canonicalize(1, -1)


def u2_weight(m: int) -> CartanVector:
    """h = u/2 + (m/6) v, the weight of the w1, w3 plane of U2(m)."""
    return Fraction(1, 2) * U_VEC + Fraction(m, 6) * V_VEC


@lru_cache(maxsize=None)
def principal_stabilizer(rep: SliceRep) -> PrincipalStabilizer:
    match rep:
        case SU2Standard() | SO3Standard():
            return PrincipalStabilizer(ROOT_CIRCLE, 1)
        case U2Rep(m=m):
            return PrincipalStabilizer(perp_line_in_cartan(u2_weight(m)), 1)
        case TorusRep(p=p, q=q):
            z = WeightVector(p, q).cartan()
            return PrincipalStabilizer(perp_line_in_cartan(z), gcd(p, q))
    raise TypeError(f"not a slice representation: {rep!r}")


def u2_closed_form(m: int) -> CircleSubgroup:
    return canonicalize((m - 1) // 2, -(m + 1) // 2)


def restrict_u2_to_torus(m: int) -> WeightVector:
    """Torus weight of U2(m) restricted to T^2: u/2 + (m/6) v = ((m-1)/2) z1 + z2."""
    if m % 2 == 0:
        raise NotOdd(f"m must be odd, got {m}")
    return WeightVector((m - 1) // 2, 1)


# -- real forms and the sphere-transitivity rank test --------------------------


@dataclass(frozen=True)
class RealRep:
    """Real matrices of a Lie algebra representation, one per generator."""

    generators: tuple[np.ndarray, ...]
    real_dim: int
    label: str = ""


def _so3_generators() -> tuple[np.ndarray, ...]:
    gens = []
    for a, b in ((1, 2), (2, 0), (0, 1)):
        e = np.zeros((3, 3))
        e[a, b], e[b, a] = -1.0, 1.0
        gens.append(e)
    return tuple(gens)


def _su2_adjoint_generators() -> tuple[np.ndarray, ...]:
    # ad(v_i) on span{v1, v2, v3}; coordinates via the inner product
    basis = [liealg.SU2_V1, liealg.SU2_V2, liealg.SU2_V3]
    norms = [liealg.inner(b, b) for b in basis]
    gens = []
    for x in basis:
        mat = np.array(
            [[liealg.inner(bi, liealg.bracket(x, bj)) / ni for bj in basis] for bi, ni in zip(basis, norms)]
        )
        gens.append(mat)
    return tuple(gens)


def _u2_generators(m: int) -> tuple[np.ndarray, ...]:
    """Real 4x4 matrices of su(2) + u(1) on V = span{w1, w2, w3, w4}.

    C^4 = Sigma^1 (x) (A^m + A^-m) with basis x(x)e, x(x)f, y(x)e, y(x)f;
    su(2) acts on (x, y) by the 2x2 blocks of v1, v2, v3 and the u(1)
    generator v by i m on e and -i m on f.
    """
    v2x2 = [liealg.SU2_V1[:2, :2], liealg.SU2_V2[:2, :2], liealg.SU2_V3[:2, :2]]
    ops = [np.kron(a, np.eye(2)) for a in v2x2]
    ops.append(np.kron(np.eye(2), np.diag([1j * m, -1j * m])))
    xe, xf, ye, yf = np.eye(4, dtype=complex)
    w = np.array([xe + yf, xf - ye, 1j * (xe - yf), 1j * (xf + ye)]).T
    w_inv = np.linalg.inv(w)
    gens = []
    for op in ops:
        mat = w_inv @ op @ w
        if np.abs(mat.imag).max() > 1e-12:
            raise AssertionError("span{w1..w4} is not invariant")
        gens.append(mat.real)
    return tuple(gens)


def real_form(rep: SliceRep) -> RealRep:
    match rep:
        case SU2Standard():
            return RealRep(_su2_adjoint_generators(), 3, rep.label)
        case SO3Standard():
            return RealRep(_so3_generators(), 3, rep.label)
        case U2Rep(m=m):
            return RealRep(_u2_generators(m), 4, rep.label)
        case TorusRep(p=p, q=q):
            j = np.array([[0.0, -1.0], [1.0, 0.0]])
            return RealRep((p * j, q * j), 2, rep.label)
    raise TypeError(f"not a slice representation: {rep!r}")


def trivial_torus_rep() -> RealRep:
    """Control: T^2 acting trivially on R^2, i.e. weight (0, 0)."""
    zero = np.zeros((2, 2))
    return RealRep((zero, zero), 2, "Torus(0,0)")


def orbit_rank(rep: RealRep, x: np.ndarray, tol: float = liealg.DEFAULT_TOL.rank) -> int:
    """Rank of the infinitesimal orbit map at x: span{A x : A a generator}."""
    tangent = np.array([g @ x for g in rep.generators]).T
    return liealg.numeric_rank(tangent, tol)


def sphere_transitivity_check(
    rep: SliceRep | RealRep,
    samples: int = 8,
    seed: int = 0,
    tol: float = liealg.DEFAULT_TOL.rank,
) -> bool:
    """True iff the orbit map has rank dim - 1 at ``samples`` random unit vectors."""
    real = rep if isinstance(rep, RealRep) else real_form(rep)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = rng.standard_normal(real.real_dim)
        x /= np.linalg.norm(x)
        if orbit_rank(real, x, tol) != real.real_dim - 1:
            return False
    return True
