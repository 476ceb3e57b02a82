import math
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from su3cohom import cartan, kernels, reps
from su3cohom.cartan import CircleType
from su3cohom.errors import NotOdd

odd = st.integers(0, 30).map(lambda r: 2 * r + 1)
small = st.integers(-8, 8)


def test_enumerate_examples():
    (su2,) = reps.enumerate_slice_reps("SU2", 7)
    assert su2.real_dim == 3
    assert reps.enumerate_slice_reps("SO3", 1) == [reps.SO3Standard()]
    assert [r.m for r in reps.enumerate_slice_reps("U2", 6)] == [1, 3, 5]
    t2 = reps.enumerate_slice_reps("T2", 1)
    assert [(r.p, r.q) for r in t2] == [(1, 0), (0, 1), (1, 1), (1, -1)]


def test_enumerate_errors():
    with pytest.raises(ValueError):
        reps.enumerate_slice_reps("G2", 3)
    with pytest.raises(ValueError):
        reps.enumerate_slice_reps("T2", 0)


def test_t2_enumeration_count():
    # (2b+1)^2 - 1 nonzero pairs, halved by the sign identification
    for b in range(1, 6):
        assert len(reps.enumerate_slice_reps("T2", b)) == ((2 * b + 1) ** 2 - 1) // 2


def test_rep_identifications():
    assert reps.U2Rep(-5) == reps.U2Rep(5)
    assert reps.TorusRep(-2, 3) == reps.TorusRep(2, -3)
    assert reps.TorusRep(0, -1) == reps.TorusRep(0, 1)
    with pytest.raises(NotOdd):
        reps.U2Rep(4)
    with pytest.raises(ValueError):
        reps.TorusRep(0, 0)


@given(small, small)
def test_weight_lattice_integrality(p, q):
    z = reps.WeightVector(p, q).cartan()
    assert 3 % z.a.denominator == 0 and 3 % z.b.denominator == 0
    # under -Tr the pairing comes out swapped relative to the lattice labels
    assert z.inner(cartan.U_VEC) == q
    assert z.inner(cartan.U_PRIME_VEC) == p


def test_weight_basis():
    assert reps.Z1.cartan() == Fraction(1, 3) * cartan.V_VEC
    assert reps.Z2.cartan() == Fraction(1, 3) * (2 * cartan.U_VEC + cartan.U_PRIME_VEC)


def test_principal_stabilizer_frozen():
    root = cartan.canonicalize(1, -1)
    assert reps.principal_stabilizer(reps.SU2Standard()) == reps.PrincipalStabilizer(root, 1)
    assert reps.principal_stabilizer(reps.SO3Standard()) == reps.PrincipalStabilizer(root, 1)
    assert reps.principal_stabilizer(reps.U2Rep(1)) == reps.PrincipalStabilizer(cartan.canonicalize(0, 1), 1)
    assert reps.principal_stabilizer(reps.U2Rep(3)).circle.kind is CircleType.SINGULAR
    t01 = reps.principal_stabilizer(reps.TorusRep(0, 1))
    assert t01 == reps.PrincipalStabilizer(cartan.CircleSubgroup(1, 0), 1)
    assert t01.circle.kind is CircleType.ROOT
    t22 = reps.principal_stabilizer(reps.TorusRep(2, 2))
    assert t22.circle == cartan.CircleSubgroup(2, -1) and t22.finite_part == 2
    assert t22.circle.kind is CircleType.SINGULAR
    assert str(t22) == "U(2,-1) x Z2"


@given(odd)
def test_u2_closed_form_matches_solve(m):
    assert reps.principal_stabilizer(reps.U2Rep(m)).circle == reps.u2_closed_form(m)


@given(odd)
def test_u2_restriction_consistent(m):
    w = reps.restrict_u2_to_torus(m)
    assert (w.p, w.q) == ((m - 1) // 2, 1)
    assert w.cartan() == reps.u2_weight(m)
    via_torus = reps.principal_stabilizer(reps.TorusRep(w.p, w.q))
    assert via_torus == reps.principal_stabilizer(reps.U2Rep(m))


def test_restrict_frozen():
    assert reps.restrict_u2_to_torus(1) == reps.WeightVector(0, 1)
    assert reps.restrict_u2_to_torus(3) == reps.WeightVector(1, 1)
    assert reps.restrict_u2_to_torus(7) == reps.WeightVector(3, 1)
    with pytest.raises(NotOdd):
        reps.restrict_u2_to_torus(2)


def _angle_to_root_lines(triple):
    v = np.array(triple, dtype=float)
    best = math.pi
    for img in cartan.weyl_sign_images((1, -1, 0)):
        w = np.array(img, dtype=float)
        best = min(best, math.acos(np.clip(v @ w / np.linalg.norm(v) / np.linalg.norm(w), -1, 1)))
    return best


def test_u2_stabilizer_tends_to_root():
    angles = [_angle_to_root_lines(reps.principal_stabilizer(reps.U2Rep(m)).circle.triple) for m in (5, 21, 101)]
    assert angles[0] > angles[1] > angles[2]
    assert angles[2] < 0.03


@given(small, small)
def test_torus_finite_part_is_gcd(p, q):
    assume((p, q) != (0, 0))
    ps = reps.principal_stabilizer(reps.TorusRep(p, q))
    assert ps.finite_part == gcd(p, q)
    assert cartan.canonicalize(ps.circle.k, ps.circle.l) == ps.circle


@pytest.mark.parametrize("p,q", [(1, 0), (2, 0), (2, 2), (4, 6), (3, -3), (1, 2), (5, 0)])
def test_torus_gcd_grid_oracle(p, q):
    n = 720 * max(abs(p), abs(q))
    assert kernels.torus_line_components(p, q, n) == reps.principal_stabilizer(reps.TorusRep(p, q)).finite_part


@given(small, small)
def test_torus_stabilizer_kills_weight(p, q):
    assume((p, q) != (0, 0))
    c = reps.principal_stabilizer(reps.TorusRep(p, q)).circle
    z = reps.WeightVector(p, q).cartan()
    # the canonical circle is conjugate to one orthogonal to z
    hits = [
        img for img in cartan.weyl_sign_images(c.triple)
        if cartan.CartanVector.from_triple(img).inner(z) == 0
    ]
    assert hits


@pytest.mark.parametrize(
    "rep",
    [reps.SU2Standard(), reps.SO3Standard(), reps.U2Rep(1), reps.U2Rep(3), reps.U2Rep(9),
     reps.TorusRep(2, 3), reps.TorusRep(1, 0), reps.TorusRep(4, -4)],
)
def test_sphere_transitive(rep):
    assert reps.sphere_transitivity_check(rep, samples=8)


def test_trivial_control_not_transitive():
    assert not reps.sphere_transitivity_check(reps.trivial_torus_rep())


def test_real_forms_are_representations():
    # brackets of the real matrices close on the generators (su(2) part of U2)
    for rep in (reps.SU2Standard(), reps.SO3Standard(), reps.U2Rep(5)):
        gens = reps.real_form(rep).generators
        for g in gens:
            assert np.allclose(g, -g.T)
        a, b = gens[1], gens[2]
        span = np.array([g.ravel() for g in gens[:3]]).T
        comm = (a @ b - b @ a).ravel()
        coef, res, *_ = np.linalg.lstsq(span, comm, rcond=None)
        assert np.allclose(span @ coef, comm)


def test_u2_generator_weights():
    # the u(1) generator rotates w1, w3 with speed m
    gens = reps.real_form(reps.U2Rep(7)).generators
    eig = np.linalg.eigvals(gens[3])
    assert sorted(np.round(np.abs(eig.imag)).astype(int)) == [7, 7, 7, 7]
