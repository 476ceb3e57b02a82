"""3x3 complex matrix numerics for su(3) and SU(3).

Group and algebra elements are plain ``numpy`` arrays of shape (3, 3) (or
stacks of shape (n, 3, 3)); the predicates below check their invariants.
The invariant inner product is fixed to <X, Y> = -Tr(XY).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import RankUnstable

GroupMatrix = np.ndarray
AlgebraElement = np.ndarray


@dataclass(frozen=True)
class Tolerances:
    mat: float = 1e-9
    rank: float = 1e-7

    def __post_init__(self):
        if not 0 < self.mat < 1:
            raise ValueError(f"tol_mat must lie in (0, 1), got {self.mat}")
        if not 0 < self.rank < 1:
            raise ValueError(f"tol_rank must lie in (0, 1), got {self.rank}")


DEFAULT_TOL = Tolerances()


def _diag(*entries) -> np.ndarray:
    return np.diag(np.array(entries, dtype=complex))


# Cartan elements.  u generates the root circle U_{1,-1}, v the singular
# circle U_{1,1}, u' the second simple coroot; v = u + 2 u'.
U = _diag(1j, -1j, 0)
V = _diag(1j, 1j, -2j)
U_PRIME = _diag(0, 1j, -1j)

# su(2) in the upper-left block: [v2, v3] = -2 v1 and v1 = u.
SU2_V1 = U.copy()
SU2_V2 = np.array([[0, 1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex)
SU2_V3 = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=complex)

# Normal direction at the identity for consimilarity; B(t) = expm(t W_NORMAL).
W_NORMAL = SU2_V3.copy()

IDENTITY = np.eye(3, dtype=complex)


def _orthonormal_basis() -> np.ndarray:
    # i * (Gell-Mann matrices) / sqrt(2): orthonormal for -Tr(XY)
    basis = []
    for a in range(3):
        for b in range(a + 1, 3):
            e = np.zeros((3, 3), dtype=complex)
            e[a, b], e[b, a] = 1, -1
            basis.append(e / np.sqrt(2))
            e = np.zeros((3, 3), dtype=complex)
            e[a, b], e[b, a] = 1j, 1j
            basis.append(e / np.sqrt(2))
    basis.append(U / np.sqrt(2))
    basis.append(V / np.sqrt(6))
    return np.array(basis)


BASIS = _orthonormal_basis()
BASIS.setflags(write=False)


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x @ y - y @ x


def inner(x: AlgebraElement, y: AlgebraElement) -> float | np.ndarray:
    """<x, y> = -Tr(xy); works on stacks along the leading axis."""
    return -np.einsum("...ij,...ji->...", x, y).real


def norm(x: AlgebraElement) -> float:
    return float(np.sqrt(inner(x, x)))


def to_coords(x: AlgebraElement) -> np.ndarray:
    """Coordinates of x in the orthonormal basis ``BASIS``."""
    return -np.einsum("aij,...ji->...a", BASIS, x).real


def from_coords(c: np.ndarray) -> AlgebraElement:
    return np.einsum("...a,aij->...ij", np.asarray(c, dtype=float), BASIS)


def structure_tensor() -> np.ndarray:
    """c[a, b, e] = <E_a, [E_b, E_e]> in the orthonormal basis (totally antisymmetric)."""
    brackets = np.einsum("bij,ejk->beik", BASIS, BASIS) - np.einsum("eij,bjk->beik", BASIS, BASIS)
    return -np.einsum("aij,beji->abe", BASIS, brackets).real


def is_algebra_element(x: np.ndarray, tol: float = DEFAULT_TOL.mat) -> bool:
    x = np.asarray(x)
    return bool(np.abs(x.conj().T + x).max() < tol and abs(np.trace(x)) < tol)


def is_group_matrix(m: np.ndarray, tol: float = DEFAULT_TOL.mat) -> bool:
    return group_defect(m) < tol


def group_defect(m: np.ndarray) -> float:
    """max(|M^H M - I|, |det M - 1|), reduced over any leading stack axes."""
    m = np.asarray(m)
    gram = np.swapaxes(m.conj(), -1, -2) @ m
    unit = np.abs(gram - np.eye(3)).max()
    det = np.abs(np.linalg.det(m) - 1).max()
    return float(max(unit, det))


def expm(x: AlgebraElement) -> GroupMatrix:
    """Matrix exponential of (a stack of) su(3) elements.

    i x is Hermitian, so exp(x) = Q diag(exp(-i lam)) Q^H from the eigenpairs
    of i x; the result is unitary to rounding and has det = exp(Tr x) = 1.
    """
    x = np.asarray(x, dtype=complex)
    herm = 1j * x
    herm = 0.5 * (herm + np.swapaxes(herm.conj(), -1, -2))
    lam, q = np.linalg.eigh(herm)
    return (q * np.exp(-1j * lam)[..., None, :]) @ np.swapaxes(q.conj(), -1, -2)


def adjoint(g: GroupMatrix, x: AlgebraElement) -> AlgebraElement:
    """Ad_g x = g x g^{-1} (g unitary)."""
    return g @ x @ np.swapaxes(np.conj(g), -1, -2)


def random_algebra(rng: np.random.Generator, n: int | None = None, scale: float = 1.0):
    """Algebra elements with i.i.d. normal coordinates in the orthonormal basis."""
    shape = (8,) if n is None else (n, 8)
    return from_coords(scale * rng.standard_normal(shape))


def random_group(rng: np.random.Generator, n: int | None = None, scale: float = 1.0):
    return expm(random_algebra(rng, n, scale))


def constraint_matrix(constraint: Callable[[AlgebraElement], np.ndarray]) -> np.ndarray:
    """Real matrix of a real-linear map on su(3), one column per basis element."""
    cols = []
    for e in BASIS:
        val = np.asarray(constraint(e))
        if np.iscomplexobj(val):
            cols.append(np.concatenate([val.real.ravel(), val.imag.ravel()]))
        else:
            cols.append(np.asarray(val, dtype=float).ravel())
    return np.array(cols).T


def numeric_rank(mat: np.ndarray, tol: float = DEFAULT_TOL.rank) -> int:
    """Rank from singular values; refuses to decide when one is near ``tol``."""
    s = np.linalg.svd(mat, compute_uv=False)
    near = s[(s > tol / 10) & (s < tol * 10)]
    if near.size:
        raise RankUnstable(float(near[0]), tol)
    return int(np.sum(s > tol))


def stabilizer_dim_linear(
    constraint: Callable[[AlgebraElement], np.ndarray], tol: float = DEFAULT_TOL.rank
) -> int:
    """Dimension of the kernel of a linear constraint on su(3): 8 - rank."""
    return 8 - numeric_rank(constraint_matrix(constraint), tol)


def centralizer_dim(h: AlgebraElement, tol: float = DEFAULT_TOL.rank) -> int:
    """dim {X in su(3) : [X, h] = 0}; h is normalised first."""
    h = h / norm(h)
    return stabilizer_dim_linear(lambda x: bracket(x, h), tol)
