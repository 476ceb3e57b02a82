"""Hot numeric loops, each with a numba implementation and a numpy fallback.

The numba path is used by default. Set ``SU3COHOM_DISABLE_NUMBA=1`` to force
the numpy path everywhere (useful on platforms without a working LLVM, and
for cross-checking). Every public kernel also takes ``backend=`` so both
paths can be compared side by side, see ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np
from scipy import ndimage

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return decorator


ENV_FLAG = "SU3COHOM_DISABLE_NUMBA"


def default_backend() -> str:
    flag = os.environ.get(ENV_FLAG, "").strip().lower()
    if not HAVE_NUMBA or flag in ("1", "true", "yes", "on"):
        return "numpy"
    return "numba"


def _resolve(backend: str | None) -> str:
    backend = backend or default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


# ---------------------------------------------------------------------------
# Cells of an n x n torus grid crossed by the lines p x + q y in Z.
#
# Corner (i, j) sits at (x, y) = (i/n, j/n), where p x + q y = (p i + q j)/n.
# A cell contains a solution iff the integer range of p i + q j over its four
# corners contains a multiple of n; the function is linear so the extremes
# are at corners and everything stays in exact integer arithmetic.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


@njit(cache=True)
def _torus_components_numba(p, q, n):
    # [g + lo_off, g + hi_off] holds a multiple of n iff (g + hi_off) mod n <= width;
    # the residue is stepped along each row instead of divided out per cell
    hi_off = max(0, p) + max(0, q)
    width = abs(p) + abs(q)
    step = q % n
    marked = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        r = (p * i + hi_off) % n
        for j in range(n):
            if r <= width:
                marked[i, j] = 1
            r += step
            if r >= n:
                r -= n

    parent = np.full(n * n, -1, dtype=np.int32)
    for i in range(n):
        for j in range(n):
            if marked[i, j]:
                parent[i * n + j] = i * n + j

    for i in range(n):
        i1 = (i + 1) % n
        for j in range(n):
            if not marked[i, j]:
                continue
            a = i * n + j
            # half of the 8-neighbourhood; the other half is reached from the neighbour
            for di, dj in ((0, 1), (1, -1), (1, 0), (1, 1)):
                ii = i1 if di == 1 else i
                jj = (j + dj) % n
                if marked[ii, jj]:
                    ra = _find(parent, a)
                    rb = _find(parent, ii * n + jj)
                    if ra != rb:
                        if ra < rb:
                            parent[rb] = ra
                        else:
                            parent[ra] = rb

    count = 0
    for a in range(n * n):
        if parent[a] == a:
            count += 1
    return count


def _torus_marked_numpy(p: int, q: int, n: int, chunk: int = 512) -> np.ndarray:
    lo_off = min(0, p) + min(0, q)
    hi_off = max(0, p) + max(0, q)
    marked = np.zeros((n, n), dtype=bool)
    j = np.arange(n, dtype=np.int64)
    for start in range(0, n, chunk):
        i = np.arange(start, min(start + chunk, n), dtype=np.int64)[:, None]
        g = p * i + q * j[None, :]
        marked[start : start + len(i)] = (g + hi_off) // n * n >= g + lo_off
    return marked


def _periodic_label_count(marked: np.ndarray) -> int:
    """Connected components under 8-connectivity with periodic boundaries."""
    labels, nlab = ndimage.label(marked, structure=np.ones((3, 3), dtype=int))
    if nlab == 0:
        return 0
    parent = list(range(nlab + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def join(x: np.ndarray, y: np.ndarray) -> None:
        both = (x > 0) & (y > 0)
        pairs = np.unique(np.stack([x[both], y[both]], axis=1), axis=0)
        for a, b in pairs:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    last, first = labels[-1], labels[0]
    for shift in (-1, 0, 1):
        join(last, np.roll(first, shift))
        join(labels[:, -1], np.roll(labels[:, 0], shift))
    return len({find(a) for a in range(1, nlab + 1)})


def torus_line_components(p: int, q: int, n: int, backend: str | None = None) -> int:
    """Count connected components of the discretised solution set of p x + q y in Z.

    The torus [0, 1)^2 is cut into an n x n grid; a cell belongs to the set when
    one of the lines passes through it (boundary included). Components are
    taken with 8-connectivity and periodic wrap-around.
    """
    if (p, q) == (0, 0):
        raise ValueError("(p, q) = (0, 0): every cell solves the equation")
    if n < 2:
        raise ValueError("grid must have at least 2 cells per side")
    if _resolve(backend) == "numba":
        return int(_torus_components_numba(int(p), int(q), int(n)))
    return _periodic_label_count(_torus_marked_numpy(int(p), int(q), int(n)))


# ---------------------------------------------------------------------------
# Zero cells of Im Tr exp(t u + s v) on the (t, s) torus [0, 2 pi)^2.
# exp(t u + s v) = diag(e^{i(t+s)}, e^{i(s-t)}, e^{-2is}).
# ---------------------------------------------------------------------------


@njit(cache=True)
def _hypersurface_cells_numba(n, tol):
    h = 2.0 * np.pi / n
    vals = np.empty((n, n))
    for i in range(n):
        t = i * h
        for j in range(n):
            s = j * h
            vals[i, j] = np.sin(t + s) + np.sin(s - t) + np.sin(-2.0 * s)
    cells = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        i1 = (i + 1) % n
        for j in range(n):
            j1 = (j + 1) % n
            a = vals[i, j]
            b = vals[i1, j]
            c = vals[i, j1]
            d = vals[i1, j1]
            lo = min(min(a, b), min(c, d))
            hi = max(max(a, b), max(c, d))
            if (lo <= 0.0 and hi >= 0.0) or min(min(abs(a), abs(b)), min(abs(c), abs(d))) < tol:
                cells[i, j] = True
    return cells


def _hypersurface_cells_numpy(n: int, tol: float) -> np.ndarray:
    h = 2.0 * np.pi / n
    t = (np.arange(n) * h)[:, None]
    s = (np.arange(n) * h)[None, :]
    vals = np.sin(t + s) + np.sin(s - t) + np.sin(-2.0 * s)
    corners = np.stack(
        [vals, np.roll(vals, -1, 0), np.roll(vals, -1, 1), np.roll(np.roll(vals, -1, 0), -1, 1)]
    )
    lo, hi = corners.min(axis=0), corners.max(axis=0)
    return ((lo <= 0.0) & (hi >= 0.0)) | (np.abs(corners).min(axis=0) < tol)


def hypersurface_cells(n: int, tol: float, backend: str | None = None) -> np.ndarray:
    """Boolean n x n mask of grid cells on which Im Tr exp(t u + s v) vanishes.

    Cell (i, j) covers t in [i h, (i+1) h], s in [j h, (j+1) h] with h = 2 pi / n.
    A cell is kept when its corner values change sign or one of them is below
    ``tol`` in absolute value.
    """
    if _resolve(backend) == "numba":
        return _hypersurface_cells_numba(int(n), float(tol))
    return _hypersurface_cells_numpy(int(n), float(tol))


def periodic_components(mask: np.ndarray) -> int:
    """Connected components of a boolean mask on a torus (8-connectivity)."""
    return _periodic_label_count(np.asarray(mask, dtype=bool))


# ---------------------------------------------------------------------------
# Batched evaluation of the 3-form phi(x, y, z) = <x, [y, z]>.
# Frames are given by coordinates in an orthonormal basis of su(3) and the
# form by its fully antisymmetric coefficient tensor c[a, b, c].
# ---------------------------------------------------------------------------


@njit(cache=True)
def _three_form_numba(coords, c):
    n = coords.shape[0]
    d = coords.shape[2]
    out = np.empty(n)
    for k in range(n):
        acc = 0.0
        for a in range(d):
            xa = coords[k, 0, a]
            if xa == 0.0:
                continue
            for b in range(d):
                yb = coords[k, 1, b]
                for e in range(d):
                    acc += xa * yb * coords[k, 2, e] * c[a, b, e]
        out[k] = acc
    return out


def three_form_batch(coords: np.ndarray, c: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Evaluate phi on a stack of frames of shape (n, 3, d)."""
    coords = np.ascontiguousarray(coords, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    if _resolve(backend) == "numba":
        return _three_form_numba(coords, c)
    return np.einsum("na,nb,ne,abe->n", coords[:, 0], coords[:, 1], coords[:, 2], c, optimize=True)
