"""Gluing two tubular neighbourhoods along a principal orbit SU(3)/H.

A tube is a singular orbit SU(3)/K together with its slice representation.
Two tubes glue iff their principal stabilizers agree up to conjugacy; the
gluings are then parametrised by N(H)/H, and the number of equivariant
diffeomorphism classes is the number of its components that cannot be
extended over either tube. For this group that reduces to one question: does
the extra component tau T^2 of the normalizer of a root circle meet the
normalizer of the singular stabilizer ("tau absorbed")?
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

from . import reps
from .cartan import (
    CircleType,
    canonicalize,
    normalizer_components_nonconnected,
    weyl_sign_images,
)
from .errors import IncompatibleRegime, NotRootType, ZeroPair

TUBE_KINDS = ("S", "L", "P", "F", "Squot", "Lquot3")


def _weight_triple(p: int, q: int) -> tuple[int, int, int]:
    # 3 * (p z1 + q z2) as a diagonal triple
    return (p + 2 * q, p - q, -2 * p - q)


def _weight_from_triple(t) -> tuple[int, int]:
    return ((t[0] + 2 * t[1]) // 3, (t[0] - t[1]) // 3)


def canonical_flag_label(p: int, q: int) -> tuple[int, int]:
    """Canonical torus weight up to the Weyl group and sign.

    Every orbit meets the dominant chamber p, q >= 0 in (p, q) and (q, p);
    of those we keep the one with the smallest positive q, so that (0, h)
    and ((l-1)/2, 1) are their own representatives.
    """
    if p == 0 and q == 0:
        raise ZeroPair("F(0,0) has no sphere-transitive slice")
    images = {_weight_from_triple(t) for t in weyl_sign_images(_weight_triple(p, q))}
    dominant = [w for w in images if w[0] >= 0 and w[1] > 0]
    return min(dominant, key=lambda w: (w[1], w[0]))


@dataclass(frozen=True)
class Tube:
    """A singular orbit with its slice representation.

    kinds: S = SU(3)/SU(2), L = SU(3)/SO(3), P(m) over CP^2, F(p, q) over the
    flag manifold, Squot(h) = S/Z_h (h > 1) and Lquot3 = L/Z_3.
    """

    kind: str
    params: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in TUBE_KINDS:
            raise ValueError(f"unknown tube kind {self.kind!r}")
        expected = {"S": 0, "L": 0, "Lquot3": 0, "P": 1, "Squot": 1, "F": 2}[self.kind]
        if len(self.params) != expected:
            raise ValueError(f"{self.kind} takes {expected} parameters, got {self.params}")
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        if self.kind == "P":
            self.slice  # validates oddness
        if self.kind == "Squot" and self.params[0] < 2:
            raise ValueError("Squot(h) needs h > 1")
        if self.kind == "F" and self.params == (0, 0):
            raise ZeroPair("F(0,0) has no sphere-transitive slice")

    @property
    def slice(self) -> reps.SliceRep:
        if self.kind in ("S", "Squot"):
            return reps.SU2Standard()
        if self.kind in ("L", "Lquot3"):
            return reps.SO3Standard()
        if self.kind == "P":
            return reps.U2Rep(self.params[0])
        return reps.TorusRep(*self.params)

    @property
    def label(self) -> str:
        if self.kind in ("S", "L", "Lquot3"):
            return self.kind
        return f"{self.kind}({','.join(map(str, self.params))})"

    def canonical(self) -> "Tube":
        """Same tube up to equivariant diffeomorphism, with a canonical label."""
        if self.kind == "F":
            return Tube("F", canonical_flag_label(*self.params))
        if self.kind == "P":
            return Tube("P", (abs(self.params[0]),))
        return self

    @property
    def is_quotient(self) -> bool:
        return self.kind in ("Squot", "Lquot3")

    def __str__(self) -> str:
        return self.label


S = Tube("S")
L = Tube("L")
LQUOT3 = Tube("Lquot3")


def P(m: int) -> Tube:
    return Tube("P", (m,))


def F(p: int, q: int) -> Tube:
    return Tube("F", (p, q))


def Squot(h: int) -> Tube:
    return Tube("Squot", (h,))


def tube_principal_stabilizer(t: Tube) -> reps.PrincipalStabilizer:
    base = reps.principal_stabilizer(t.slice)
    if t.kind == "Squot":
        return reps.PrincipalStabilizer(base.circle, t.params[0])
    if t.kind == "Lquot3":
        return reps.PrincipalStabilizer(base.circle, 3)
    return base


class Reason(str, enum.Enum):
    NO_MATCH = "NoMatch"
    CONNECTED_NORMALIZER = "UniqueByConnectedNormalizer"
    TAU_ABSORBED = "TauAbsorbed"
    TWO_CLASSES = "TwoClasses"


@dataclass(frozen=True)
class GluingCount:
    count: int
    reason: Reason

    def __post_init__(self):
        if self.count not in (0, 1, 2) or (self.count == 2) != (self.reason is Reason.TWO_CLASSES):
            raise ValueError(f"inconsistent gluing count {self.count} / {self.reason}")


def tube_absorbs_tau(t: Tube) -> bool:
    """Whether the tau-component of N(H) meets N(K) for this tube.

    tau lies in SU(2) and SO(3) (and so in their Z_h extensions) and in N(T^2);
    it misses S(U(2) x U(1)), which is only relevant for P(1).
    """
    if tube_principal_stabilizer(t).circle.kind is not CircleType.ROOT:
        raise NotRootType(f"{t.label} does not have a root-type principal stabilizer")
    return t.kind != "P"


def _check_regime(t1: Tube, t2: Tube) -> None:
    # A finite extension of SU(2) or SO(3) only glues against a T^2 tube.
    for a, b in ((t1, t2), (t2, t1)):
        if a.is_quotient and b.kind != "F":
            raise IncompatibleRegime(
                f"{a.label} has non-connected stabilizer and needs a flag tube partner, got {b.label}"
            )


def count_diffeo_classes(t1: Tube, t2: Tube) -> GluingCount:
    """Number of SU(3)-diffeomorphism classes of manifolds glued from t1 and t2."""
    _check_regime(t1, t2)
    h1, h2 = tube_principal_stabilizer(t1), tube_principal_stabilizer(t2)
    if h1 != h2:
        return GluingCount(0, Reason.NO_MATCH)
    if normalizer_components_nonconnected(h1.circle, h1.finite_part) == 1:
        return GluingCount(1, Reason.CONNECTED_NORMALIZER)
    # two components; the second is tau T^2 and is harmless if either end absorbs it
    if h1.circle.kind is CircleType.ROOT:
        absorbed = tube_absorbs_tau(t1) or tube_absorbs_tau(t2)
    else:
        # singular circle times Z_h: only flag tubes carry it, and tau is in N(T^2)
        absorbed = t1.kind == "F" or t2.kind == "F"
    if absorbed:
        return GluingCount(1, Reason.TAU_ABSORBED)
    return GluingCount(2, Reason.TWO_CLASSES)


def flag_labels(bound: int, primitive: bool | None = None) -> list[tuple[int, int]]:
    """Canonical F labels with max(p, q) <= bound, optionally filtered by gcd = 1."""
    labels = {
        canonical_flag_label(p, q)
        for p in range(0, bound + 1)
        for q in range(0, bound + 1)
        if (p, q) != (0, 0)
    }
    labels = {w for w in labels if max(w) <= bound}
    if primitive is not None:
        labels = {w for w in labels if (gcd(*w) == 1) == primitive}
    return sorted(labels, key=lambda w: (max(w), w[0], w[1]))


def all_tubes(bound: int) -> list[Tube]:
    tubes = [S, L]
    tubes += [P(m) for m in range(1, bound + 1, 2)]
    tubes += [F(p, q) for p, q in flag_labels(bound)]
    tubes += [Squot(h) for h in range(2, bound + 1)]
    if bound >= 3:
        tubes.append(LQUOT3)
    return tubes


def admissible_partners(t: Tube, bound: int) -> list[tuple[Tube, GluingCount]]:
    out = []
    for other in all_tubes(bound):
        try:
            g = count_diffeo_classes(t, other)
        except IncompatibleRegime:
            continue
        if g.count > 0:
            out.append((other, g))
    return out


@dataclass(frozen=True)
class CircleBaseResult:
    trivial_bundle: bool
    nontrivial_bundle_exists: bool


def classify_circle_base(k: int, l: int) -> CircleBaseResult:
    """Bundles over S^1 with fibre SU(3)/U_{k,l}; a nontrivial one needs a
    disconnected N(H)/H, which happens only for root circles."""
    c = canonicalize(k, l)
    return CircleBaseResult(True, c.kind is CircleType.ROOT)


# -- tables ---------------------------------------------------------------------


@dataclass
class Table:
    table_id: str
    caption: str
    row_labels: list[str]
    col_labels: list[str]
    cells: list[list]
    named_examples: list[dict] = field(default_factory=list)
    corner: str = "M2\\M1"

    def cell(self, row: str, col: str):
        return self.cells[self.row_labels.index(row)][self.col_labels.index(col)]

    def to_dict(self) -> dict:
        return {
            "table_id": self.table_id,
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "cells": [list(r) for r in self.cells],
            "named_examples": list(self.named_examples),
        }


# Manifolds recognised among the glued examples: (row, col, name).
NAMED_EXAMPLES = {
    "table2": [
        ("P(1)", "P(1)", "complex Grassmannian Gr_2(C^4)"),
        ("P(1)", "S", "quaternionic projective plane HP^2"),
        ("S", "P(1)", "quaternionic projective plane HP^2"),
        ("P(1)", "L", "exceptional Wolf space G2/SO(4)"),
        ("L", "P(1)", "exceptional Wolf space G2/SO(4)"),
        ("L", "S", "the group SU(3) under consimilarity"),
        ("S", "L", "the group SU(3) under consimilarity"),
    ],
    "table3": [
        ("F(1,1)", "P(3)", "CP^2 x CP^2 with the diagonal action"),
    ],
}


def _table1(bound: int) -> Table:
    rows, cells = [], []
    for stab in reps.STABILIZERS:
        found = reps.enumerate_slice_reps(stab, bound)
        rows.append(stab)
        cells.append([found[0].real_dim, ", ".join(r.label for r in found)])
    return Table(
        "table1",
        "Connected singular stabilizers and their sphere-transitive slice representations",
        rows,
        ["dim V", "V"],
        cells,
        corner="K",
    )


def _count_table(table_id, caption, rows: list[Tube], cols: list[Tube]) -> Table:
    cells = [[count_diffeo_classes(r, c).count for c in cols] for r in rows]
    row_labels = [r.label for r in rows]
    col_labels = [c.label for c in cols]
    named = [
        {"row": r, "col": c, "name": name}
        for r, c, name in NAMED_EXAMPLES.get(table_id, [])
        if r in row_labels and c in col_labels
    ]
    return Table(table_id, caption, row_labels, col_labels, cells, named)


def table_layout(bound: int) -> dict[str, tuple[list[Tube], list[Tube]]]:
    """Row and column tubes of Tables 2-4 (rows are M2, columns M1)."""
    conn = [S, L] + [P(m) for m in range(1, bound + 1, 2)]
    f1 = [F(*w) for w in flag_labels(bound, primitive=True)]
    fh = [F(*w) for w in flag_labels(bound, primitive=False)]
    t3_cols = f1 + [P(m) for m in range(1, bound + 1, 2)] + [L, S]
    t4_cols = [] if not fh else [Squot(h) for h in range(2, bound + 1)] + ([LQUOT3] if bound >= 3 else []) + fh
    return {"table2": (conn, conn), "table3": (f1, t3_cols), "table4": (fh, t4_cols)}


CAPTIONS = {
    "table2": "SU(3)-diffeomorphism classes, singular stabilizers in {SU(2), U(2), SO(3)}",
    "table3": "SU(3)-diffeomorphism classes, one singular stabilizer T^2 with gcd(p,q) = 1",
    "table4": "SU(3)-diffeomorphism classes, non-connected principal stabilizers (gcd(p,q) != 1)",
}


def emit_tables(bound: int) -> list[Table]:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    tables = [_table1(bound)]
    for tid, (rows, cols) in table_layout(bound).items():
        tables.append(_count_table(tid, CAPTIONS[tid], rows, cols))
    return tables


# -- literal delta formulas -------------------------------------------------------
#
# An independent evaluation of the published table entries on canonical
# labels; it never consults principal stabilizers or normalizers.


def _d(a, b) -> int:
    return int(a == b)


def delta_entry(table_id: str, row: Tube, col: Tube) -> int:
    row, col = row.canonical(), col.canonical()
    if table_id == "table2":
        if row.kind in ("S", "L") and col.kind in ("S", "L"):
            return 1
        if row.kind in ("S", "L"):
            (l,) = col.params
            return _d(l, 1)
        if col.kind in ("S", "L"):
            (m,) = row.params
            return _d(m, 1)
        (m,), (l,) = row.params, col.params
        return _d(l, m) + _d(l, 1) * _d(m, 1)
    p, q = row.params
    if table_id == "table3":
        if col.kind == "F":
            l, m = col.params
            return _d(p, l) * _d(q, m)
        if col.kind == "P":
            (l,) = col.params
            return _d(2 * p, l - 1) * _d(q, 1)
        return _d(p, 0) * _d(q, 1)
    if table_id == "table4":
        if col.kind == "Squot":
            (h,) = col.params
            return _d(p, 0) * _d(q, h)
        if col.kind == "Lquot3":
            return _d(p, 0) * _d(q, 3)
        l, m = col.params
        return _d(p, l) * _d(q, m)
    raise ValueError(f"unknown table {table_id!r}")


def delta_tables(bound: int) -> dict[str, list[list[int]]]:
    return {
        tid: [[delta_entry(tid, r, c) for c in cols] for r in rows]
        for tid, (rows, cols) in table_layout(bound).items()
    }
