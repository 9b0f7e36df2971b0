"""Chamber decomposition of the semistable cone of a weight system.

Characters in the interior of the cone spanned by the weight columns are
partitioned into finitely many full-dimensional chambers by the hyperplanes
spanned by column subsets.  Two characters in the same chamber give the same
quotient; crossing a wall changes it.  This module enumerates the chambers,
the walls between them, and the facets on the boundary of the semistable
cone, all with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cones import Cone, cone_from_generators, intersect, split_by_hyperplanes
from .errors import (
    DimensionMismatchError,
    InvariantViolationError,
    RankDeficientWeightsError,
)
from .linalg import IntVec, det, dot, rank_of
from .toric import (
    QuotientData,
    WeightSystem,
    g_ample_cone,
    quotient_fan_data,
    wall_hyperplanes,
)

# Below these sizes every chamber is cross-checked against the direct
# description as an intersection of simplicial column cones.
_CROSS_CHECK_RHO = 3
_CROSS_CHECK_R = 8


@dataclass(frozen=True)
class Chamber:
    """One full-dimensional chamber, with an integer interior representative."""

    id: int
    cone: Cone
    representative: IntVec


@dataclass(frozen=True)
class Wall:
    """Shared facet of two chambers; the normal is positive on the right chamber."""

    left: int
    right: int
    normal: IntVec
    facet: Cone


@dataclass(frozen=True)
class BoundaryFacet:
    """Chamber facet on the boundary of the semistable cone; normal points inward."""

    chamber: int
    normal: IntVec
    facet: Cone


@dataclass(frozen=True)
class ChamberLocation:
    """Where a character sits: interior / wall / boundary / face / outside."""

    kind: str
    chamber: int | None = None
    wall: int | None = None
    boundary_facet: int | None = None


@dataclass
class ChamberComplex:
    """The full chamber decomposition of the semistable cone of a weight system."""

    weights: WeightSystem
    g_ample: Cone
    hyperplanes: tuple[IntVec, ...]
    chambers: tuple[Chamber, ...]
    walls: tuple[Wall, ...]
    boundary_facets: tuple[BoundaryFacet, ...]
    _quotients: dict = field(default_factory=dict, repr=False, compare=False)
    _moving: object = field(default=None, repr=False, compare=False)

    def quotient(self, chamber_id: int) -> QuotientData:
        """Quotient fan data of a chamber, computed once and cached."""
        if chamber_id not in self._quotients:
            rep = self.chambers[chamber_id].representative
            self._quotients[chamber_id] = quotient_fan_data(self.weights, rep)
        return self._quotients[chamber_id]


def _sign_vector(hyperplanes, point) -> tuple[int, ...]:
    out = []
    for h in hyperplanes:
        s = dot(h, point)
        out.append(0 if s == 0 else (1 if s > 0 else -1))
    return tuple(out)


def _simplicial_cross_check(ws: WeightSystem, chamber: Chamber) -> None:
    pieces = []
    for subset in combinations(range(ws.r), ws.rho):
        rows = [[ws.columns[j][t] for j in subset] for t in range(ws.rho)]
        if det(rows) == 0:
            continue
        cone = cone_from_generators(
            [ws.columns[j] for j in subset], ambient_dim=ws.rho
        )
        if cone.contains(chamber.representative) != "outside":
            pieces.append(cone)
    if not pieces:
        raise InvariantViolationError(
            f"chamber representative {chamber.representative} lies in no simplicial column cone"
        )
    expected = pieces[0]
    for c in pieces[1:]:
        expected = intersect(expected, c)
    if expected != chamber.cone:
        raise InvariantViolationError(
            f"chamber {chamber.id} disagrees with the intersection of simplicial "
            "column cones: the candidate hyperplanes strictly refine the coarsest "
            "decomposition here; pass cross_check=False to accept the refinement"
        )


def enumerate_chambers(ws: WeightSystem, cross_check: bool | None = None) -> ChamberComplex:
    """Enumerate all chambers, walls, and boundary facets of a weight system.

    Chambers are the distinct strict sign vectors realized inside the
    semistable cone; walls join chambers whose sign vectors differ in one
    hyperplane.  At small sizes each chamber is also verified against the
    intersection of the simplicial column cones containing its
    representative.
    """
    w_rows = [tuple(c[j] for c in ws.columns) for j in range(ws.rho)]
    if rank_of(w_rows) < ws.rho:
        raise RankDeficientWeightsError(
            f"weight matrix has rank below {ws.rho}; no chamber is full-dimensional"
        )
    g = g_ample_cone(ws)
    hyps = wall_hyperplanes(ws)
    cells = split_by_hyperplanes(g, hyps)
    cones = [
        cone_from_generators(cell.rays, cell.lineality, ambient_dim=ws.rho)
        for cell in cells
    ]
    order = sorted(range(len(cells)), key=lambda i: (cones[i].generators, cones[i].lineality))
    chambers = []
    for new_id, idx in enumerate(order):
        rep = cones[idx].relative_interior_point()
        chambers.append(Chamber(new_id, cones[idx], rep))
    signs = [_sign_vector(hyps, ch.representative) for ch in chambers]
    if any(0 in s for s in signs):
        raise InvariantViolationError("chamber representative landed on a hyperplane")

    if cross_check is None:
        cross_check = ws.rho <= _CROSS_CHECK_RHO and ws.r <= _CROSS_CHECK_R
    if cross_check:
        for ch in chambers:
            _simplicial_cross_check(ws, ch)

    walls = []
    wall_facets_by_chamber: dict[int, list[Cone]] = {ch.id: [] for ch in chambers}
    for i, j in combinations(range(len(chambers)), 2):
        diff = [k for k, (a, b) in enumerate(zip(signs[i], signs[j])) if a != b]
        if len(diff) != 1:
            continue
        k = diff[0]
        facet = intersect(chambers[i].cone, chambers[j].cone)
        if len(facet.equations) != 1:
            raise InvariantViolationError(
                f"wall between chambers {i} and {j} is not codimension one"
            )
        left, right = (i, j) if signs[j][k] > 0 else (j, i)
        walls.append(Wall(left, right, hyps[k], facet))
        wall_facets_by_chamber[i].append(facet)
        wall_facets_by_chamber[j].append(facet)
    walls.sort(key=lambda w: (w.left, w.right))

    boundary = []
    for ch in chambers:
        for h in ch.cone.inequalities:
            tight = [g_ for g_ in ch.cone.generators if dot(h, g_) == 0]
            facet = cone_from_generators(tight, ch.cone.lineality, ambient_dim=ws.rho)
            if facet not in wall_facets_by_chamber[ch.id]:
                boundary.append(BoundaryFacet(ch.id, h, facet))
    boundary.sort(key=lambda b: (b.chamber, b.normal))

    return ChamberComplex(ws, g, hyps, tuple(chambers), tuple(walls), tuple(boundary))


def chamber_of(complex_: ChamberComplex, chi) -> ChamberLocation:
    """Locate a character within the chamber complex."""
    chi = tuple(int(x) for x in chi)
    if len(chi) != complex_.weights.rho:
        raise DimensionMismatchError(
            f"character of length {len(chi)} for a rank-{complex_.weights.rho} grading"
        )
    loc = complex_.g_ample.contains(chi)
    if loc == "outside":
        return ChamberLocation("outside")
    for ch in complex_.chambers:
        if ch.cone.contains(chi) == "interior":
            return ChamberLocation("interior", chamber=ch.id)
    for idx, w in enumerate(complex_.walls):
        if w.facet.contains(chi) == "interior":
            return ChamberLocation("wall", wall=idx)
    for idx, b in enumerate(complex_.boundary_facets):
        if b.facet.contains(chi) == "interior":
            return ChamberLocation("boundary", chamber=b.chamber, boundary_facet=idx)
    return ChamberLocation("face")


@dataclass(frozen=True)
class CoverReport:
    """Result of the disjoint-cover verification of a chamber complex."""

    ok: bool
    n_chambers: int
    n_walls: int
    n_boundary_facets: int
    issues: tuple[str, ...]


def verify_disjoint_cover(complex_: ChamberComplex) -> CoverReport:
    """Verify chambers have disjoint interiors and account for every facet.

    Checks: pairwise intersections of chambers are lower-dimensional, each
    representative is interior to exactly its own chamber, wall relative
    interiors touch exactly their two chambers, and boundary facet relative
    interiors touch exactly one chamber.
    """
    issues = []
    chambers = complex_.chambers
    for a, b in combinations(chambers, 2):
        common = intersect(a.cone, b.cone)
        if common.is_full_dim:
            issues.append(f"chambers {a.id} and {b.id} overlap in full dimension")
    for ch in chambers:
        for other in chambers:
            loc = other.cone.contains(ch.representative)
            if (loc == "interior") != (other.id == ch.id):
                issues.append(
                    f"representative of chamber {ch.id} mislocated in chamber {other.id}: {loc}"
                )
    for idx, w in enumerate(complex_.walls):
        p = w.facet.relative_interior_point()
        touching = sorted(
            ch.id for ch in chambers if ch.cone.contains(p) != "outside"
        )
        if touching != sorted((w.left, w.right)):
            issues.append(f"wall {idx} touches chambers {touching}")
        if dot(w.normal, complex_.chambers[w.right].representative) <= 0:
            issues.append(f"wall {idx} normal not positive on its right chamber")
        if dot(w.normal, complex_.chambers[w.left].representative) >= 0:
            issues.append(f"wall {idx} normal not negative on its left chamber")
    for idx, b in enumerate(complex_.boundary_facets):
        p = b.facet.relative_interior_point()
        touching = sorted(
            ch.id for ch in chambers if ch.cone.contains(p) != "outside"
        )
        expected = [b.chamber]
        if b.facet.is_zero:
            # the origin lies in every chamber closure
            expected = sorted(ch.id for ch in chambers)
        if touching != expected:
            issues.append(f"boundary facet {idx} touches chambers {touching}")
    return CoverReport(
        not issues,
        len(chambers),
        len(complex_.walls),
        len(complex_.boundary_facets),
        tuple(issues),
    )
