"""Simplicial fans, divisor class weights, Gale duality, and GIT quotient fans.

The central construction: a simplicial fan determines a grading of a
polynomial ring by the divisor class group (one variable per ray), and a
character chi of the grading torus determines a quotient fan supported on
the Gale-dual vectors.  For chi inside the chamber a fan came from, the
round trip reproduces the fan up to a unimodular change of coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cones import Cone, cone_from_generators, intersect
from .errors import (
    DegenerateLinearizationError,
    DimensionMismatchError,
    EmptySemistableLocusError,
    InvalidFanError,
    InvariantViolationError,
)
from .linalg import (
    IntVec,
    det,
    dot,
    hermite_normal_form,
    is_zero,
    kernel_basis,
    primitive,
    rank_of,
    smith_normal_form,
    solve_rational,
)


@dataclass(frozen=True)
class Fan:
    """A fan given by primitive ray generators and maximal cones as index sets."""

    ambient_dim: int
    rays: tuple[IntVec, ...]
    max_cones: tuple[tuple[int, ...], ...]


def make_fan(rays, max_cones, ambient_dim: int | None = None) -> Fan:
    """Build a Fan after normalizing rays to primitive and sorting cone data.

    Ray order is preserved (indices are meaningful); each cone is sorted and
    the list of cones is sorted and deduplicated.
    """
    rays = [tuple(r) for r in rays]
    if ambient_dim is None:
        if not rays:
            raise InvalidFanError("ambient_dim required for a fan with no rays")
        ambient_dim = len(rays[0])
    for r in rays:
        if len(r) != ambient_dim:
            raise InvalidFanError(f"ray {r} does not have length {ambient_dim}")
        if is_zero(r):
            raise InvalidFanError("zero vector is not a ray")
    prims = [primitive(r) for r in rays]
    if len(set(prims)) != len(prims):
        raise InvalidFanError("duplicate rays after normalizing to primitive vectors")
    cones = set()
    for c in max_cones:
        c = tuple(sorted(set(int(i) for i in c)))
        for i in c:
            if not 0 <= i < len(prims):
                raise InvalidFanError(f"cone index {i} out of range")
        cones.add(c)
    return Fan(ambient_dim, tuple(prims), tuple(sorted(cones)))


@dataclass(frozen=True)
class FanValidation:
    ok: bool
    issues: tuple[str, ...]


def _ray_cone(fan: Fan, indices) -> Cone:
    return cone_from_generators(
        [fan.rays[i] for i in indices], ambient_dim=fan.ambient_dim
    )


def validate_fan(fan: Fan) -> FanValidation:
    """Check simpliciality, maximality, and the pairwise face-intersection property."""
    issues = []
    for c in fan.max_cones:
        rows = [fan.rays[i] for i in c]
        if rank_of(rows) != len(c):
            issues.append(f"cone {c} is not simplicial: rays are dependent")
    for a, b in combinations(fan.max_cones, 2):
        if set(a) <= set(b) or set(b) <= set(a):
            issues.append(f"cone {a} and cone {b} are nested; both listed as maximal")
    if not issues:
        for a, b in combinations(fan.max_cones, 2):
            shared = tuple(sorted(set(a) & set(b)))
            if intersect(_ray_cone(fan, a), _ray_cone(fan, b)) != _ray_cone(fan, shared):
                issues.append(
                    f"cones {a} and {b} do not meet along their common face {shared}"
                )
    return FanValidation(not issues, tuple(issues))


def is_complete(fan: Fan) -> bool:
    """Whether the fan's support is the whole space.

    Valid for simplicial fans: complete iff every maximal cone is
    full-dimensional and every facet (drop one ray) is shared by exactly
    two maximal cones.
    """
    d = fan.ambient_dim
    if d == 0:
        return True
    if not fan.max_cones:
        return False
    facet_count: dict[tuple[int, ...], int] = {}
    for c in fan.max_cones:
        if len(c) != d or rank_of([fan.rays[i] for i in c]) != d:
            return False
        for drop in c:
            f = tuple(i for i in c if i != drop)
            facet_count[f] = facet_count.get(f, 0) + 1
    return all(v == 2 for v in facet_count.values())


def canonicalize_fan(fan: Fan) -> Fan:
    """Unimodular-coordinate canonical form of a fan.

    Applies the change of basis that brings the matrix of ray coordinates
    (rays as columns) to row Hermite form.  Two spanning fans related by an
    integer change of coordinates canonicalize to the same Fan, with ray
    order preserved.
    """
    if not fan.rays:
        return fan
    coord_rows = [tuple(r[k] for r in fan.rays) for k in range(fan.ambient_dim)]
    h = list(hermite_normal_form(coord_rows))
    n = len(fan.rays)
    while len(h) < fan.ambient_dim:
        h.append(tuple([0] * n))
    new_rays = [tuple(h[k][i] for k in range(fan.ambient_dim)) for i in range(n)]
    return make_fan(new_rays, fan.max_cones, fan.ambient_dim)


@dataclass(frozen=True)
class WeightSystem:
    """Torus weights of the coordinates: one integer column per variable.

    rho is the rank of the acting torus character lattice, r the number of
    coordinates.  Finite grading factors are recorded in torsion but do not
    enter the chamber geometry.
    """

    rho: int
    r: int
    columns: tuple[IntVec, ...]
    torsion: tuple[int, ...]


def weight_system(columns, torsion=()) -> WeightSystem:
    columns = tuple(tuple(int(x) for x in c) for c in columns)
    if not columns:
        raise DimensionMismatchError("a weight system needs at least one column")
    rho = len(columns[0])
    if rho < 1:
        raise DimensionMismatchError("weight columns must have positive length")
    for c in columns:
        if len(c) != rho:
            raise DimensionMismatchError("weight columns of unequal length")
    torsion = tuple(int(t) for t in torsion)
    if any(t < 2 for t in torsion):
        raise DimensionMismatchError("torsion factors must be at least 2")
    return WeightSystem(rho, len(columns), columns, torsion)


def cox_weights(fan: Fan) -> WeightSystem:
    """Weights of the coordinates of the total coordinate ring of a fan.

    The class group is the cokernel of the map sending a linear functional
    to its values on the rays; its free part gives the columns, its finite
    invariant factors the torsion.
    """
    n = len(fan.rays)
    d = fan.ambient_dim
    if n == 0:
        raise InvalidFanError("cannot grade a fan with no rays")
    rows = [tuple(r) for r in fan.rays]  # n x d, acting on functionals
    snf = smith_normal_form(rows)
    k = sum(1 for i in range(min(n, d)) if snf.d[i][i] != 0)
    rho = n - k
    if rho == 0:
        raise InvalidFanError(
            "the rays form a basis: the grading torus is trivial and there is no chamber geometry"
        )
    columns = tuple(tuple(snf.u[j][i] for j in range(k, n)) for i in range(n))
    torsion = tuple(snf.d[i][i] for i in range(k) if snf.d[i][i] > 1)
    return weight_system(columns, torsion)


def gale_dual(ws: WeightSystem) -> tuple[IntVec, ...]:
    """One Gale vector per weight column: columns of the kernel basis of the weight matrix."""
    w_rows = [tuple(c[j] for c in ws.columns) for j in range(ws.rho)]
    basis = kernel_basis(w_rows, ws.r)
    return tuple(tuple(b[i] for b in basis) for i in range(ws.r))


def wall_hyperplanes(ws: WeightSystem) -> tuple[IntVec, ...]:
    """Candidate wall normals: primitive normals of hyperplanes spanned by columns.

    Every hyperplane spanned by weight columns contains rho-1 independent
    columns, so enumerating those subsets finds all candidates.  Normals
    are sign-normalized (first nonzero entry positive) and deduplicated.
    """
    normals = set()
    for subset in combinations(range(ws.r), ws.rho - 1):
        rows = [ws.columns[j] for j in subset]
        ker = kernel_basis(rows, ws.rho)
        if len(ker) != 1:
            continue
        h = ker[0]
        first = next(x for x in h if x != 0)
        if first < 0:
            h = tuple(-x for x in h)
        normals.add(h)
    return tuple(sorted(normals))


def g_ample_cone(ws: WeightSystem) -> Cone:
    """Cone of characters admitting semistable points: pos of all weight columns."""
    return cone_from_generators(ws.columns, ambient_dim=ws.rho)


def _check_chi(ws: WeightSystem, chi) -> IntVec:
    chi = tuple(int(x) for x in chi)
    if len(chi) != ws.rho:
        raise DimensionMismatchError(
            f"character of length {len(chi)} for a rank-{ws.rho} grading"
        )
    return chi


def _require_chamber_interior(ws: WeightSystem, chi: IntVec) -> None:
    loc = g_ample_cone(ws).contains(chi)
    if loc == "outside":
        raise EmptySemistableLocusError(
            f"character {chi} lies outside the semistable cone; no semistable points"
        )
    if loc == "boundary":
        raise DegenerateLinearizationError(
            f"character {chi} lies on the boundary of the semistable cone"
        )
    for h in wall_hyperplanes(ws):
        if dot(h, chi) == 0:
            raise DegenerateLinearizationError(
                f"character {chi} lies on the wall with normal {h}"
            )


@dataclass(frozen=True)
class QuotientData:
    """Quotient fan of a chamber together with the column bookkeeping."""

    fan: Fan
    used_columns: tuple[int, ...]
    dropped_columns: tuple[int, ...]


def quotient_fan_data(ws: WeightSystem, chi, validate: bool = True) -> QuotientData:
    """Quotient fan for a character in the interior of a chamber.

    Maximal cones are the complements, on Gale vectors, of the column
    subsets whose simplicial cone contains chi in its interior.  Columns
    appearing in no maximal cone correspond to divisors contracted by the
    linearization and are dropped (with their indices reported).
    """
    chi = _check_chi(ws, chi)
    _require_chamber_interior(ws, chi)
    gale = gale_dual(ws)
    interior_subsets = []
    for subset in combinations(range(ws.r), ws.rho):
        rows = [tuple(ws.columns[j][t] for j in subset) for t in range(ws.rho)]
        if det(rows) == 0:
            continue
        coeffs = solve_rational(rows, chi)
        if coeffs is not None and all(a > 0 for a in coeffs):
            interior_subsets.append(subset)
    if not interior_subsets:
        raise InvariantViolationError(
            f"chamber-interior character {chi} lies in no simplicial column cone"
        )
    complements = [
        tuple(i for i in range(ws.r) if i not in s) for s in interior_subsets
    ]
    used = sorted(set().union(*[set(c) for c in complements]))
    position = {col: idx for idx, col in enumerate(used)}
    fan = make_fan(
        [gale[i] for i in used],
        [tuple(position[i] for i in c) for c in complements],
        ambient_dim=ws.r - ws.rho,
    )
    if validate:
        report = validate_fan(fan)
        if not report.ok:
            raise InvariantViolationError(
                "quotient fan failed validation: " + "; ".join(report.issues)
            )
    dropped = tuple(i for i in range(ws.r) if i not in position)
    return QuotientData(fan, tuple(used), dropped)


def quotient_fan(ws: WeightSystem, chi, validate: bool = True) -> Fan:
    return quotient_fan_data(ws, chi, validate=validate).fan


@dataclass(frozen=True)
class UnstableReport:
    """Maximal unstable coordinate supports and the codimension of the unstable locus.

    Each stratum is the set of coordinates allowed to be nonzero; the
    corresponding unstable subspace has codimension r - len(stratum).
    """

    strata: tuple[tuple[int, ...], ...]
    min_codim: int | None


def unstable_locus(ws: WeightSystem, chi) -> UnstableReport:
    """Classify unstable coordinate supports for a character.

    A point is unstable exactly when chi is outside the cone spanned by the
    weights of its nonzero coordinates.  Supports are monotone, so the
    report lists the maximal unstable supports.
    """
    chi = _check_chi(ws, chi)
    r = ws.r
    stable_cache: dict[int, bool] = {}

    def stable(mask: int) -> bool:
        hit = stable_cache.get(mask)
        if hit is not None:
            return hit
        cols = [ws.columns[i] for i in range(r) if mask >> i & 1]
        cone = cone_from_generators(cols, ambient_dim=ws.rho)
        res = cone.contains(chi) != "outside"
        stable_cache[mask] = res
        return res

    maximal = []
    for mask in range(1 << r):
        if stable(mask):
            continue
        if all(stable(mask | (1 << j)) for j in range(r) if not mask >> j & 1):
            maximal.append(mask)
    strata = tuple(
        sorted(tuple(i for i in range(r) if mask >> i & 1) for mask in maximal)
    )
    if not strata:
        return UnstableReport((), None)
    return UnstableReport(strata, min(r - len(s) for s in strata))
