"""Birational bookkeeping on top of the chamber decomposition.

Each chamber is the pullback of an ample cone; the chambers whose quotient
keeps every column tile the moving cone, walls between chambers are small
or divisorial modifications, and facets on the boundary of the semistable
cone are fibration directions.  Everything here is verified against
independent descriptions as it is computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import Cone, cone_from_generators, cone_from_inequalities, intersect, minkowski_sum
from .errors import DegenerateLinearizationError, InvariantViolationError
from .linalg import IntVec, dot
from .toric import Fan, WeightSystem, canonicalize_fan, g_ample_cone, is_complete
from .vgit import Chamber, ChamberComplex, Wall, chamber_of


def effective_cone(ws: WeightSystem) -> Cone:
    """Cone of effective divisor classes: pos of all weight columns.

    Coincides with the cone of characters admitting semistable points.
    """
    return g_ample_cone(ws)


def picard_number(fan: Fan) -> int | None:
    """rays - dim for a complete fan; None when the fan is not complete."""
    if not is_complete(fan):
        return None
    return len(fan.rays) - fan.ambient_dim


@dataclass(frozen=True)
class MovingConeResult:
    """The moving cone and the chambers tiling it."""

    cone: Cone
    chamber_ids: tuple[int, ...]


def moving_cone(complex_: ChamberComplex) -> MovingConeResult:
    """Moving cone: intersection over i of pos(columns without column i).

    Cross-checked two ways: it must equal the hull of the chambers whose
    quotient keeps every column, and a chamber representative must be
    interior to it exactly when its chamber keeps every column.
    """
    if complex_._moving is not None:
        return complex_._moving
    ws = complex_.weights
    oracle = None
    for i in range(ws.r):
        piece = cone_from_generators(
            [c for j, c in enumerate(ws.columns) if j != i], ambient_dim=ws.rho
        )
        oracle = piece if oracle is None else intersect(oracle, piece)
    all_columns = tuple(range(ws.r))
    ids = tuple(
        ch.id for ch in complex_.chambers
        if complex_.quotient(ch.id).used_columns == all_columns
    )
    if ids:
        gens: list[IntVec] = []
        lins: list[IntVec] = []
        for i in ids:
            gens.extend(complex_.chambers[i].cone.generators)
            lins.extend(complex_.chambers[i].cone.lineality)
        hull = cone_from_generators(gens, lins, ambient_dim=ws.rho)
        if hull != oracle:
            raise InvariantViolationError(
                "union of column-preserving chambers does not match the moving cone"
            )
    elif oracle.is_full_dim:
        raise InvariantViolationError(
            "full-dimensional moving cone contains no column-preserving chamber"
        )
    id_set = set(ids)
    for ch in complex_.chambers:
        loc = oracle.contains(ch.representative)
        if loc == "boundary":
            raise InvariantViolationError(
                f"representative of chamber {ch.id} lies on the moving cone boundary"
            )
        if (loc == "interior") != (ch.id in id_set):
            raise InvariantViolationError(
                f"chamber {ch.id}: moving-cone membership disagrees with column usage"
            )
    result = MovingConeResult(oracle, ids)
    complex_._moving = result
    return result


def nef_chamber(complex_: ChamberComplex, fan: Fan) -> Chamber:
    """The chamber whose quotient is the given fan.

    Computed directly as the intersection, over maximal cones, of the cones
    spanned by the complementary weight columns; cross-checked by comparing
    the chamber's quotient fan with the input fan in canonical coordinates.
    """
    ws = complex_.weights
    if len(fan.rays) != ws.r:
        raise DegenerateLinearizationError(
            f"fan has {len(fan.rays)} rays but the grading has {ws.r} columns"
        )
    nef = None
    for sigma in fan.max_cones:
        piece = cone_from_generators(
            [c for j, c in enumerate(ws.columns) if j not in sigma],
            ambient_dim=ws.rho,
        )
        nef = piece if nef is None else intersect(nef, piece)
    match = next((ch for ch in complex_.chambers if ch.cone == nef), None)
    if match is None:
        raise DegenerateLinearizationError(
            "the fan's ample classes do not form a full-dimensional chamber"
        )
    qd = complex_.quotient(match.id)
    if qd.used_columns != tuple(range(ws.r)):
        raise InvariantViolationError("nef chamber quotient dropped a column")
    if canonicalize_fan(qd.fan) != canonicalize_fan(fan):
        raise InvariantViolationError(
            "nef chamber quotient does not reproduce the input fan"
        )
    return match


def enumerate_sqms(complex_: ChamberComplex, chamber_id: int) -> tuple[int, ...]:
    """Chambers whose quotient uses the same columns (small modifications of each other)."""
    used = complex_.quotient(chamber_id).used_columns
    return tuple(
        ch.id for ch in complex_.chambers
        if complex_.quotient(ch.id).used_columns == used
    )


@dataclass(frozen=True)
class MoriChamberData:
    """Per-chamber birational data, with the decomposition identity verified.

    The chamber cone always equals pulled_back_nef + pos(columns of the
    dropped divisors); this Minkowski identity is asserted on construction.
    """

    chamber: Chamber
    quotient: Fan
    used_columns: tuple[int, ...]
    dropped_columns: tuple[int, ...]
    picard_number: int | None
    pulled_back_nef: Cone
    in_moving_cone: bool


def mori_chamber_data(complex_: ChamberComplex, chamber_id: int) -> MoriChamberData:
    ws = complex_.weights
    ch = complex_.chambers[chamber_id]
    qd = complex_.quotient(chamber_id)
    mov = moving_cone(complex_)
    pulled = intersect(ch.cone, mov.cone)
    exceptional = cone_from_generators(
        [ws.columns[i] for i in qd.dropped_columns], ambient_dim=ws.rho
    )
    if minkowski_sum(pulled, exceptional) != ch.cone:
        raise InvariantViolationError(
            f"chamber {chamber_id} is not pulled-back nef plus its dropped columns"
        )
    return MoriChamberData(
        chamber=ch,
        quotient=qd.fan,
        used_columns=qd.used_columns,
        dropped_columns=qd.dropped_columns,
        picard_number=picard_number(qd.fan),
        pulled_back_nef=pulled,
        in_moving_cone=chamber_id in mov.chamber_ids,
    )


@dataclass(frozen=True)
class WallCrossing:
    """A wall crossing oriented from rays_before to rays_after.

    kind is "small" when both sides keep the same columns and "divisorial"
    when exactly one column appears or disappears.  picard_delta is the
    change in the number of quotient rays along the crossing.
    """

    wall: Wall
    kind: str
    rays_before: tuple[int, ...]
    rays_after: tuple[int, ...]
    picard_delta: int
    contracted_columns: tuple[int, ...]


def classify_wall(complex_: ChamberComplex, wall: Wall) -> WallCrossing:
    """Classify a wall, oriented left to right."""
    before = complex_.quotient(wall.left).used_columns
    after = complex_.quotient(wall.right).used_columns
    sym = sorted(set(before) ^ set(after))
    if not sym:
        kind = "small"
    elif len(sym) == 1:
        kind = "divisorial"
    else:
        raise InvariantViolationError(
            f"wall between {wall.left} and {wall.right} changes {len(sym)} columns"
        )
    return WallCrossing(
        wall=wall,
        kind=kind,
        rays_before=before,
        rays_after=after,
        picard_delta=len(after) - len(before),
        contracted_columns=tuple(sym),
    )


def _reverse_crossing(c: WallCrossing) -> WallCrossing:
    return WallCrossing(
        wall=c.wall,
        kind=c.kind,
        rays_before=c.rays_after,
        rays_after=c.rays_before,
        picard_delta=-c.picard_delta,
        contracted_columns=c.contracted_columns,
    )


@dataclass(frozen=True)
class BoundaryContraction:
    """A fibration direction on the boundary of the semistable cone.

    quotient_dim is the dimension of the quotient for a character in the
    relative interior of the facet; fiber_dim is how much smaller it is
    than the chamber quotients.
    """

    boundary_facet_index: int
    chamber: int
    character: IntVec
    quotient_dim: int
    fiber_dim: int


def classify_boundary_facet(complex_: ChamberComplex, index: int) -> BoundaryContraction:
    """Dimension bookkeeping for a boundary facet of the semistable cone.

    The quotient dimension at a character chi is one less than the
    dimension of the cone {(a, t) : a >= 0, t >= 0, sum a_i column_i = t chi}.
    """
    ws = complex_.weights
    bf = complex_.boundary_facets[index]
    chi = bf.facet.relative_interior_point()
    r = ws.r
    equations = [
        tuple([ws.columns[i][j] for i in range(r)] + [-chi[j]])
        for j in range(ws.rho)
    ]
    orthant = [tuple(int(i == j) for j in range(r + 1)) for i in range(r + 1)]
    lifted = cone_from_inequalities(orthant, equations, ambient_dim=r + 1)
    quotient_dim = lifted.dim - 1
    full_dim = ws.r - ws.rho
    return BoundaryContraction(
        boundary_facet_index=index,
        chamber=bf.chamber,
        character=chi,
        quotient_dim=quotient_dim,
        fiber_dim=full_dim - quotient_dim,
    )


@dataclass(frozen=True)
class Factorization:
    """A straight-line factorization of a birational transformation.

    chambers lists the visited chamber ids from source to target; crossings
    has one oriented wall crossing per consecutive pair, at the segment
    parameter recorded in crossing_times.
    """

    chambers: tuple[int, ...]
    crossings: tuple[WallCrossing, ...]
    crossing_times: tuple[Fraction, ...]


def _interior_chamber(complex_: ChamberComplex, chi, label: str) -> int:
    loc = chamber_of(complex_, chi)
    if loc.kind != "interior":
        raise DegenerateLinearizationError(
            f"{label} character {tuple(chi)} is not in a chamber interior (location: {loc.kind})"
        )
    return loc.chamber


def factor_contraction(complex_: ChamberComplex, chi_from, chi_to) -> Factorization:
    """Factor the birational map between two chambers into wall crossings.

    Walks the straight segment between the two characters; if the segment
    meets two candidate walls at the same parameter, the target endpoint is
    perturbed along a moment curve (staying inside its chamber) until all
    crossing parameters are distinct.  crossing_times then refer to the
    perturbed segment, so they stay strictly increasing.
    """
    ws = complex_.weights
    start = _interior_chamber(complex_, chi_from, "source")
    end = _interior_chamber(complex_, chi_to, "target")
    if start == end:
        return Factorization((start,), (), ())
    p = tuple(int(x) for x in chi_from)
    q = tuple(int(x) for x in chi_to)
    hyps = complex_.hyperplanes
    weight = max(sum(abs(x) for x in h) for h in hyps)
    base = 2 * weight + 1
    denom = base
    for _ in range(64):
        if denom == base:
            qq = q  # first attempt: the unperturbed endpoint
        else:
            # moment-curve perturbation too small to change any strict sign
            qq = tuple(q[k] + Fraction(1, denom ** (k + 1)) for k in range(ws.rho))
        events = []
        for h in hyps:
            sp = dot(h, p)
            sq = dot(h, qq)
            if sp == 0 or sq == 0:
                raise InvariantViolationError("endpoint lies on a candidate wall")
            if (sp > 0) != (sq > 0):
                events.append((Fraction(sp, sp - sq), h))
        times = [t for t, _ in events]
        if len(set(times)) == len(times):
            break
        denom *= 2
    else:
        raise InvariantViolationError("could not separate wall crossings by perturbation")

    events.sort(key=lambda e: e[0])
    wall_by_pair = {frozenset((w.left, w.right)): (idx, w) for idx, w in enumerate(complex_.walls)}
    sign_to_chamber = {}
    for ch in complex_.chambers:
        sign_to_chamber[_sign_key(hyps, ch.representative)] = ch.id

    path = [start]
    crossings = []
    cut_times = [t for t, _ in events]
    midpoints = []
    for i in range(len(events)):
        lo = cut_times[i]
        hi = cut_times[i + 1] if i + 1 < len(events) else Fraction(1)
        midpoints.append((lo + hi) / 2)
    for tmid, (tcross, h) in zip(midpoints, events):
        point = tuple(pk + tmid * (qk - pk) for pk, qk in zip(p, qq))
        key = _sign_key(hyps, point)
        nxt = sign_to_chamber.get(key)
        if nxt is None:
            raise InvariantViolationError("segment midpoint not in any chamber")
        cur = path[-1]
        pair = frozenset((cur, nxt))
        if pair not in wall_by_pair:
            raise InvariantViolationError(
                f"consecutive chambers {cur} and {nxt} do not share a wall"
            )
        _, wall = wall_by_pair[pair]
        crossing = classify_wall(complex_, wall)
        if wall.left != cur:
            crossing = _reverse_crossing(crossing)
        crossings.append(crossing)
        path.append(nxt)
    if path[-1] != end:
        raise InvariantViolationError(
            f"segment walk ended in chamber {path[-1]}, expected {end}"
        )
    return Factorization(tuple(path), tuple(crossings), tuple(cut_times))


def _sign_key(hyperplanes, point) -> tuple[int, ...]:
    out = []
    for h in hyperplanes:
        s = dot(h, point)
        if s == 0:
            raise InvariantViolationError("point lies on a candidate wall")
        out.append(1 if s > 0 else -1)
    return tuple(out)
