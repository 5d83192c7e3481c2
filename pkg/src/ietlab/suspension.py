"""Suspension-surface combinatorics: singularity data and strip decompositions.

The first half computes the boundary permutation sigma_0 on {0..n}, its
cycles, singularity multiplicities, prong counts, genus, and the fake-saddle
and closed-transversal conditions, all exactly from the permutation.

The second half builds the vertical strip decomposition of the suspension
square.  Orbit points of 0 up to a depth K select, in every interval, an
extreme left and right marker; the markers bound n strips that flow forward
under T, floor by floor, until they run into the marked span of some
separation point.  Raising K refines the decomposition, and consecutive
levels are connected by an incidence matrix that is the identity plus one
off-diagonal unit: exactly one strip splits, and one of the two pieces joins
an existing strip.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ClosedTransversalRequired,
    ConsistencyViolation,
    DepthExceeded,
    NotVerifiedIDOC,
    Reducible,
    ShapeViolation,
)
from .exactnum import QuadReal, quad
from .iet import Iet, Permutation, idoc_check, irreducible
from .induction import DEFAULT_MAX_STEPS
from .intmat import IntMatrix, freeze


@dataclass(frozen=True)
class Singularity:
    """One cycle of sigma_0 with its translation-surface data.

    ``adjusted_length`` counts the cycle members after omitting the
    endpoints 0 and n; the zero of the holomorphic form has multiplicity
    ``adjusted_length - 1`` and the singular leaf has ``2k + 2`` prongs.
    A multiplicity of 0 marks a regular (merely marked) point.
    """

    cycle: tuple[int, ...]
    adjusted_length: int
    multiplicity: int
    prongs: int


@dataclass(frozen=True)
class SingularityProfile:
    """Combinatorial singularity data of the suspension of a permutation.

    Fields past ``N`` are filled by ``singularity_profile`` and keep their
    neutral defaults when only ``sigma0`` ran.  ``genus`` stays None when
    the multiplicities do not sum to an even number.
    """

    sigma0: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    N: int
    singularities: tuple[Singularity, ...] = ()
    dropped_cycles: tuple[tuple[int, ...], ...] = ()
    genus: int | None = None
    closed_transversal: bool | None = None
    fake_saddles: tuple[int, ...] = ()
    endpoints_share_cycle: bool | None = None


def _sigma0_images(sigma: Permutation) -> tuple[int, ...]:
    n = sigma.n
    inv = sigma.inverse()
    images = [inv(1) - 1] + [0] * n
    for j in range(1, n + 1):
        images[j] = n if j == inv(n) else inv(sigma(j) + 1) - 1
    return tuple(images)


def _cycles_of(images: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    seen = [False] * len(images)
    cycles = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        j = images[start]
        while j != start:
            cycle.append(j)
            seen[j] = True
            j = images[j]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def sigma0(sigma: Permutation) -> SingularityProfile:
    """Evaluate the boundary permutation on {0..n} and its cycle structure."""
    if not irreducible(sigma):
        raise Reducible(f"sigma {sigma.images} is reducible")
    images = _sigma0_images(sigma)
    cycles = _cycles_of(images)
    return SingularityProfile(sigma0=images, cycles=cycles, N=len(cycles))


def singularity_profile(sigma: Permutation) -> SingularityProfile:
    """Full singularity data: multiplicities, prongs, genus, and the flags."""
    base = sigma0(sigma)
    n = sigma.n
    singularities = []
    dropped = []
    for cycle in base.cycles:
        kept = [j for j in cycle if j not in (0, n)]
        if not kept:
            dropped.append(cycle)
            continue
        k = len(kept) - 1
        singularities.append(
            Singularity(cycle=cycle, adjusted_length=len(kept), multiplicity=k, prongs=2 * k + 2)
        )
    total_k = sum(s.multiplicity for s in singularities)
    genus = (total_k + 2) // 2 if total_k % 2 == 0 else None
    shared = any(0 in cycle and n in cycle for cycle in base.cycles)
    return SingularityProfile(
        sigma0=base.sigma0,
        cycles=base.cycles,
        N=base.N,
        singularities=tuple(singularities),
        dropped_cycles=tuple(dropped),
        genus=genus,
        closed_transversal=sigma(n) == sigma(1) - 1,
        fake_saddles=tuple(j for j in range(1, n) if sigma(j + 1) == sigma(j) + 1),
        endpoints_share_cycle=shared,
    )


@dataclass(frozen=True)
class Marker:
    """Extreme orbit point of 0 within one interval.

    ``delta`` 0 marks the supremum of the orbit points in interval ``i``,
    ``delta`` 1 the infimum of those in interval ``i + 1``; primed markers
    use the image intervals and the exponent window shifted by one.
    """

    delta: int
    i: int
    exponent: int
    value: QuadReal
    primed: bool


@dataclass(frozen=True)
class Floor:
    """One horizontal slice [left, right) of a strip.

    Endpoint exponents refer to the orbit of 0; a right exponent of 0
    denotes the total length (the right edge of the square), which flows
    like the left edge does because the transversal is closed.  ``interval``
    is the interval containing the floor, or None when the floor straddles
    a separation point (possible only for the top floor).
    """

    left: QuadReal
    right: QuadReal
    left_exponent: int
    right_exponent: int
    interval: int | None


@dataclass(frozen=True)
class Strip:
    """Maximal vertical stack of floors; consecutive floors are T-images.

    Left boundaries are approached from the right (the + side of the split
    orbit of 0), right boundaries from the left (the - side).  The visit
    word lists the interval of every floor below the top.
    """

    index: int
    floors: tuple[Floor, ...]
    visit_word: tuple[int, ...]

    @property
    def height(self) -> int:
        return len(self.floors)

    @property
    def bottom(self) -> Floor:
        return self.floors[0]

    @property
    def top(self) -> Floor:
        return self.floors[-1]


@dataclass(frozen=True)
class StripLevel:
    """One level of the strip decomposition.

    ``raw_K`` is the orbit depth before the boundary-interval adjustment,
    ``K`` the depth actually used.  ``incidence_to_previous`` is None at the
    first level and an identity-plus-one-unit matrix afterwards, with rows
    indexed by this level's strips and columns by the previous level's.
    """

    level: int
    raw_K: int
    K: int
    markers: tuple[Marker, ...]
    primed_markers: tuple[Marker, ...]
    strips: tuple[Strip, ...]
    incidence_to_previous: IntMatrix | None


class _OrbitCache:
    """Forward orbit of 0 with separation-point and injectivity guards."""

    def __init__(self, T: Iet, max_steps: int) -> None:
        self.T = T
        self.max_steps = max_steps
        self.values: list[QuadReal] = [quad(0)]
        self.seen = {quad(0)}
        self.separation = set(T.beta[1:-1])

    def value(self, k: int) -> QuadReal:
        while len(self.values) <= k:
            if len(self.values) > self.max_steps:
                raise DepthExceeded(f"orbit of 0 longer than {self.max_steps} steps")
            x = self.T.apply(self.values[-1])
            if x in self.separation:
                raise NotVerifiedIDOC(
                    f"orbit of 0 hits a separation point at exponent {len(self.values)}"
                )
            if x in self.seen:
                raise NotVerifiedIDOC(f"orbit of 0 repeats at exponent {len(self.values)}")
            self.seen.add(x)
            self.values.append(x)
        return self.values[k]


def _markers_for(T: Iet, cache: _OrbitCache, K: int) -> tuple[list[Marker], list[Marker]]:
    n = T.n
    plain: dict[int, list[tuple[int, QuadReal]]] = {i: [] for i in range(1, n + 1)}
    primed: dict[int, list[tuple[int, QuadReal]]] = {i: [] for i in range(1, n + 1)}
    for k in range(1, K + 1):
        x = cache.value(k)
        plain[T.interval_index(x)].append((k, x))
    for k in range(2, K + 2):
        x = cache.value(k)
        primed[T.image_interval_index(x)].append((k, x))
    markers: list[Marker] = []
    primed_markers: list[Marker] = []
    for source, out, is_primed in ((plain, markers, False), (primed, primed_markers, True)):
        for i in range(1, n + 1):
            if not source[i]:
                raise ConsistencyViolation(f"no orbit point in interval {i} at depth {K}")
        for i in range(1, n + 1):
            k, x = max(source[i], key=lambda kx: kx[1])
            out.append(Marker(0, i, k, x, is_primed))
        for i in range(n):
            k, x = min(source[i + 1], key=lambda kx: kx[1])
            out.append(Marker(1, i, k, x, is_primed))
        out.sort(key=lambda m: (m.i, m.delta))
    return markers, primed_markers


def _marker_map(markers: list[Marker]) -> dict[tuple[int, int], Marker]:
    return {(m.delta, m.i): m for m in markers}


def _flow_strip(
    T: Iet,
    cache: _OrbitCache,
    bottom: Floor,
    spans: list[tuple[int, QuadReal, QuadReal]],
    max_steps: int,
) -> tuple[list[Floor], list[int]]:
    """Flow a bottom floor forward until it lands inside a marked span."""
    floors = [bottom]
    word: list[int] = []
    for _ in range(max_steps):
        current = floors[-1]
        if any(lo <= current.left and current.right <= hi for _, lo, hi in spans):
            return floors, word
        i = T.interval_index(current.left)
        if not current.right <= T.beta[i]:
            raise ConsistencyViolation(
                f"floor [{current.left}, {current.right}) crosses beta({i})"
            )
        shift = T.tau[i - 1]
        left = current.left + shift
        right = current.right + shift
        if not (left == cache.value(current.left_exponent + 1)
                and right == cache.value(current.right_exponent + 1)):
            raise ConsistencyViolation("floor endpoints left the orbit of 0")
        word.append(i)
        floors.append(Floor(left, right, current.left_exponent + 1,
                            current.right_exponent + 1, _containing_interval(T, left, right)))
    raise DepthExceeded(f"strip did not close within {max_steps} floors")


def _containing_interval(T: Iet, left: QuadReal, right: QuadReal) -> int | None:
    i = T.interval_index(left)
    return i if right <= T.beta[i] else None


def _level_strips(
    T: Iet,
    cache: _OrbitCache,
    markers: list[Marker],
    primed_markers: list[Marker],
    max_steps: int,
) -> list[Strip]:
    n = T.n
    plain = _marker_map(markers)
    prime = _marker_map(primed_markers)
    spans = [(j, plain[(0, j)].value, plain[(1, j)].value) for j in range(1, n)]
    j0 = T.sigma(1) - 1
    bottoms = [
        Floor(quad(0), plain[(1, 0)].value, 0, plain[(1, 0)].exponent,
              _containing_interval(T, quad(0), plain[(1, 0)].value)),
        Floor(plain[(0, n)].value, T.total, plain[(0, n)].exponent, 0,
              _containing_interval(T, plain[(0, n)].value, T.total)),
    ]
    for j in range(1, n):
        if j == j0:
            continue
        left, right = prime[(0, j)], prime[(1, j)]
        bottoms.append(Floor(left.value, right.value, left.exponent, right.exponent,
                             _containing_interval(T, left.value, right.value)))
    if len(bottoms) != n:
        raise ConsistencyViolation(f"expected {n} strip bottoms, found {len(bottoms)}")
    bottoms.sort(key=lambda f: f.left)
    strips = []
    for index, bottom in enumerate(bottoms, start=1):
        floors, word = _flow_strip(T, cache, bottom, spans, max_steps)
        strips.append(Strip(index=index, floors=tuple(floors), visit_word=tuple(word)))
    _check_tiling(T, strips)
    return strips


def _check_tiling(T: Iet, strips: list[Strip]) -> None:
    floors = sorted((f for s in strips for f in s.floors), key=lambda f: f.left)
    edge = quad(0)
    for floor in floors:
        if floor.left != edge:
            raise ConsistencyViolation("strip floors do not tile the interval")
        edge = floor.right
    if edge != T.total:
        raise ConsistencyViolation("strip floors do not reach the right edge")


def _check_marker_images(T: Iet, markers: list[Marker], primed_markers: list[Marker]) -> None:
    images = {T.apply(m.value) for m in markers}
    primed_values = {m.value for m in primed_markers}
    if images != primed_values:
        raise ConsistencyViolation("primed markers are not the T-images of the markers")


def _minimal_two_point_depth(T: Iet, cache: _OrbitCache, max_steps: int) -> int:
    counts = [0] * T.n
    k = 0
    while min(counts) < 2:
        k += 1
        if k > max_steps:
            raise DepthExceeded(f"no depth below {max_steps} covers every interval twice")
        counts[T.interval_index(cache.value(k)) - 1] += 1
    return k


def _boundary_adjust(T: Iet, cache: _OrbitCache, k: int) -> int:
    """Bump the first-level depth once when T^k(0) lands in a boundary interval."""
    i = T.interval_index(cache.value(k))
    return k + 1 if T.sigma(i) in (1, T.n) else k


def _next_depth(
    T: Iet,
    cache: _OrbitCache,
    markers: list[Marker],
    primed_markers: list[Marker],
    max_steps: int,
) -> tuple[int, int]:
    """Climb the orbit past the deepest primed span marker to the next landing."""
    n = T.n
    plain = _marker_map(markers)
    prime = _marker_map(primed_markers)
    start = max(prime[(d, i)].exponent for d in (0, 1) for i in range(1, n))
    left_col = plain[(1, 0)].value
    right_col = plain[(0, n)].value
    for m in range(start + 1, max_steps):
        z = cache.value(m)
        for j in range(1, n):
            if plain[(0, j)].value < z < plain[(1, j)].value:
                return m, _span_adjust(T, z, j, m)
        if (quad(0) < z < left_col) or (right_col < z < T.total):
            return m, m
    raise DepthExceeded(f"no landing below {max_steps} orbit steps")


def _span_adjust(T: Iet, z: QuadReal, j: int, m: int) -> int:
    if z < T.beta[j] and T.sigma(j) == T.n:
        return m + 1
    if T.beta[j] < z and T.sigma(j + 1) == 1:
        return m + 1
    return m


def _incidence(previous: list[Strip], current: list[Strip]) -> IntMatrix:
    """Count current floors per previous floor and align by index inheritance."""
    n = len(previous)
    old_floors = sorted(
        ((f, s.index) for s in previous for f in s.floors), key=lambda fs: fs[0].left
    )
    lefts = [f.left for f, _ in old_floors]
    per_floor: dict[int, dict[int, int]] = {s.index: {} for s in current}
    for strip in current:
        for floor in strip.floors:
            slot = _locate(lefts, floor.left)
            parent, parent_strip = old_floors[slot]
            if not (parent.left <= floor.left and floor.right <= parent.right):
                raise ConsistencyViolation("new floor is not inside a single old floor")
            counts = per_floor[strip.index]
            counts[slot] = counts.get(slot, 0) + 1
    raw = [[0] * n for _ in range(n)]
    for strip in current:
        by_old_strip: dict[int, set[int]] = {}
        touched: dict[int, int] = {}
        for slot, count in per_floor[strip.index].items():
            old_strip = old_floors[slot][1]
            by_old_strip.setdefault(old_strip, set()).add(count)
            touched[old_strip] = touched.get(old_strip, 0) + 1
        for old_strip, counts in by_old_strip.items():
            if len(counts) != 1:
                raise ShapeViolation("uneven refinement counts within one old strip")
            height = next(s.height for s in previous if s.index == old_strip)
            if touched[old_strip] != height:
                raise ShapeViolation("new strip misses floors of an old strip it meets")
            raw[strip.index - 1][old_strip - 1] = counts.pop()
    return freeze(raw)


def _locate(sorted_lefts: list[QuadReal], x: QuadReal) -> int:
    lo, hi = 0, len(sorted_lefts) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if sorted_lefts[mid] <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _inherit_indices(raw: IntMatrix, current: list[Strip]) -> tuple[list[Strip], IntMatrix]:
    """Relabel current strips so the incidence matrix is identity plus one unit."""
    n = len(raw)
    assignment: dict[int, int] = {}
    split_rows = []
    for row in range(n):
        overlaps = [col for col in range(n) if raw[row][col] > 0]
        if len(overlaps) == 1:
            assignment[row] = overlaps[0]
        elif len(overlaps) == 2:
            split_rows.append(row)
        else:
            raise ShapeViolation(f"strip meets {len(overlaps)} previous strips")
    if len(split_rows) != 1:
        raise ShapeViolation(f"{len(split_rows)} strips split, expected exactly one")
    taken = set(assignment.values())
    if len(taken) != n - 1:
        raise ShapeViolation("index inheritance is not one-to-one")
    assignment[split_rows[0]] = next(col for col in range(n) if col not in taken)
    aligned = [[0] * n for _ in range(n)]
    for row in range(n):
        aligned[assignment[row]] = list(raw[row])
    off_diagonal = 0
    for i in range(n):
        if aligned[i][i] != 1:
            raise ShapeViolation("aligned incidence matrix is not 1 on the diagonal")
        for j in range(n):
            if i != j and aligned[i][j]:
                off_diagonal += aligned[i][j]
    if off_diagonal != 1:
        raise ShapeViolation("aligned incidence matrix needs exactly one off-diagonal 1")
    relabeled = [
        Strip(index=assignment[strip.index - 1] + 1, floors=strip.floors,
              visit_word=strip.visit_word)
        for strip in current
    ]
    relabeled.sort(key=lambda s: s.index)
    return relabeled, freeze(aligned)


def strip_decomposition(T: Iet, levels: int, max_steps: int = DEFAULT_MAX_STEPS) -> tuple[StripLevel, ...]:
    """Build the first ``levels`` strip decompositions of the suspension square.

    Level 1 uses the smallest orbit depth that puts two points of the orbit
    of 0 in every interval; each later level follows the orbit past the
    deepest primed marker until it lands inside a marked span or one of the
    two boundary columns.  In both cases a landing next to a separation
    point whose interval maps to an end interval bumps the depth by one.
    """
    if levels < 1:
        raise ValueError("levels must be positive")
    if not irreducible(T.sigma):
        raise Reducible(f"sigma {T.sigma.images} is reducible")
    if T.sigma(T.n) != T.sigma(1) - 1:
        raise ClosedTransversalRequired(
            f"sigma {T.sigma.images} has no closed transversal through 0"
        )
    cache = _OrbitCache(T, max_steps)
    out: list[StripLevel] = []
    raw = K = 0
    markers: list[Marker] = []
    primed: list[Marker] = []
    for level in range(1, levels + 1):
        if level == 1:
            raw = _minimal_two_point_depth(T, cache, max_steps)
            K = _boundary_adjust(T, cache, raw)
        else:
            raw, K = _next_depth(T, cache, markers, primed, max_steps)
            if K <= out[-1].K:
                raise ConsistencyViolation("strip depth failed to increase")
        report = idoc_check(T, K + 1)
        if not report.verified:
            raise NotVerifiedIDOC(f"distinct-orbit check failed below depth {K + 1}: {report.reason}")
        markers, primed = _markers_for(T, cache, K)
        _check_marker_images(T, markers, primed)
        strips = _level_strips(T, cache, markers, primed, max_steps)
        incidence: IntMatrix | None = None
        if out:
            raw_matrix = _incidence(list(out[-1].strips), strips)
            strips, incidence = _inherit_indices(raw_matrix, strips)
        out.append(
            StripLevel(
                level=level,
                raw_K=raw,
                K=K,
                markers=tuple(markers),
                primed_markers=tuple(primed),
                strips=tuple(strips),
                incidence_to_previous=incidence,
            )
        )
    return tuple(out)


def strip_dimension_group_feed(levels: tuple[StripLevel, ...] | list[StripLevel]) -> tuple[IntMatrix, ...]:
    """Incidence matrices between consecutive strip levels, shape-checked."""
    matrices = []
    for level in levels[1:]:
        matrix = level.incidence_to_previous
        if matrix is None:
            raise ShapeViolation(f"level {level.level} carries no incidence matrix")
        n = len(matrix)
        off = sum(matrix[i][j] for i in range(n) for j in range(n) if i != j)
        if any(matrix[i][i] != 1 for i in range(n)) or off != 1:
            raise ShapeViolation("incidence matrix is not identity plus one unit")
        matrices.append(matrix)
    return tuple(matrices)
