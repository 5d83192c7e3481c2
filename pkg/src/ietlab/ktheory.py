"""Tower partitions, Bratteli diagrams, dimension groups, and the L^sigma matrix.

A nested chain of first-return maps organizes the interval into towers whose
refinement pattern is a Bratteli diagram; the transition matrices of the
chain are the connecting maps of an ordered dimension group.  The strip
decomposition of the suspension square yields a second presentation of the
same group, connected to the first by the unimodular matrix of strip classes
in interval coordinates.  Positivity of group elements is semidecided by
pushing representatives forward, and cross-checked against the dual cone of
invariant measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .errors import ConsistencyViolation, HorizonExceedsDepth, ReturnTimeExceeded
from .exactnum import QuadReal, quad
from .iet import Iet, Permutation
from .induction import DEFAULT_MAX_STEPS, AdmissibleInterval, InductionStep, induce
from .intmat import IntMatrix, column_sums, det, freeze, identity, inverse, mat_mul
from .measures import ConeApprox
from .suspension import StripLevel, strip_dimension_group_feed

PositivityVerdict = Literal["zero", "positive", "nonpositive_witness", "unknown"]
ConeVerdict = Literal["consistent_positive", "consistent_negative", "boundary"]

DEFAULT_CONE_EPSILON = Fraction(1, 10**9)


@dataclass(frozen=True)
class Tower:
    """One tower: the floors T(base), T^2(base), ..., T^height(base)."""

    index: int
    base_left: QuadReal
    base_right: QuadReal
    height: int
    floors: tuple[tuple[QuadReal, QuadReal], ...]


@dataclass(frozen=True)
class TowerPartition:
    """Partition of the interval into the first-return towers over a base window.

    Tower l sits over the l-th interval of the induced map; its top floors
    tile the window, its first floors tile the image of the window, and all
    floors together tile the whole interval.  ``algebra_dims`` lists the
    heights, the dimensions of the associated matrix-algebra summands.
    """

    Y: AdmissibleInterval
    towers: tuple[Tower, ...]
    algebra_dims: tuple[int, ...]


def towers(T: Iet, Y: AdmissibleInterval, max_steps: int = DEFAULT_MAX_STEPS) -> TowerPartition:
    """Build the first-return towers of T over the admissible window Y."""
    step = induce(T, Y, max_steps=max_steps)
    induced = step.induced
    result = []
    for l in range(1, induced.n + 1):
        base_left = Y.left + induced.beta[l - 1]
        base_right = Y.left + induced.beta[l]
        width = base_right - base_left
        height = step.return_times[l - 1]
        floors = []
        x = base_left
        for _ in range(height):
            i = T.interval_index(x)
            if not x + width <= T.beta[i]:
                raise ConsistencyViolation(f"tower block crosses beta({i})")
            x = T.apply(x)
            floors.append((x, x + width))
        result.append(Tower(l, base_left, base_right, height, tuple(floors)))
    _check_tower_partition(T, Y, result)
    return TowerPartition(Y=Y, towers=tuple(result), algebra_dims=tuple(t.height for t in result))


def _check_tower_partition(T: Iet, Y: AdmissibleInterval, result: list[Tower]) -> None:
    tops = sorted(t.floors[-1] for t in result)
    edge = Y.left
    for left, right in tops:
        if left != edge:
            raise ConsistencyViolation("tower tops do not tile the window")
        edge = right
    if edge != Y.right:
        raise ConsistencyViolation("tower tops do not reach the window edge")
    floors = sorted(f for t in result for f in t.floors)
    edge = quad(0)
    for left, right in floors:
        if left != edge:
            raise ConsistencyViolation("tower floors do not tile the interval")
        edge = right
    if edge != T.total:
        raise ConsistencyViolation("tower floors do not reach the right edge")
    kac = sum((t.base_right - t.base_left) * t.height for t in result)
    if kac != T.total:
        raise ConsistencyViolation("return times fail the Kac identity")


@dataclass(frozen=True)
class BratteliLevel:
    rank: int
    labels: tuple[str, ...]


@dataclass(frozen=True)
class BratteliDiagram:
    """Vertex levels of constant rank with integer edge-multiplicity matrices."""

    levels: tuple[BratteliLevel, ...]
    edges: tuple[IntMatrix, ...]


def bratteli(chain: Sequence[InductionStep], max_steps: int = DEFAULT_MAX_STEPS) -> BratteliDiagram:
    """Turn a nested induction chain into a Bratteli diagram.

    Every edge matrix is verified independently: each deep tower base is
    walked under the original map for one full return, counting how often
    the block passes through each tower of the previous level; the counts
    must reproduce the chain's transition matrix entry by entry.
    """
    if not chain:
        raise ValueError("bratteli needs a nonempty chain")
    T = chain[0].parent
    n = T.n
    for k, step in enumerate(chain):
        prev_origin = chain[k - 1].origin if k else quad(0)
        _verify_edge(T, step, prev_origin, max_steps)
    levels = tuple(
        BratteliLevel(rank=n, labels=tuple(f"L{k}_V{i}" for i in range(1, n + 1)))
        for k in range(len(chain) + 1)
    )
    return BratteliDiagram(levels=levels, edges=tuple(step.A for step in chain))


def _verify_edge(T: Iet, step: InductionStep, prev_origin: QuadReal, max_steps: int) -> None:
    prev = step.parent
    cur = step.induced
    cur_origin = step.origin
    for m in range(1, cur.n + 1):
        width = cur.alpha[m - 1]
        x = cur_origin + cur.beta[m - 1]
        counts = [0] * prev.n
        for t in range(max_steps):
            if t >= 1 and cur_origin <= x and x + width <= cur_origin + cur.total:
                break
            if prev_origin <= x and x + width <= prev_origin + prev.total:
                l = prev.interval_index(x - prev_origin)
                if not x - prev_origin + width <= prev.beta[l]:
                    raise ConsistencyViolation("walk block straddles a previous tower base")
                counts[l - 1] += 1
            elif x < prev_origin + prev.total and prev_origin < x + width:
                raise ConsistencyViolation("walk block straddles the previous window")
            i = T.interval_index(x)
            if not x + width <= T.beta[i]:
                raise ConsistencyViolation(f"walk block crosses beta({i})")
            x = T.apply(x)
        else:
            raise ReturnTimeExceeded(f"no return within {max_steps} steps")
        if counts != [step.A[l][m - 1] for l in range(prev.n)]:
            raise ConsistencyViolation(
                f"tower walk column {m} gives {counts}, matrix says"
                f" {[step.A[l][m - 1] for l in range(prev.n)]}"
            )


def export_bratteli(diagram: BratteliDiagram) -> str:
    """Deterministic DOT rendering with L<k>_V<i> node names."""
    lines = ["digraph bratteli {", "  rankdir=TB;"]
    for level in diagram.levels:
        for label in level.labels:
            lines.append(f"  {label};")
    for k, matrix in enumerate(diagram.edges):
        for l, row in enumerate(matrix, start=1):
            for m, entry in enumerate(row, start=1):
                if entry > 0:
                    lines.append(f'  L{k}_V{l} -> L{k + 1}_V{m} [label="{entry}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DimensionGroup:
    """Direct limit of (Z^n, positive cone) along the connecting matrices.

    ``matrices[j]`` connects level j to level j + 1.  For an induction
    source, level-j coordinates are taken in the tower-base generators and
    push forward through the transpose; for a strip source they are taken
    in the one-floor generators and push forward through the matrix itself.
    """

    n: int
    matrices: tuple[IntMatrix, ...]
    depth: int
    source: Literal["induction_chain", "strip_chain"]


@dataclass(frozen=True)
class GroupElement:
    """Representative ``vector`` at level ``level`` of a dimension group."""

    level: int
    vector: tuple[int, ...]


def dimension_group(
    chain: Sequence[InductionStep] | None = None,
    strips: Sequence[StripLevel] | None = None,
) -> DimensionGroup:
    """Wrap an induction chain or a strip decomposition as a dimension group."""
    if (chain is None) == (strips is None):
        raise ValueError("pass exactly one of chain and strips")
    if chain is not None:
        if not chain:
            raise ValueError("chain must be nonempty")
        matrices = tuple(step.A for step in chain[1:])
        n = chain[0].parent.n
        source: Literal["induction_chain", "strip_chain"] = "induction_chain"
    else:
        assert strips is not None
        if not strips:
            raise ValueError("strips must be nonempty")
        matrices = strip_dimension_group_feed(tuple(strips))
        n = len(strips[0].strips)
        source = "strip_chain"
    return DimensionGroup(n=n, matrices=matrices, depth=len(matrices), source=source)


def _push(G: DimensionGroup, level: int, vector: tuple[int, ...]) -> tuple[int, ...]:
    matrix = G.matrices[level]
    n = G.n
    if G.source == "induction_chain":
        return tuple(sum(matrix[l][m] * vector[l] for l in range(n)) for m in range(n))
    return tuple(sum(matrix[m][l] * vector[l] for l in range(n)) for m in range(n))


def positivity(G: DimensionGroup, x: GroupElement, horizon: int) -> PositivityVerdict:
    """Semidecide the order of a group element by pushing it forward.

    A forward image with all entries positive proves positivity; an image
    with all entries nonpositive and one negative witnesses the opposite.
    Both conditions persist under further pushes, so the first hit decides.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    if x.level < 0 or len(x.vector) != G.n:
        raise ValueError("element does not fit the group")
    if x.level + horizon > G.depth:
        raise HorizonExceedsDepth(
            f"level {x.level} plus horizon {horizon} exceeds depth {G.depth}"
        )
    if all(entry == 0 for entry in x.vector):
        return "zero"
    vector = x.vector
    for step in range(horizon + 1):
        if all(entry > 0 for entry in vector):
            return "positive"
        if all(entry <= 0 for entry in vector) and any(entry < 0 for entry in vector):
            return "nonpositive_witness"
        if step < horizon:
            vector = _push(G, x.level + step, vector)
    return "unknown"


def dual_cone_test(x: GroupElement, cone: ConeApprox,
                   epsilon: Fraction = DEFAULT_CONE_EPSILON) -> ConeVerdict:
    """Pair a group element with every approximate measure ray, exactly.

    The element is pushed to the cone's depth, where the pairing with the
    normalized ray j is the exact rational (Q^T v)_j / s_j with Q the
    remaining partial product and s_j the full product's column sum.
    """
    if x.level > len(cone.chain_matrices):
        raise HorizonExceedsDepth(
            f"element level {x.level} exceeds cone depth {len(cone.chain_matrices)}"
        )
    n = len(cone.product)
    partial = identity(n)
    for matrix in cone.chain_matrices[x.level:]:
        partial = mat_mul(partial, matrix)
    sums = column_sums(cone.product)
    values = [
        Fraction(sum(x.vector[l] * partial[l][j] for l in range(n)), sums[j])
        for j in range(n)
    ]
    if all(value > epsilon for value in values):
        return "consistent_positive"
    if all(value < -epsilon for value in values):
        return "consistent_negative"
    return "boundary"


@dataclass(frozen=True)
class LSigma:
    matrix: IntMatrix
    det: int
    invertible: bool


def l_sigma(sigma: Permutation) -> LSigma:
    """Evaluate the antisymmetric intersection matrix of a permutation."""
    n = sigma.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i > j and sigma(i) < sigma(j):
                row.append(1)
            elif i < j and sigma(i) > sigma(j):
                row.append(-1)
            else:
                row.append(0)
        rows.append(row)
    matrix = freeze(rows)
    determinant = det(matrix)
    return LSigma(matrix=matrix, det=determinant, invertible=determinant != 0)


def coinvariant_shift(sigma: Permutation, i: int) -> tuple[int, ...]:
    """Class of the translation step on interval i in interval coordinates.

    Applying the exchange to a point of interval i changes the class of the
    interval left of the point by this vector (the exact analogue of the
    translation length, with interval classes in place of lengths).
    """
    n = sigma.n
    return tuple(
        (1 if sigma(j) < sigma(i) else 0) - (1 if j < i else 0) for j in range(1, n + 1)
    )


def orbit_classes(T: Iet, depth: int) -> tuple[tuple[int, ...], ...]:
    """Classes of [0, T^k(0)) in interval coordinates, for k = 0..depth."""
    classes = [tuple([0] * T.n)]
    x = quad(0)
    for _ in range(depth):
        shift = coinvariant_shift(T.sigma, T.interval_index(x))
        classes.append(tuple(a + b for a, b in zip(classes[-1], shift)))
        x = T.apply(x)
    return tuple(classes)


def strip_class_matrix(T: Iet, level: StripLevel) -> IntMatrix:
    """Matrix whose column j is the class of one floor of strip j.

    The class of a floor is the difference of its endpoint classes; a right
    exponent of 0 denotes the right edge of the interval, whose class is the
    all-ones vector.  The class must not depend on the floor chosen, and the
    matrix must be unimodular: it is the basis change between the strip
    presentation and the interval presentation of the same group.
    """
    n = T.n
    deepest = max(
        max(f.left_exponent, f.right_exponent) for s in level.strips for f in s.floors
    )
    classes = orbit_classes(T, deepest)
    ones = tuple([1] * n)
    columns = []
    for strip in level.strips:
        per_floor = []
        for floor in strip.floors:
            left = classes[floor.left_exponent]
            right = classes[floor.right_exponent] if floor.right_exponent else ones
            per_floor.append(tuple(r - l for r, l in zip(right, left)))
        if len(set(per_floor)) != 1:
            raise ConsistencyViolation(f"strip {strip.index} floors disagree in class")
        columns.append(per_floor[0])
    matrix = freeze([[columns[j][i] for j in range(n)] for i in range(n)])
    if det(matrix) not in (1, -1):
        raise ConsistencyViolation("strip class matrix is not unimodular")
    return matrix


def strip_coordinates(class_matrix: IntMatrix, vector: Sequence[int]) -> tuple[int, ...]:
    """Rewrite an interval-coordinate vector in strip coordinates, exactly."""
    inv = inverse(class_matrix)
    out = []
    for row in inv:
        value = sum(entry * component for entry, component in zip(row, vector))
        if value.denominator != 1:
            raise ConsistencyViolation("strip coordinates came out fractional")
        out.append(int(value))
    return tuple(out)
