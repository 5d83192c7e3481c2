"""Admissible intervals, first-return maps, and shrinking interval chains."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .errors import (ConsistencyViolation, DegenerateAt, NotAdmissible,
                     OutOfDomain, ReturnTimeExceeded)
from .exactnum import QuadReal, quad
from .iet import Iet, OrbitPoint, Permutation, iet_new, orbit_point
from .intmat import IntMatrix, column_sums, det, freeze

DEFAULT_MAX_STEPS = 10 ** 6


@dataclass(frozen=True)
class AdmissibleInterval:
    """Half-open [a.value, b.value) with endpoints on separation-point orbits."""

    a: OrbitPoint
    b: OrbitPoint

    @property
    def left(self) -> QuadReal:
        return self.a.value

    @property
    def right(self) -> QuadReal:
        return self.b.value

    @property
    def length(self) -> QuadReal:
        return self.b.value - self.a.value


def whole_interval(T: Iet) -> AdmissibleInterval:
    """[0, beta(n)), admissible by convention."""
    return AdmissibleInterval(orbit_point(T, 0, 0), orbit_point(T, T.n, 0))


def basic_interval(T: Iet, i: int) -> AdmissibleInterval:
    """[beta(i), beta(i+1)) for 0 <= i <= n-1; admissible with zero exponents."""
    if not 0 <= i < T.n:
        raise OutOfDomain(f"no basic interval with index {i}")
    return AdmissibleInterval(orbit_point(T, i, 0), orbit_point(T, i + 1, 0))


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    m: Optional[int] = None
    witness: Optional[QuadReal] = None
    endpoint: str = ""


def is_admissible(T: Iet, a: OrbitPoint, b: OrbitPoint) -> AdmissibilityResult:
    """Check the per-endpoint visit conditions for J = [a.value, b.value).

    An endpoint generated as T^e(beta(i)) forbids orbit visits T^m(beta(i))
    into J at 0 < m < e when e >= 0, and at e < m <= 0 when e < 0.
    """
    if not a.value < b.value:
        raise OutOfDomain("interval endpoints out of order")
    if a.value < 0 or b.value > T.total:
        raise OutOfDomain("interval endpoints outside the domain")

    def inside(x: QuadReal) -> bool:
        return a.value <= x < b.value

    for tag, point in (("left", a), ("right", b)):
        e = point.power
        x = T.beta[point.base]
        if e >= 0:
            for m in range(1, e):
                x = T.apply(x)
                if inside(x):
                    return AdmissibilityResult(False, m, x, tag)
        else:
            for m in range(0, e, -1):
                if inside(x):
                    return AdmissibilityResult(False, m, x, tag)
                x = T.apply_inverse(x)
    return AdmissibilityResult(True)


@dataclass(frozen=True)
class InductionStep:
    """One induction: the first-return map of parent on J, with its matrix.

    origin is the absolute left endpoint of J in the coordinates of the
    chain's original system (0 for a step induced directly from it).
    """

    parent: Iet
    J: AdmissibleInterval
    induced: Iet
    A: IntMatrix
    return_times: tuple[int, ...]
    origin: QuadReal


def _division_points(T: Iet, a: QuadReal, b: QuadReal,
                     max_steps: int) -> list[QuadReal]:
    """For each beta(j), the first backward-orbit point strictly inside (a, b).

    Exact hits on a are skipped and the backward orbit continued, so the
    points always cut J into n nonempty blocks.
    """
    points = []
    for j in range(1, T.n):
        x = T.beta[j]
        for _ in range(max_steps + 1):
            if a < x < b:
                points.append(x)
                break
            x = T.apply_inverse(x)
        else:
            raise ReturnTimeExceeded(
                f"backward orbit of beta({j}) avoided the interval for "
                f"{max_steps} steps")
    if len(set(points)) != T.n - 1:
        raise NotAdmissible("division points of the interval collide")
    return sorted(points)


def _flow_block(T: Iet, left: QuadReal, width: QuadReal, a: QuadReal,
                b: QuadReal, max_steps: int) -> tuple[list[int], QuadReal]:
    """Push [left, left+width) forward until it first re-enters [a, b).

    Returns the interval-index visit word (one entry per step, counted
    before applying T) and the landing left endpoint.
    """
    visits = []
    x = left
    for _ in range(max_steps):
        i = T.interval_index(x)
        if not x + width <= T.beta[i]:
            raise ConsistencyViolation(
                "return block straddles a separation point")
        visits.append(i)
        x = x + T.tau[i - 1]
        if a <= x < b:
            return visits, x
    raise ReturnTimeExceeded(
        f"block at {left} did not return within {max_steps} steps")


def first_return_blocks(
    T: Iet, a: QuadReal, b: QuadReal, max_steps: int = DEFAULT_MAX_STEPS,
) -> tuple[list[QuadReal], list[list[int]], list[QuadReal]]:
    """Cut [a, b) at the division points and flow each block to first return.

    Returns (block boundary points c_0..c_n, visit words, landing lefts).
    """
    cuts = [a] + _division_points(T, a, b, max_steps) + [b]
    words, landings = [], []
    for j in range(len(cuts) - 1):
        word, landing = _flow_block(T, cuts[j], cuts[j + 1] - cuts[j], a, b,
                                    max_steps)
        words.append(word)
        landings.append(landing)
    return cuts, words, landings


def induce(T: Iet, J: AdmissibleInterval,
           max_steps: int = DEFAULT_MAX_STEPS,
           origin: Optional[QuadReal] = None) -> InductionStep:
    """First-return map of T on J as an IET on [0, |J|), with matrix A.

    Row i, column j of A counts the visits of the j-th return block to
    I(i); every structural invariant (alpha = A alpha', det A = +-1, Kac
    identity, exact tiling of J by the landings) is verified before
    returning.  ``origin`` records the absolute left endpoint of J and
    defaults to J.left; iterated callers pass their own bookkeeping.
    """
    if origin is None:
        origin = J.left
    check = is_admissible(T, J.a, J.b)
    if not check.admissible:
        raise NotAdmissible(
            f"orbit of the {check.endpoint} endpoint visits J at m={check.m}")
    a, b = J.left, J.right
    cuts, words, landings = first_return_blocks(T, a, b, max_steps)
    n = T.n

    widths = [cuts[j + 1] - cuts[j] for j in range(n)]
    order = sorted(range(n), key=lambda j: landings[j])
    rank = [0] * n
    for pos, j in enumerate(order):
        rank[j] = pos + 1
    sigma_prime = Permutation(tuple(rank))
    induced = iet_new(sigma_prime, widths)

    matrix = freeze([[words[j].count(i) for j in range(n)]
                     for i in range(1, n + 1)])
    return_times = tuple(len(w) for w in words)
    step = InductionStep(T, J, induced, matrix, return_times, origin)
    _verify_step(step, landings)
    return step


def _verify_step(step: InductionStep, landings: list[QuadReal]) -> None:
    T, induced, A = step.parent, step.induced, step.A
    n = T.n
    if column_sums(A) != step.return_times:
        raise ConsistencyViolation("column sums disagree with return times")
    if abs(det(A)) != 1:
        raise ConsistencyViolation(f"transition matrix has det {det(A)}")
    for i in range(n):
        combo = quad(0)
        for j in range(n):
            combo = combo + A[i][j] * induced.alpha[j]
        if combo != T.alpha[i]:
            raise ConsistencyViolation("alpha != A alpha'")
    kac = quad(0)
    for j in range(n):
        kac = kac + step.return_times[j] * induced.alpha[j]
    if kac != T.total:
        raise ConsistencyViolation("Kac identity fails")
    tiling = sorted(range(n), key=lambda j: landings[j])
    edge = step.J.left
    for j in tiling:
        if landings[j] != edge:
            raise ConsistencyViolation("return landings do not tile J")
        edge = edge + induced.alpha[j]
    if edge != step.J.right:
        raise ConsistencyViolation("return landings do not tile J")


def shrink_sequence(T: Iet, y0: QuadReal, depth: int,
                    max_steps: int = DEFAULT_MAX_STEPS,
                    side: Optional[Literal["left", "right"]] = None,
                    ) -> list[InductionStep]:
    """Chain of inductions on nested basic intervals containing y0.

    The first step inducts on [0, beta(n)) (identity matrix); each later
    step inducts the previous induced map on its basic interval containing
    y0, rescaled to that stage's coordinates.  If y0 hits a separation
    point of some stage, DegenerateAt(k) is raised unless a side is given.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if quad(0) > y0 or not y0 < T.total:
        raise OutOfDomain(f"{y0} outside [0, {T.total})")

    chain = [induce(T, whole_interval(T), max_steps)]
    y = y0
    origin = quad(0)
    for k in range(1, depth):
        current = chain[-1].induced
        if y == current.total:
            if side != "left":
                raise DegenerateAt(
                    f"y0 pinned to the right endpoint at stage {k}")
            idx = current.n - 1
        else:
            idx = current.interval_index(y) - 1
            if idx >= 1 and y == current.beta[idx]:
                if side is None:
                    raise DegenerateAt(
                        f"y0 hits separation point {idx} at stage {k}")
                if side == "left":
                    idx -= 1
        J = basic_interval(current, idx)
        origin = origin + J.left
        step = induce(current, J, max_steps, origin=origin)
        if not step.induced.total < current.total:
            raise ConsistencyViolation("interval lengths must shrink")
        chain.append(step)
        y = y - J.left
    return chain
