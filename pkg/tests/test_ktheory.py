from fractions import Fraction

import pytest

from ietlab import (
    GroupElement,
    HorizonExceedsDepth,
    basic_interval,
    bratteli,
    coinvariant_shift,
    cone_approx,
    dimension_group,
    dual_cone_test,
    export_bratteli,
    l_sigma,
    mat_mul,
    orbit_classes,
    permutation,
    positivity,
    quad,
    shrink_sequence,
    strip_class_matrix,
    strip_coordinates,
    strip_decomposition,
    towers,
    whole_interval,
)


def test_towers_sqrt2(sqrt2_iet):
    partition = towers(sqrt2_iet, basic_interval(sqrt2_iet, 1))
    assert partition.algebra_dims == (2, 1)
    assert [t.height for t in partition.towers] == [2, 1]


def test_towers_golden(golden_iet):
    partition = towers(golden_iet, basic_interval(golden_iet, 1))
    assert partition.algebra_dims == (3, 2)


def test_towers_whole_interval(sqrt2_iet):
    partition = towers(sqrt2_iet, whole_interval(sqrt2_iet))
    assert partition.algebra_dims == (1, 1)


def test_tower_floors_tile_domain(sqrt2_iet):
    partition = towers(sqrt2_iet, basic_interval(sqrt2_iet, 1))
    floors = sorted(
        (left, right) for tower in partition.towers for left, right in tower.floors
    )
    edge = quad(0)
    for left, right in floors:
        assert left == edge
        edge = right
    assert edge == sqrt2_iet.total


def test_tower_heights_satisfy_kac(sqrt2_iet):
    partition = towers(sqrt2_iet, basic_interval(sqrt2_iet, 1))
    total = sum(
        ((t.base_right - t.base_left) * t.height for t in partition.towers), quad(0)
    )
    assert total == sqrt2_iet.total


def test_bratteli_edges_are_chain_matrices(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 6)
    diagram = bratteli(chain)
    assert len(diagram.levels) == len(chain) + 1
    assert diagram.edges == tuple(step.A for step in chain)
    assert diagram.levels[0].labels == ("L0_V1", "L0_V2")


def test_bratteli_export_format(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 2)
    dot = export_bratteli(bratteli(chain))
    lines = dot.splitlines()
    assert lines[0] == "digraph bratteli {"
    assert lines[1] == "  rankdir=TB;"
    assert lines[-1] == "}"
    assert '  L0_V1 -> L1_V1 [label="1"];' in lines
    assert dot.endswith("}\n")


def test_dimension_group_sources(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 10)
    G = dimension_group(chain=chain)
    assert G.source == "induction_chain"
    assert G.depth == 9
    assert G.matrices == tuple(step.A for step in chain[1:])
    strips = strip_decomposition(sqrt2_iet, 4)
    H = dimension_group(strips=strips)
    assert H.source == "strip_chain"
    assert H.matrices == tuple(lvl.incidence_to_previous for lvl in strips[1:])
    with pytest.raises(ValueError):
        dimension_group()
    with pytest.raises(ValueError):
        dimension_group(chain=chain, strips=strips)


def test_positivity_verdicts(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 10)
    G = dimension_group(chain=chain)
    assert positivity(G, GroupElement(0, (0, 0)), 5) == "zero"
    assert positivity(G, GroupElement(0, (1, 1)), 5) == "positive"
    assert positivity(G, GroupElement(0, (-2, -1)), 5) == "nonpositive_witness"
    assert positivity(G, GroupElement(0, (5, -3)), 9) in (
        "positive", "nonpositive_witness", "unknown",
    )


def test_positivity_eventually_decides_mixed_vector(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 10)
    G = dimension_group(chain=chain)
    # (2, -1) has positive pairing with Lebesgue, so pushing decides it
    assert positivity(G, GroupElement(0, (2, -1)), 1) == "unknown"
    assert positivity(G, GroupElement(0, (2, -1)), 9) == "positive"


def test_positivity_horizon_guard(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 5)
    G = dimension_group(chain=chain)
    with pytest.raises(HorizonExceedsDepth):
        positivity(G, GroupElement(3, (1, 1)), 3)


def test_dual_cone_test(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 10)
    cone = cone_approx(chain)
    assert dual_cone_test(GroupElement(0, (1, 1)), cone) == "consistent_positive"
    assert dual_cone_test(GroupElement(0, (-1, -1)), cone) == "consistent_negative"
    assert dual_cone_test(GroupElement(0, (0, 0)), cone) == "boundary"
    with pytest.raises(HorizonExceedsDepth):
        dual_cone_test(GroupElement(99, (1, 1)), cone)


def test_dual_cone_epsilon_controls_boundary(sqrt2_iet):
    chain = shrink_sequence(sqrt2_iet, quad(0), 10)
    cone = cone_approx(chain)
    nearly = GroupElement(0, (1, -1))
    strict = dual_cone_test(nearly, cone, epsilon=Fraction(1, 10**9))
    wide = dual_cone_test(nearly, cone, epsilon=Fraction(1, 2))
    assert wide == "boundary"
    assert strict in ("consistent_positive", "consistent_negative", "boundary")


def test_l_sigma_two_interval():
    result = l_sigma(permutation(2, 1))
    assert result.matrix == ((0, -1), (1, 0))
    assert result.det == 1
    assert result.invertible


def test_l_sigma_identity_is_zero():
    result = l_sigma(permutation(1, 2, 3))
    assert result.matrix == ((0, 0, 0), (0, 0, 0), (0, 0, 0))
    assert result.det == 0
    assert not result.invertible


def test_l_sigma_antisymmetry():
    for images in ((3, 1, 4, 2), (2, 3, 1), (4, 3, 2, 1)):
        matrix = l_sigma(permutation(*images)).matrix
        n = len(matrix)
        assert all(matrix[i][j] == -matrix[j][i] for i in range(n) for j in range(n))


def test_coinvariant_shift_formula():
    assert coinvariant_shift(permutation(2, 1), 1) == (0, 1)
    assert coinvariant_shift(permutation(2, 1), 2) == (-1, 0)


def test_orbit_classes_walk(sqrt2_iet):
    classes = orbit_classes(sqrt2_iet, 3)
    assert classes == ((0, 0), (0, 1), (-1, 1), (-1, 2))
    # each step adds the shift of the interval the point passed through
    x = quad(0)
    for k in range(3):
        i = sqrt2_iet.interval_index(x)
        shift = coinvariant_shift(sqrt2_iet.sigma, i)
        assert tuple(a + s for a, s in zip(classes[k], shift)) == classes[k + 1]
        x = sqrt2_iet.apply(x)


def test_strip_class_matrix_frozen(sqrt2_iet, golden_iet):
    levels = strip_decomposition(sqrt2_iet, 1)
    assert strip_class_matrix(sqrt2_iet, levels[0]) == ((-1, 3), (1, -2))
    glevels = strip_decomposition(golden_iet, 1)
    assert strip_class_matrix(golden_iet, glevels[0]) == ((-1, 2), (2, -3))


def test_strip_class_matrices_chain(sqrt2_iet):
    levels = strip_decomposition(sqrt2_iet, 4)
    mats = [strip_class_matrix(sqrt2_iet, lvl) for lvl in levels]
    for j in range(len(levels) - 1):
        assert mats[j] == mat_mul(mats[j + 1], levels[j + 1].incidence_to_previous)


def test_strip_coordinates_integral(sqrt2_iet):
    levels = strip_decomposition(sqrt2_iet, 1)
    W = strip_class_matrix(sqrt2_iet, levels[0])
    assert strip_coordinates(W, (1, 1)) == (5, 2)
    # heights of the level-1 strips recover the all-ones class
    heights = tuple(s.height for s in levels[0].strips)
    assert strip_coordinates(W, (1, 1)) == heights
