import logging

import pytest

from borelwit.errors import TooLarge
from borelwit.families import (
    Family,
    PartitionKind,
    PartitionSpec,
    Phi_prefix,
    a1_edge,
    a1_is_edge,
    a1rect_classify,
    a1rect_is_edge,
    a1rect_zero_pair,
    a2_family_point,
    a2_is_edge,
    a2_partition_member,
    g0_edge,
    g0_is_edge,
    g0_level_graph,
    g0_tree_check,
    meet,
    partition_cell,
    partition_trace,
    phi_map,
    s3_decode,
    s3_family_member,
    s3_is_edge,
    s3_partition_member,
    s3_point,
    suitable,
    suitable_for_family,
    suitable_pred,
    theta,
    theta_index,
)
from borelwit.points import EpPoint, ep_prefix, format_point, parse_point
from borelwit.seqcore import OMEGA
from borelwit.corpus import binary_tails
from test.fixtures import point, zero, one

logger = logging.getLogger(__name__)


def omega(text: str) -> EpPoint:
    return parse_point(text, OMEGA)


def ternary(text: str) -> EpPoint:
    return parse_point(text, 3)


def test_g0_edge_examples():
    assert g0_is_edge(point("0;0"), point("1;0")) == 0
    assert g0_is_edge(point("00;0"), point("01;0")) == 1
    assert g0_is_edge(point("1;0"), point("11;0")) is None
    # orientation matters
    assert g0_is_edge(point("1;0"), point("0;0")) is None


def test_g0_edge_builder(zero, one):
    for n in range(12):
        for tail in (zero, one, point("1;01")):
            edge = g0_edge(n, tail)
            assert edge.family is Family.G0
            assert g0_is_edge(edge.left, edge.right) == n


def test_g0_level_graph_examples():
    assert g0_level_graph(1).edges == (("0", "1"),)
    assert g0_level_graph(2).edges == (("00", "01"), ("00", "10"), ("01", "11"))
    assert len(g0_level_graph(3).edges) == 7


def test_g0_level_graph_is_a_tree():
    for level in range(1, 11):
        check = g0_tree_check(g0_level_graph(level))
        assert check.edges == 2**level - 1, f"level {level}"
        assert check.acyclic and check.connected, f"level {level}"


def test_g0_level_graph_too_large():
    with pytest.raises(TooLarge, match="too large"):
        g0_level_graph(17)


def test_a1_examples(zero):
    assert a1_is_edge(point("1;0"), point("01;0")) == 0
    assert a1_is_edge(point("01;0"), point("1;0")) is None
    assert a1rect_classify(point("0;0")) is None
    edge = a1_edge(3, zero, point("1;10"))
    assert ep_prefix(edge.left, 7) == (0, 0, 0, 0, 0, 0, 1)
    assert a1_is_edge(edge.left, edge.right) == 3


def test_a1rect(zero, one):
    assert a1rect_classify(point("0001;0")) == 3
    assert a1rect_is_edge(point("001;0"), point("001;1")) == 2
    assert a1rect_is_edge(point("001;0"), point("001;0")) == 2
    assert a1rect_is_edge(point("1;1"), point("1;1")) == 0
    assert a1rect_is_edge(zero, zero) is None
    assert a1rect_is_edge(point("001;0"), point("01;0")) is None
    assert a1rect_zero_pair(zero, zero)
    assert not a1rect_zero_pair(zero, one)


def test_a2_edge_examples():
    assert a2_is_edge(omega(";0"), omega(";1")) == ()
    assert a2_is_edge(omega("3;2"), omega("3;3")) == (3,)
    assert a2_is_edge(omega("3;2"), omega("3;2")) is None
    assert a2_is_edge(omega("3,1;4"), omega("3,1;5")) == (3, 1)
    # the tail symbol must match the length of u
    assert a2_is_edge(omega("3;4"), omega("3;5")) is None


def test_a2_family_points():
    for i in range(12):
        left, right = a2_family_point(i, 0), a2_family_point(i, 1)
        assert a2_is_edge(left, right) is not None


def test_a2_partition_examples():
    assert a2_partition_member(0, 0, omega("0;0"))
    assert not a2_partition_member(0, 1, omega("0;0"))
    assert a2_partition_member(0, 2, omega("5;5"))
    assert not a2_partition_member(0, 5, omega("0;0"))


def test_a2_partition_is_a_partition():
    points = [omega(text) for text in (";0", ";1", "0;2", "0;3", "1;5", "7,7;1", "0,0;4")]
    for q in range(6):
        for x in points:
            cells = [p for p in range(2 * q + 3) if a2_partition_member(q, p, x)]
            assert len(cells) == 1, f"q={q} x={format_point(x)} cells={cells}"
            assert partition_cell(PartitionSpec(PartitionKind.A2, q), x) == cells[0]


def test_suitable_words():
    assert suitable((0, 2))
    assert suitable(())
    assert not suitable((2, 0))
    assert theta(1) == (2,)
    assert [theta(i) for i in range(5)] == [(), (2,), (0, 2), (1, 2), (2, 2)]
    assert suitable_pred((2, 2)) == (2,)
    assert suitable_pred((0, 1)) == ()
    for i in range(200):
        assert theta_index(theta(i)) == i


def test_s3_examples():
    assert s3_family_member(1, 0, ternary("20;0"))
    assert not s3_family_member(1, 0, ternary("20;2"))
    assert s3_partition_member(0, 0, ternary("0;0"))
    assert s3_decode(ternary("0211;01")) == (theta_index((0, 2)), 1)


def test_s3_edges():
    for i in range(10):
        for alpha in binary_tails():
            for beta in binary_tails():
                assert s3_is_edge(s3_point(i, 0, alpha), s3_point(i, 1, beta)) == i
    assert s3_is_edge(s3_point(1, 1, EpPoint((), (0,))), s3_point(1, 0, EpPoint((), (0,)))) is None


def test_meets_of_s3_edges_are_suitable():
    tails = binary_tails()
    for i in range(15):
        assert suitable_for_family(theta(i), tails)
    assert meet(ternary(";0"), ternary(";0")) is None


def test_s3_partition_trace():
    x = s3_point(2, 1, EpPoint((), (1,)))
    trace = partition_trace(PartitionKind.S3, x, 6)
    for q, p in enumerate(trace):
        assert s3_partition_member(q, p, x)
    # theta(2) = 02 is reached at q = 2
    assert trace[2] == 5


def test_partition_cell_rejects_kt():
    with pytest.raises(ValueError):
        partition_cell(PartitionSpec(PartitionKind.KT, 0), point(";0"))


def test_phi_examples():
    assert phi_map((0,)) == (2, 0)
    assert phi_map((2,)) == (0,)
    assert phi_map((0, 0)) == (2, 0, 0)


def test_phi_prefix_follows_phi_map():
    gamma = omega("0,3;1,4")
    for depth in range(1, 12):
        n = 1
        while len(phi_map(ep_prefix(gamma, n))) < depth:
            n += 1
        assert Phi_prefix(gamma, depth) == phi_map(ep_prefix(gamma, n))[:depth]
