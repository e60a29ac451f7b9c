import logging

from borelwit.ktree import (
    Verdict,
    a3_is_edge,
    canonical_point,
    density_witness_ht,
    density_witness_x3,
    g_is_edge,
    h_member,
    h_tilde_member,
    kt_partition_member,
    kt_partition_trace,
    phi_t,
    phi_t_image_member,
    verify_certificate,
    witness_chain,
    x3_member,
)
from borelwit.corpus import nodes_up_to
from borelwit.points import format_point
from test.fixtures import point

logger = logging.getLogger(__name__)


def test_witness_chain():
    chain = witness_chain(point("0;1"))
    assert chain.nodes == ((),)
    assert chain.qualifying == ()
    chain = witness_chain(canonical_point((0,), 0))
    assert chain.nodes == ((), (0,))
    assert chain.qualifying is None
    assert chain.to_json() == {"chain": [[], [0]], "qualifying": None}


def test_witness_chain_reaches_canonical_nodes():
    for node in nodes_up_to(3, 2):
        chain = witness_chain(canonical_point(node, 0))
        assert chain.last == node, f"{list(node)}"


def test_x3_examples():
    answer = x3_member(point("01;1"))
    assert answer.verdict is Verdict.IN
    assert answer.certificate["t"] == []
    assert x3_member(point("0;0")).verdict is Verdict.OUT
    assert x3_member(canonical_point((0,), 0)).verdict is Verdict.OUT


def test_x3_certificates_check_out():
    for text in ("01;1", "0;0", "0010;0", "1;0", "0;01", "110;1"):
        x = point(text)
        answer = x3_member(x)
        assert answer.verdict is not Verdict.UNKNOWN, text
        assert verify_certificate(x, answer), text


def test_x3_unknown_below_depth():
    x = canonical_point((2, 2), 0)
    answer = x3_member(x, depth=5)
    assert answer.verdict is Verdict.UNKNOWN
    assert answer.to_json()["depth"] == 5


def test_density_witnesses_are_in_x3():
    for u in ((), (0,), (1, 0, 1), (0, 0, 1, 1)):
        assert x3_member(density_witness_x3(u)).verdict is Verdict.IN


def test_h_examples():
    assert h_member((), point("01;1"))
    assert not h_member((0,), point("0010;0"))
    assert h_tilde_member((), point("01;1"))


def test_h_witnesses_and_their_images():
    for node in nodes_up_to(2, 2):
        x = density_witness_ht(node, ())
        y = phi_t(node, x)
        assert h_member(node, x)
        assert h_tilde_member(node, x)
        assert phi_t_image_member(node, y)
        assert not h_tilde_member(node, y)
        assert a3_is_edge(x, y) == node, f"{list(node)}"
        assert g_is_edge(x, y) == node, f"{list(node)}"


def test_a3_examples():
    assert a3_is_edge(point("01;1"), point("11;1")) == ()
    assert a3_is_edge(point("0010;0"), point("0011;0")) is None
    assert a3_is_edge(point("0;0"), point("1;0")) is None
    # edges go from digit 0 to digit 1
    assert a3_is_edge(point("11;1"), point("01;1")) is None


def test_kt_partition_examples():
    assert kt_partition_member(0, 0, point("0;1"), 100) is True
    assert kt_partition_member(1, 0, canonical_point((0,), 0), 100) is False
    assert kt_partition_member(0, 5, point("0;1")) is False


def test_kt_partition_trace():
    x = point("0;1")
    trace = kt_partition_trace(x, 3)
    assert trace[0] == 0
    for q, p in enumerate(trace):
        assert p is not None, f"q={q} {format_point(x)}"
        assert kt_partition_member(q, p, x)
