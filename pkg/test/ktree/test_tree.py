import logging

import pytest

from borelwit.errors import InconsistentPrefix, WordLengthError
from borelwit.ktree import (
    block_targets,
    canonical_point,
    density_witness_ht,
    density_witness_x3,
    find_ktn_in_cylinder,
    first_disagreement,
    free_residue,
    h_member,
    kt_constraints,
    kt_member,
    kt_prefix_consistent,
    ktn_member,
    ktn_member_direct,
    phi_t,
    phi_t_inverse,
    sigma_offsets,
)
from borelwit.corpus import binary_corpus, nodes_up_to
from borelwit.points import ep_at, ep_last, ep_prefix, format_point
from borelwit.seqcore import is_prefix, pair
from test.fixtures import point
from test.util.options import quick_corpus_options

logger = logging.getLogger(__name__)


def test_sigma_offsets_examples():
    assert sigma_offsets(()).partials == (0,)
    assert sigma_offsets(()).sigma_t == 0
    assert sigma_offsets((0,)).partials == (0, 2)
    assert sigma_offsets((0,)).sigma_t == 3
    assert sigma_offsets((4, 2)).partials == (0, 6, 10)
    assert sigma_offsets((4, 2)).sigma_t == 55
    assert sigma_offsets((4, 2)).free_vertical == 10


def test_kt_constraints_examples():
    assert kt_constraints(()) == {}
    assert kt_constraints((0,)) == {0: point("01;0"), 1: point("0;0")}
    assert kt_constraints((0, 0)) == {
        0: point("01;0"),
        1: point("0;0"),
        2: point("01;0"),
        3: point("0;0"),
    }


def test_block_targets_end_with_a_one_at_height_m_plus_one():
    for m in range(8):
        targets = block_targets(m)
        assert len(targets) == m + 2
        assert ep_last(targets[0][1], 1) == m + 1


def test_kt_prefix_consistent_examples():
    assert kt_prefix_consistent((0,), (0, 0, 1, 1))
    assert not kt_prefix_consistent((0,), (1,))
    assert kt_prefix_consistent((), (1, 0, 1))


def test_canonical_point_examples():
    assert canonical_point((), 0) == point("0;0")
    assert canonical_point((0,), 0) == point("0010;0")
    assert canonical_point((0,), 1) == point("0011;0")
    assert format_point(canonical_point((0,), 0)) == "001;0"


def test_canonical_points_are_members():
    for node in nodes_up_to(2, 3):
        sigma = sigma_offsets(node).sigma_t
        for eps in (0, 1):
            x = canonical_point(node, eps)
            assert kt_member(node, x), f"{list(node)} eps={eps}"
            assert ep_at(x, sigma) == eps
            assert kt_prefix_consistent(node, ep_prefix(x, sigma + 20))
            if node:
                assert ktn_member(node[:-1], node[-1], x)


def test_kt_member_of_the_root():
    for x in binary_corpus(**quick_corpus_options()):
        assert kt_member((), x)


def test_phi_t_examples():
    assert phi_t((), point("01;1")) == point("11;1")
    assert phi_t((0,), point("0010;0")) == point("0011;0")
    assert phi_t((), point("1;1")) == point("1;1")
    assert phi_t_inverse((0,), point("0011;0")) == point("0010;0")
    assert phi_t((0,), (0, 0, 1, 0)) == (0, 0, 1, 1)


def test_phi_t_needs_the_split_coordinate():
    with pytest.raises(WordLengthError):
        phi_t((0,), (0, 0, 1))


def test_ktn_member_examples():
    assert ktn_member((), 0, point("0010;0"))
    # position 3 is the free split coordinate of K_(0)
    assert ktn_member((), 0, point("0011;0"))
    assert not ktn_member((), 1, point("0010;0"))


def test_ktn_member_matches_direct_check():
    corpus = binary_corpus(**quick_corpus_options())
    for node in nodes_up_to(1, 2):
        for n in range(4):
            for x in corpus:
                assert ktn_member(node, n, x) == ktn_member_direct(node, n, x), (
                    f"{list(node)} n={n} x={format_point(x)}"
                )


def test_first_disagreement():
    assert first_disagreement((0,), point(";0")) == 2
    assert first_disagreement((0,), canonical_point((0,), 1)) is None
    assert first_disagreement((), point(";1")) is None


def test_find_ktn_in_cylinder_examples():
    assert find_ktn_in_cylinder((), 0, ()) == 0
    assert find_ktn_in_cylinder((), 1, ()) == 2
    assert find_ktn_in_cylinder((0,), 0, (0,)) == 1


def test_free_residue():
    assert free_residue(0) == (1, 0)
    for free in range(1, 6):
        modulus, residue = free_residue(free)
        heights = range(4 * modulus)
        assert any(pair(free, p) % modulus == residue for p in heights)
        for v in range(free):
            assert all(pair(v, p) % modulus != residue for p in heights), f"vertical {v}"


def test_density_witness_examples():
    assert density_witness_x3((0, 0)) == point("00;1")
    assert density_witness_x3(()) == point(";1")
    assert density_witness_ht((), (0,)) == point("0;1")
    with pytest.raises(InconsistentPrefix):
        density_witness_ht((0,), (0, 0, 1, 1))


def test_density_witness_ht_extends_prefixes():
    for node in nodes_up_to(2, 2):
        base = canonical_point(node, 0)
        sigma = sigma_offsets(node).sigma_t
        for length in range(0, sigma + 3):
            u = ep_prefix(base, length)
            x = density_witness_ht(node, u)
            assert h_member(node, x), f"{list(node)} u={u}"
            assert is_prefix(u, ep_prefix(x, len(u)))
