import logging

from borelwit.corpus import binary_corpus, binary_tails, nodes_up_to, omega_corpus, ternary_corpus
from borelwit.export import level_graph_dot, level_graph_json
from borelwit.families import g0_level_graph
from borelwit.ktree import canonical_point
from borelwit.options import CORPUS_SEED
from borelwit.seqcore import OMEGA
from test.util.options import quick_corpus_options

logger = logging.getLogger(__name__)


def test_nodes_up_to():
    assert nodes_up_to(0, 3) == [()]
    assert len(nodes_up_to(2, 2)) == 1 + 3 + 9
    assert nodes_up_to(1, 1) == [(), (0,), (1,)]


def test_corpus_is_deterministic():
    first = binary_corpus(**quick_corpus_options())
    assert first == binary_corpus(seed=CORPUS_SEED, **quick_corpus_options())
    assert first != binary_corpus(seed=CORPUS_SEED + 1, **quick_corpus_options())
    assert len(set(first)) == len(first)
    assert canonical_point((0,), 0) in first


def test_corpus_holds_every_random_point():
    structured = binary_corpus(random_count=0)
    full = binary_corpus()
    assert len(full) == len(structured) + 1000
    assert len(set(full)) == len(full)
    assert full[: len(structured)] == structured
    assert len(omega_corpus(random_count=50)) == len(omega_corpus(random_count=0)) + 50
    assert len(ternary_corpus(random_count=50)) == len(ternary_corpus(random_count=0)) + 50


def test_corpus_alphabets():
    assert all(x.alphabet is OMEGA for x in omega_corpus(random_count=10))
    assert all(x.alphabet == 3 for x in ternary_corpus(random_count=10))
    assert all(x.alphabet == 2 for x in binary_tails())


def test_level_graph_dot():
    source = level_graph_dot(g0_level_graph(0))
    assert source.startswith("graph g0_level_0 {")
    # the empty word gets a printable node name
    assert "e [label=" in source
    assert level_graph_dot(g0_level_graph(3)).count("--") == 7


def test_level_graph_json():
    assert level_graph_json(g0_level_graph(1)) == '{"edges": [["0", "1"]], "n": 1}'
