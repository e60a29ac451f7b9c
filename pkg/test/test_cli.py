import json
import logging

from borelwit.cli import cli
from test.fixtures import runner

logger = logging.getLogger(__name__)


def invoke(runner, *args):
    result = runner.invoke(cli, list(args))
    logger.debug(f"borelwit {' '.join(args)} -> {result.exit_code}: {result.output}")
    return result


def test_dense(runner):
    result = invoke(runner, "dense", "--n", "4")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "0\t\t\t0"
    assert lines[2] == "2\t1\t10\t100"
    assert lines[3] == "3\t00\t000\t0000"
    rows = json.loads(invoke(runner, "dense", "--n", "2", "--format", "json").output)
    assert rows == [{"n": 0, "psi": "", "s": "", "w": "0"}, {"n": 1, "psi": "0", "s": "0", "w": "00"}]


def test_pair(runner):
    assert invoke(runner, "pair", "decode", "4").output.strip() == "n=1 p=1 M=2"
    assert invoke(runner, "pair", "encode", "10", "0").output.strip() == "55"


def test_pcode(runner):
    assert invoke(runner, "pcode", "decode", "5", "--bound", "100").output.strip() == "1,0"
    assert invoke(runner, "pcode", "encode", "0,0").output.strip() == "6"
    result = invoke(runner, "pcode", "decode", "50", "--bound", "10")
    assert result.exit_code == 1
    assert "bound exceeded" in result.output


def test_placed_decode(runner):
    result = invoke(runner, "placed", "decode", "0010")
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["t"] == [0]
    assert document["l"] == 1
    assert document["sigma"] == 3
    assert document["eps"] == 0
    assert document["placed"] is True
    assert document["mirror"] == "0011"
    assert document["pred"] == "001"
    assert document["pred_l"] == "001"
    document = json.loads(invoke(runner, "placed", "decode", "00").output)
    assert document == {"u": "00", "placed": False, "pred": "0"}


def test_placed_decode_round_trip(runner):
    for word in ("0", "001", "0011", "0010"):
        document = json.loads(invoke(runner, "placed", "decode", word).output)
        node = ",".join(str(entry) for entry in document["t"])
        result = invoke(runner, "member", "--family", "kt", "--t", node, "--word", word)
        assert json.loads(result.output)["member"] is True, word


def test_member(runner):
    document = json.loads(invoke(runner, "member", "--family", "x3", "--point", "01;1").output)
    assert document["verdict"] == "IN"
    assert document["member"] is True
    document = json.loads(invoke(runner, "member", "--family", "ktn", "--point", "0011;0", "--n", "0").output)
    assert document["member"] is True
    document = json.loads(invoke(runner, "member", "--family", "a1rect", "--point", "0;0").output)
    assert document["cell"] == "center"
    document = json.loads(
        invoke(runner, "member", "--family", "s3", "--point", "20;0", "--i", "1", "--eps", "0").output
    )
    assert document["member"] is True
    document = json.loads(
        invoke(runner, "member", "--family", "a2part", "--point", "5;5", "--q", "0", "--p", "2").output
    )
    assert document["member"] is True
    document = json.loads(
        invoke(runner, "member", "--family", "ktpart", "--point", "0;1", "--q", "0", "--p", "0").output
    )
    assert document["member"] is True
    document = json.loads(invoke(runner, "member", "--family", "h", "--t", "0", "--point", "0010;0").output)
    assert document["member"] is False


def test_member_usage_errors(runner):
    result = invoke(runner, "member", "--family", "ktn", "--point", "0011;0")
    assert result.exit_code == 2
    assert "--n" in result.output
    result = invoke(runner, "member", "--family", "kt", "--point", "012;0")
    assert result.exit_code == 2
    assert "--point" in result.output
    result = invoke(runner, "member", "--family", "nope", "--point", ";0")
    assert result.exit_code == 2


def test_edge(runner):
    document = json.loads(invoke(runner, "edge", "--family", "G0", "--left", "0;0", "--right", "1;0").output)
    assert document["parameter"] == 0
    assert document["left"] == ";0"
    document = json.loads(invoke(runner, "edge", "--family", "A2", "--left", "3;2", "--right", "3;3").output)
    assert document["parameter"] == [3]
    document = json.loads(invoke(runner, "edge", "--family", "A3", "--left", "01;1", "--right", "11;1").output)
    assert document["parameter"] == []
    document = json.loads(invoke(runner, "edge", "--family", "A1rect", "--left", "1;1", "--right", "1;1").output)
    assert document["parameter"] == 0
    document = json.loads(invoke(runner, "edge", "--family", "G0", "--left", "1;0", "--right", "11;0").output)
    assert document["parameter"] is None


def test_graph(runner):
    result = invoke(runner, "graph", "--family", "g0", "--level", "2", "--format", "json")
    assert json.loads(result.output) == {"n": 2, "edges": [["00", "01"], ["00", "10"], ["01", "11"]]}
    result = invoke(runner, "graph", "--level", "2", "--format", "dot")
    assert result.exit_code == 0
    assert "graph g0_level_2" in result.output
    assert result.output.count("--") == 3


def test_graph_output_file(runner):
    with runner.isolated_filesystem():
        result = invoke(runner, "graph", "--level", "3", "--output", "level3.json")
        assert result.exit_code == 0
        with open("level3.json") as handle:
            assert len(json.load(handle)["edges"]) == 7


def test_graph_too_large(runner):
    result = invoke(runner, "graph", "--level", "17")
    assert result.exit_code == 1
    assert "too large" in result.output


def test_witness(runner):
    document = json.loads(invoke(runner, "witness", "--x3", "00").output)
    assert document["point"] == "00;1"
    assert document["x3"]["verdict"] == "IN"
    document = json.loads(invoke(runner, "witness", "--ht", "", "0").output)
    assert document["point"] == "0;1"
    assert document["h_member"] is True
    result = invoke(runner, "witness", "--ht", "0", "0011")
    assert result.exit_code == 1
    assert invoke(runner, "witness").exit_code == 2


def test_verify(runner):
    result = invoke(runner, "verify", "--suite", "lemma5.2", "--bound", "maxlen=6")
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["failures"] == []
    assert document["bounds"] == {"maxlen": 6}
    assert "elapsed_ms" not in document
    result = invoke(runner, "verify", "--suite", "lemma5.2", "--bound", "maxlen=6", "--timing")
    assert "elapsed_ms" in json.loads(result.output)
    result = invoke(runner, "verify", "--suite", "lemma5.2", "--bound", "maxlen=6", "--format", "text")
    assert result.output.startswith("suite lemma5.2: ")


def test_verify_errors(runner):
    result = invoke(runner, "verify", "--suite", "lemma9.9")
    assert result.exit_code == 2
    assert "unknown suite" in result.output
    result = invoke(runner, "verify", "--suite", "lemma5.2", "--bound", "maxlen=99")
    assert result.exit_code == 1
    assert "bound too large" in result.output
    result = invoke(runner, "verify", "--suite", "lemma5.2", "--bound", "maxlen")
    assert result.exit_code == 2
    assert "--bound" in result.output


def test_scan(runner):
    result = invoke(runner, "scan", "--family", "A1", "--depth", "4")
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["suite"] == "scan-a1"
    assert len(document["witnesses"]) == 5


def test_verbose_logging(runner):
    result = invoke(runner, "-vv", "pair", "decode", "3")
    assert result.exit_code == 0
    assert "n=2 p=0 M=2" in result.output
