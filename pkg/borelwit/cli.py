import functools
import json
import logging
import sys
import typing as t
from dataclasses import dataclass, field

import click
from click.exceptions import UsageError

from borelwit import export
from borelwit.errors import BorelwitError, ParseError
from borelwit.families import (
    a1_is_edge,
    a1rect_classify,
    a1rect_is_edge,
    a2_is_edge,
    a2_partition_member,
    g0_is_edge,
    g0_level_graph,
    s3_family_member,
    s3_is_edge,
    s3_partition_member,
)
from borelwit.ktree import (
    a3_is_edge,
    density_witness_ht,
    density_witness_x3,
    g_is_edge,
    h_member,
    h_tilde_member,
    kt_member,
    kt_partition_member,
    kt_prefix_consistent,
    ktn_member,
    mirror,
    phi_t_image_member,
    placed_decode,
    pred,
    pred_l,
    x3_member,
)
from borelwit.options import DEFAULT_CODER_BOUND
from borelwit.points import EpPoint, format_point, parse_point
from borelwit.seqcore import (
    OMEGA,
    dense_words,
    format_word,
    pair,
    parse_word,
    prime_code,
    prime_decode,
    unpair,
)
from borelwit.verify import VerifyReport, known_suites, run_suite, scan_discrete_cylinders

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

MEMBER_FAMILIES = ["kt", "ktn", "h", "htilde", "phiimage", "x3", "a1rect", "s3", "a2part", "s3part", "ktpart"]
EDGE_FAMILIES = ["G0", "A1", "A1rect", "A2", "S3", "A3", "G"]
SCAN_FAMILIES = ["G0", "A1", "A1rect", "A2", "A3rel"]


@dataclass
class CliConfig:
    subcommand: str
    family: t.Optional[str] = None
    bounds: t.Dict[str, int] = field(default_factory=dict)
    output_format: str = "json"
    output: t.Optional[str] = None


def emit(config: CliConfig, text: str) -> None:
    if config.output:
        with open(config.output, "w") as handle:
            handle.write(text + "\n")
        logger.info("%s output written to %s", config.subcommand, config.output)
    else:
        click.echo(text)


def domain_errors(func):
    """Turn library errors into exit code 1 with the message verbatim."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except BorelwitError as e:
            raise click.ClickException(str(e)) from e

    return wrapper


def _point(text: str, flag: str, alphabet: t.Optional[int] = 2) -> EpPoint:
    try:
        return parse_point(text, alphabet)
    except ParseError as e:
        raise click.BadParameter(str(e), param_hint=flag) from e


def _word(text: str, flag: str, alphabet: t.Optional[int] = 2) -> t.Tuple[int, ...]:
    try:
        return parse_word(text, alphabet)
    except ParseError as e:
        raise click.BadParameter(str(e), param_hint=flag) from e


def _require(value: t.Any, flag: str, family: str) -> t.Any:
    if value is None:
        raise UsageError(f"family '{family}' needs {flag}")
    return value


@click.group()
@click.option("verbose", "--verbose", "-v", count=True, help="Log to stderr (-v info, -vv debug)")
def cli(verbose):
    """Dichotomy witnesses on eventually periodic points."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            format=LOG_FORMAT,
            datefmt=LOG_DATE_FORMAT,
            stream=sys.stderr,
        )


@cli.command()
@click.option("n", "--n", type=click.IntRange(min=0), required=True, help="Number of rows")
@click.option("output_format", "--format", type=click.Choice(["text", "json"]), default="text")
def dense(n, output_format):
    """Print psi(n), s_n and w_n for n < N."""
    config = CliConfig("dense", output_format=output_format)
    rows = [(k, dense_words(k)) for k in range(n)]
    if output_format == "json":
        emit(
            config,
            export.dumps(
                [{"n": k, "psi": format_word(d.psi), "s": format_word(d.s), "w": format_word(d.w)} for k, d in rows]
            ),
        )
        return
    for k, d in rows:
        emit(config, f"{k}\t{format_word(d.psi)}\t{format_word(d.s)}\t{format_word(d.w)}")


@cli.group("pair")
def pair_group():
    """The diagonal pairing <n,p>."""


@pair_group.command("encode")
@click.argument("n", type=click.IntRange(min=0))
@click.argument("p", type=click.IntRange(min=0))
def pair_encode(n, p):
    click.echo(str(pair(n, p)))


@pair_group.command("decode")
@click.argument("q", type=click.IntRange(min=0))
def pair_decode(q):
    index = unpair(q)
    click.echo(f"n={index.n} p={index.p} M={index.M}")


@cli.group("pcode")
def pcode_group():
    """The prime-power coder of finite sequences."""


@pcode_group.command("decode")
@click.argument("i", type=click.IntRange(min=0))
@click.option("bound", "--bound", type=click.IntRange(min=1), default=DEFAULT_CODER_BOUND, show_default=True)
@domain_errors
def pcode_decode(i, bound):
    click.echo(format_word(prime_decode(i, bound), OMEGA))


@pcode_group.command("encode")
@click.argument("word")
def pcode_encode(word):
    click.echo(str(prime_code(_word(word, "WORD", OMEGA))))


@cli.group("placed")
def placed_group():
    """Placed words and their predecessors."""


@placed_group.command("decode")
@click.argument("u")
@domain_errors
def placed_decode_command(u):
    word = _word(u, "U")
    info = placed_decode(word)
    if info is None:
        document = {"u": format_word(word), "placed": False, "pred": format_word(pred(word))}
    else:
        document = {
            **info.to_json(),
            "placed": True,
            "mirror": format_word(mirror(word)),
            "pred": format_word(pred(word)),
            "pred_l": format_word(pred_l(word, info.level)),
        }
    click.echo(export.dumps(document))


@cli.command()
@click.option("family", "--family", type=click.Choice(MEMBER_FAMILIES, case_sensitive=False), required=True)
@click.option("point", "--point", default=None, help="Point literal 'u;v'")
@click.option("word", "--word", default=None, help="Binary word, for the prefix form of --family kt")
@click.option("node", "--t", default=None, help="Node as comma separated naturals")
@click.option("n", "--n", type=click.IntRange(min=0), default=None)
@click.option("i", "--i", type=click.IntRange(min=0), default=None)
@click.option("eps", "--eps", type=click.IntRange(0, 1), default=None)
@click.option("q", "--q", type=click.IntRange(min=0), default=None)
@click.option("p", "--p", type=click.IntRange(min=0), default=None)
@click.option("bound", "--bound", type=click.IntRange(min=1), default=DEFAULT_CODER_BOUND)
@domain_errors
def member(family, point, word, node, n, i, eps, q, p, bound):
    """Membership of a point in one of the sets."""
    family = family.lower()
    config = CliConfig("member", family=family)
    document: t.Dict[str, t.Any] = {"family": family}
    tnode = _word(node, "--t", OMEGA) if node is not None else ()
    if family == "kt" and word is not None:
        u = _word(word, "--word")
        document.update(t=list(tnode), word=format_word(u), member=kt_prefix_consistent(tnode, u))
        emit(config, export.dumps(document))
        return
    alphabet = {"a2part": OMEGA, "s3": 3, "s3part": 3}.get(family, 2)
    x = _point(_require(point, "--point", family), "--point", alphabet)
    document["point"] = format_point(x)
    if family == "kt":
        document.update(t=list(tnode), member=kt_member(tnode, x))
    elif family == "ktn":
        n = _require(n, "--n", family)
        document.update(t=list(tnode), n=n, member=ktn_member(tnode, n, x))
    elif family == "h":
        document.update(t=list(tnode), member=h_member(tnode, x))
    elif family == "htilde":
        document.update(t=list(tnode), member=h_tilde_member(tnode, x))
    elif family == "phiimage":
        document.update(t=list(tnode), member=phi_t_image_member(tnode, x))
    elif family == "x3":
        answer = x3_member(x)
        document.update(answer.to_json())
        document["member"] = {"IN": True, "OUT": False}.get(answer.verdict.value)
    elif family == "a1rect":
        cell = a1rect_classify(x)
        document.update(cell="center" if cell is None else cell)
    elif family == "s3":
        i, eps = _require(i, "--i", family), _require(eps, "--eps", family)
        document.update(i=i, eps=eps, member=s3_family_member(i, eps, x))
    else:
        q, p = _require(q, "--q", family), _require(p, "--p", family)
        document.update(q=q, p=p)
        if family == "a2part":
            document["member"] = a2_partition_member(q, p, x, bound)
        elif family == "s3part":
            document["member"] = s3_partition_member(q, p, x)
        else:
            document["member"] = kt_partition_member(q, p, x, bound)
    emit(config, export.dumps(document))


EDGE_TESTS = {
    "g0": (g0_is_edge, 2),
    "a1": (a1_is_edge, 2),
    "a1rect": (a1rect_is_edge, 2),
    "a2": (a2_is_edge, OMEGA),
    "s3": (s3_is_edge, 3),
    "a3": (a3_is_edge, 2),
    "g": (g_is_edge, 2),
}


@cli.command()
@click.option("family", "--family", type=click.Choice(EDGE_FAMILIES, case_sensitive=False), required=True)
@click.option("left", "--left", required=True, help="Point literal 'u;v'")
@click.option("right", "--right", required=True, help="Point literal 'u;v'")
@domain_errors
def edge(family, left, right):
    """Test an edge and print its certifying parameter (null when none)."""
    test, alphabet = EDGE_TESTS[family.lower()]
    x = _point(left, "--left", alphabet)
    y = _point(right, "--right", alphabet)
    parameter = test(x, y)
    if isinstance(parameter, tuple):
        parameter = list(parameter)
    click.echo(
        export.dumps(
            {"family": family, "left": format_point(x), "right": format_point(y), "parameter": parameter}
        )
    )


@cli.command()
@click.option("family", "--family", type=click.Choice(["g0"], case_sensitive=False), default="g0")
@click.option("level", "--level", type=click.IntRange(min=0), required=True)
@click.option("output_format", "--format", type=click.Choice(["dot", "json"]), default="json")
@click.option("output", "--output", type=click.Path(dir_okay=False, writable=True), default=None)
@domain_errors
def graph(family, level, output_format, output):
    """Export the level-N restriction of G0."""
    config = CliConfig("graph", family=family, output_format=output_format, output=output)
    level_graph = g0_level_graph(level)
    if output_format == "dot":
        emit(config, export.level_graph_dot(level_graph))
    else:
        emit(config, export.level_graph_json(level_graph))


@cli.command()
@click.option("x3", "--x3", default=None, help="Binary word u: prints u·1^∞")
@click.option("ht", "--ht", nargs=2, default=None, help="Node T and word U: prints a point of H_T extending U")
@domain_errors
def witness(x3, ht):
    """Constructive density witnesses."""
    if (x3 is None) == (not ht):
        raise UsageError("give exactly one of --x3 or --ht")
    if x3 is not None:
        u = _word(x3, "--x3")
        x = density_witness_x3(u)
        click.echo(export.dumps({"point": format_point(x), "x3": x3_member(x).to_json()}))
        return
    tnode = _word(ht[0], "--ht", OMEGA)
    u = _word(ht[1], "--ht")
    x = density_witness_ht(tnode, u)
    click.echo(export.dumps({"point": format_point(x), "t": list(tnode), "h_member": h_member(tnode, x)}))


def _parse_bounds(values: t.Sequence[str]) -> t.Dict[str, int]:
    bounds = {}
    for value in values:
        key, sep, number = value.partition("=")
        if not sep or not number.isdigit():
            raise click.BadParameter(f"expected key=value, got '{value}'", param_hint="--bound")
        bounds[key] = int(number)
    return bounds


def _print_report(ctx: click.Context, config: CliConfig, report: VerifyReport, timing: bool) -> None:
    if config.output_format == "json":
        emit(config, export.dumps(report.to_json(timing)))
    else:
        lines = [f"suite {report.suite}: {report.cases_checked} cases, {len(report.failures)} failures"]
        lines += [f"  {key}: {count}" for key, count in report.branch_counts.items()]
        lines += [f"  FAIL {json.dumps(failure, sort_keys=True)}" for failure in report.failures]
        if timing:
            lines.append(f"  elapsed {report.elapsed_ms} ms")
        emit(config, "\n".join(lines))
    if not report.ok:
        ctx.exit(1)


@cli.command()
@click.option("suite_name", "--suite", required=True, help="Suite name, see --list")
@click.option("bound", "--bound", multiple=True, help="Override a suite bound, e.g. --bound maxlen=16")
@click.option("output_format", "--format", type=click.Choice(["json", "text"]), default="json")
@click.option("output", "--output", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("jobs", "--jobs", type=click.IntRange(min=1), envvar="BORELWIT_JOBS", default=1, show_default=True)
@click.option("timing", "--timing", is_flag=True, default=False, help="Include elapsed_ms in the report")
@click.pass_context
@domain_errors
def verify(ctx, suite_name, bound, output_format, output, jobs, timing):
    """Run a verification suite; exits 1 when any case fails."""
    if suite_name not in known_suites():
        raise UsageError(f"unknown suite '{suite_name}', expected one of: {', '.join(known_suites())}")
    bounds = _parse_bounds(bound)
    config = CliConfig("verify", bounds=bounds, output_format=output_format, output=output)
    _print_report(ctx, config, run_suite(suite_name, bounds, jobs), timing)


@cli.command()
@click.option("family", "--family", type=click.Choice(SCAN_FAMILIES, case_sensitive=False), required=True)
@click.option("depth", "--depth", type=click.IntRange(min=0), required=True)
@click.option("output_format", "--format", type=click.Choice(["json", "text"]), default="json")
@click.option("output", "--output", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("jobs", "--jobs", type=click.IntRange(min=1), envvar="BORELWIT_JOBS", default=1, show_default=True)
@click.option("timing", "--timing", is_flag=True, default=False)
@click.pass_context
@domain_errors
def scan(ctx, family, depth, output_format, output, jobs, timing):
    """Find an edge inside every cylinder of the given depth."""
    config = CliConfig("scan", family=family, bounds={"depth": depth}, output_format=output_format, output=output)
    _print_report(ctx, config, scan_discrete_cylinders(family, depth, jobs), timing)


if __name__ == "__main__":
    cli()
