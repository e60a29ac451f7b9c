"""
Verification suites.

Each suite walks a finite range (all binary words up to a length, the fixed
point corpus, or small index ranges) and checks one family of properties
against an independent computation. Word sweeps are split by length and
leading bits and fanned out with joblib; the per-chunk tallies are merged
and sorted, so a report does not depend on the number of jobs.
"""
import logging
import time
import typing as t
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from joblib import Parallel, delayed

from borelwit import corpus as pointsets
from borelwit.errors import InconsistentPrefix, NonUniqueWitness, UnknownSuite, WitnessCheckFailed
from borelwit.families import (
    PartitionKind,
    PartitionSpec,
    Phi_prefix,
    a1_edge,
    a1_is_edge,
    a1rect_is_edge,
    a2_cell_word,
    a2_family_point,
    a2_is_edge,
    a2_partition_member,
    a2_point,
    g0_edge,
    g0_is_edge,
    g0_level_graph,
    g0_tree_check,
    partition_cell,
    partition_trace,
    phi_map,
    s3_partition_member,
    s3_point,
    suitable_for_family,
    theta,
)
from borelwit.ktree import (
    Verdict,
    a3_is_edge,
    canonical_point,
    decode_placed,
    density_witness_ht,
    density_witness_x3,
    find_ktn_in_cylinder,
    h_member,
    h_tilde_member,
    kt_member,
    kt_partition_member,
    kt_prefix_consistent,
    ktn_member,
    ktn_member_direct,
    mirror,
    phi_t,
    phi_t_image_member,
    placed_decode,
    placed_decode_oracle,
    pred,
    pred_l,
    sigma_offsets,
    verify_certificate,
    witness_chain,
    x3_member,
)
from borelwit.options import DEFAULT_CODER_BOUND, default_jobs, resolve_bounds, suite_defaults
from borelwit.points import (
    EpPoint,
    ep_at,
    ep_from_word,
    ep_hits_forever,
    ep_last_in_vertical,
    ep_prefix,
    ep_vertical,
    ep_with,
    first_infinite_vertical,
    format_point,
    parse_point,
)
from borelwit.seqcore import (
    OMEGA,
    coder_values,
    dense_words,
    format_word,
    is_prefix,
    pair,
    prime_code,
    prime_decode,
    prime_uncode,
    psi_index,
    slice_word,
    unpair,
)

logger = logging.getLogger(__name__)

# Lengths above this are split by their leading bits
SPLIT_DEPTH = 10
SPLIT_PREFIX = 4
CORPUS_CHUNK = 100


@dataclass
class Tally:
    cases: int = 0
    failures: t.List[t.Dict[str, t.Any]] = field(default_factory=list)
    branches: Counter = field(default_factory=Counter)
    witnesses: t.List[t.Dict[str, t.Any]] = field(default_factory=list)

    def check(self, ok: bool, case: str, expected: t.Any, got: t.Any) -> bool:
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "expected": expected, "got": got})
        return ok

    def check_many(self, ok: np.ndarray, describe: t.Callable[[int], t.Tuple[str, t.Any, t.Any]]) -> None:
        """One case per entry of `ok`; `describe` builds the failure for a failing index."""
        self.cases += int(ok.size)
        for index in np.flatnonzero(~ok):
            case, expected, got = describe(int(index))
            self.failures.append({"case": case, "expected": expected, "got": got})

    def merge(self, other: "Tally") -> "Tally":
        self.cases += other.cases
        self.failures.extend(other.failures)
        self.branches.update(other.branches)
        self.witnesses.extend(other.witnesses)
        return self


@dataclass
class VerifyReport:
    suite: str
    bounds: t.Dict[str, int]
    cases_checked: int
    failures: t.List[t.Dict[str, t.Any]]
    branch_counts: t.Dict[str, int]
    elapsed_ms: int
    witnesses: t.List[t.Dict[str, t.Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = False) -> t.Dict[str, t.Any]:
        out = {
            "suite": self.suite,
            "bounds": self.bounds,
            "cases_checked": self.cases_checked,
            "branch_counts": self.branch_counts,
            "failures": self.failures,
        }
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


SuiteFunc = t.Callable[[t.Dict[str, int], int], Tally]
SUITES: t.Dict[str, SuiteFunc] = {}


def suite(name: str) -> t.Callable[[SuiteFunc], SuiteFunc]:
    def register(func: SuiteFunc) -> SuiteFunc:
        SUITES[name] = func
        return func

    return register


def known_suites() -> t.List[str]:
    return sorted(SUITES)


def run_suite(
    name: str, bounds: t.Optional[t.Mapping[str, int]] = None, jobs: t.Optional[int] = None
) -> VerifyReport:
    if name not in SUITES or name not in suite_defaults():
        raise UnknownSuite(name, known_suites())
    resolved = resolve_bounds(name, bounds)
    jobs = jobs or default_jobs()
    logger.info("running suite %s with %s on %d jobs", name, resolved, jobs)
    started = time.perf_counter()
    tally = SUITES[name](resolved, jobs)
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    failures = sorted(tally.failures, key=lambda f: (f["case"], repr(f["expected"]), repr(f["got"])))
    witnesses = sorted(tally.witnesses, key=lambda w: w["key"])
    logger.info(
        "suite %s: %d cases, %d failures, %d ms", name, tally.cases, len(failures), elapsed_ms
    )
    return VerifyReport(
        suite=name,
        bounds=resolved,
        cases_checked=tally.cases,
        failures=failures,
        branch_counts=dict(sorted(tally.branches.items())),
        elapsed_ms=elapsed_ms,
        witnesses=witnesses,
    )


def scan_discrete_cylinders(family: str, depth: int, jobs: t.Optional[int] = None) -> VerifyReport:
    """
    For every cylinder at `depth` around the family's center, exhibit an
    edge inside it (for the relative cylinders of A3, the K_{tn} inside).
    """
    return run_suite(f"scan-{family.lower()}", {"depth": depth}, jobs)


# --- plumbing ------------------------------------------------------------------


def _words(length: int, prefix: t.Tuple[int, ...] = ()) -> t.Iterator[t.Tuple[int, ...]]:
    for tail in product((0, 1), repeat=length - len(prefix)):
        yield prefix + tail


def _word_tasks(maxlen: int, minlen: int = 0) -> t.List[t.Tuple[int, t.Tuple[int, ...]]]:
    tasks = []
    for length in range(minlen, maxlen + 1):
        if length <= SPLIT_DEPTH:
            tasks.append((length, ()))
        else:
            tasks.extend((length, prefix) for prefix in product((0, 1), repeat=SPLIT_PREFIX))
    return tasks


def _sweep(worker: t.Callable[..., Tally], tasks: t.Sequence[t.Tuple], jobs: int, *extra) -> Tally:
    results = Parallel(n_jobs=jobs)(delayed(worker)(*task, *extra) for task in tasks)
    total = Tally()
    for result in results:
        total.merge(result)
    return total


def _corpus_tasks(size: int) -> t.List[t.Tuple[int, int]]:
    return [(start, min(start + CORPUS_CHUNK, size)) for start in range(0, size, CORPUS_CHUNK)]


def _w(u: t.Sequence[int]) -> str:
    return format_word(u)


def _level(u: t.Sequence[int]) -> int:
    return placed_decode(u).level


# --- seqcore and points -----------------------------------------------------------


@suite("seqcore")
def _seqcore(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for q in range(bounds["qmax"]):
        index = unpair(q)
        back = pair(index.n, index.p)
        tally.check(back == q and index.n + index.p == index.M, f"unpair/{q}", q, back)
    for total in range(bounds["diag"] + 1):
        for n in range(total + 1):
            index = unpair(pair(n, total - n))
            tally.check(
                (index.n, index.p) == (n, total - n),
                f"pair/{n},{total - n}",
                [n, total - n],
                [index.n, index.p],
            )
    for n in range(bounds["dense"]):
        words = dense_words(n)
        tally.check(
            len(words.s) == n and len(words.w) == n + 1 and psi_index(words.psi) == n,
            f"dense/{n}",
            n,
            len(words.s),
        )
    for length in range(bounds["words"] + 1):
        for s in _words(length):
            n = psi_index(s)
            tally.check(
                n <= 2 ** (bounds["words"] + 1) and is_prefix(s, dense_words(n).s),
                f"density/{_w(s)}",
                _w(s),
                _w(dense_words(n).s),
            )
    values = coder_values(bounds["coder"])
    index_of = {word: k for k, (_, word) in enumerate(values)}
    for k, (value, word) in enumerate(values):
        tally.check(prime_uncode(value) == word, f"uncode/{value}", list(word), prime_uncode(value))
        for cut in range(len(word)):
            prefix = word[:cut]
            tally.check(
                prime_code(prefix) <= value and index_of[prefix] <= k,
                f"monotone/{value}/{cut}",
                value,
                prime_code(prefix),
            )
    return tally


def _points_worker(start: int, stop: int, verticals: int, depth: int, random_count: int) -> Tally:
    tally = Tally()
    for x in pointsets.binary_corpus(random_count=random_count)[start:stop]:
        key = format_point(x)
        again = EpPoint(x.preperiod, x.period)
        tally.check(again == x and parse_point(key) == x, f"normal/{key}", key, format_point(again))
        for n in range(verticals + 1):
            vertical = ep_vertical(x, n)
            bad = [p for p in range(depth + 1) if ep_at(vertical, p) != ep_at(x, pair(n, p))]
            tally.check(not bad, f"slice/{key}/{n}", [], bad[:3])
        infinite = first_infinite_vertical(x, 1)
        if 1 in x.period:
            tally.branches["ones_in_period"] += 1
            tally.check(
                infinite is not None and ep_hits_forever(x, infinite, 1),
                f"ones/{key}",
                "a vertical with infinitely many 1s",
                infinite,
            )
        else:
            tally.branches["finite_support"] += 1
            finite = all(not ep_hits_forever(x, n, 1) for n in range(len(x.preperiod) + 2))
            tally.check(finite and infinite is None, f"ones/{key}", "finite verticals", infinite)
    return tally


@suite("points")
def _points(bounds: t.Dict[str, int], jobs: int) -> Tally:
    size = len(pointsets.binary_corpus(random_count=bounds["random"]))
    return _sweep(
        _points_worker, _corpus_tasks(size), jobs, bounds["verticals"], bounds["depth"], bounds["random"]
    )


# --- slices -------------------------------------------------------------------


def _bits(word: int, length: int) -> t.Tuple[int, ...]:
    return tuple((word >> q) & 1 for q in range(length))


def _gather(words: np.ndarray, positions: t.Sequence[int]) -> np.ndarray:
    """Bit j of each result is bit positions[j] of the word."""
    code = np.zeros_like(words)
    for j, q in enumerate(positions):
        code |= ((words >> q) & 1) << j
    return code


def _lemma52_worker(length: int, maxlen: int) -> Tally:
    """All words of one length at once, each word an integer with u[q] at bit q."""
    tally = Tally()
    top = maxlen + 1
    words = np.arange(1 << length, dtype=np.int64)
    # slicing the identity word yields the positions of vertical n below `length`
    positions = {n: slice_word(range(length), n) for n in range(top + 1)}

    def same(ok: bool) -> np.ndarray:
        return np.full(words.shape, ok)

    size = len(positions[0])
    tally.check_many(same(size <= length), lambda w: (f"b/{_w(_bits(w, length))}", length, size))
    for n in range(min(top, length + 1) + 1):
        size = len(positions[n])
        bound = length + 1 - n
        tally.check_many(
            same(size <= bound), lambda w, n=n, s=size, b=bound: (f"c/{_w(_bits(w, length))}/{n}", b, s)
        )
    if length < maxlen:
        # immediate extensions suffice, prefixes being transitive
        longer = {n: slice_word(range(length + 1), n) for n in range(top + 1)}
        for n in range(top + 1):
            short = _gather(words, positions[n])
            mask = (1 << len(positions[n])) - 1
            for bit in (0, 1):
                extended = _gather(words | (bit << length), longer[n])
                ok = (extended & mask) == short
                if len(longer[n]) < len(positions[n]):
                    ok = same(False)

                def describe(w: int, n: int = n, bit: int = bit) -> t.Tuple[str, str, str]:
                    u = _bits(w, length)
                    a, b = slice_word(u, n), slice_word(u + (bit,), n)
                    return f"a/{_w(u)}/{bit}/{n}", _w(a), _w(b)

                tally.check_many(ok, describe)
    return tally


@suite("lemma5.2")
def _lemma52(bounds: t.Dict[str, int], jobs: int) -> Tally:
    maxlen = bounds["maxlen"]
    return _sweep(_lemma52_worker, [(length,) for length in range(maxlen + 1)], jobs, maxlen)


# --- placed words ---------------------------------------------------------------


def _decode_worker(length: int, prefix: t.Tuple[int, ...]) -> Tally:
    tally = Tally()
    for u in _words(length, prefix):
        fast = decode_placed(u)
        try:
            oracle = placed_decode_oracle(u)
        except NonUniqueWitness as e:
            tally.check(False, f"unique/{_w(u)}", "one witness", str(e))
            continue
        tally.branches["placed" if fast is not None else "not_placed"] += 1
        tally.check(
            fast == oracle,
            f"decode/{_w(u)}",
            None if oracle is None else oracle.to_json(),
            None if fast is None else fast.to_json(),
        )
    return tally


@suite("decode-equiv")
def _decode_equiv(bounds: t.Dict[str, int], jobs: int) -> Tally:
    return _sweep(_decode_worker, _word_tasks(bounds["maxlen"], 1), jobs)


def _lemma56_worker(length: int, prefix: t.Tuple[int, ...]) -> Tally:
    tally = Tally()
    for u in _words(length, prefix):
        info = decode_placed(u)
        if info is None:
            continue
        key = _w(u)
        tally.check(info.sigma < len(u), f"a/sigma/{key}", f"< {len(u)}", info.sigma)
        partials = sigma_offsets(info.witness).partials
        for k, entry in enumerate(info.witness):
            end = pair(partials[k + 1], 0)
            ones = [q for q in range(min(end, len(u))) if u[q] == 1]
            expected = pair(partials[k], entry + 1)
            got = ones[-1] if ones else None
            tally.check(got == expected, f"a/last/{key}/{k}", expected, got)
    return tally


@suite("lemma5.6")
def _lemma56(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = _sweep(_lemma56_worker, _word_tasks(bounds["maxlen"], 1), jobs)
    depth = bounds["depth"]
    for node in pointsets.nodes_up_to(2, 3):
        sigma = sigma_offsets(node).sigma_t
        for x in pointsets.binary_corpus(random_count=bounds["random"]):
            if not kt_member(node, x):
                continue
            tally.branches["b_members"] += 1
            bits = ep_prefix(x, depth)
            for p in range(sigma + 1, depth + 1):
                info = placed_decode(bits[:p])
                if info is None:
                    continue
                tally.check(
                    is_prefix(node, info.witness),
                    f"b/{list(node)}/{format_point(x)}/{p}",
                    list(node),
                    list(info.witness),
                )
    return tally


def _mirror_worker(length: int, prefix: t.Tuple[int, ...]) -> t.List[t.Tuple[int, str, str]]:
    out = []
    for u in _words(length, prefix):
        info = decode_placed(u)
        if info is not None:
            out.append((info.eps, _w(u), _w(mirror(u))))
    return out


@suite("lemma5.8")
def _lemma58(bounds: t.Dict[str, int], jobs: int) -> Tally:
    """
    Pairs {u, mirror(u)} of placed words with the same digit never meet,
    found in one pass by recording which u claimed each word.
    """
    tasks = _word_tasks(bounds["maxlen"], 1)
    results = Parallel(n_jobs=jobs)(delayed(_mirror_worker)(*task) for task in tasks)
    tally = Tally()
    owners: t.Dict[t.Tuple[int, str], str] = {}
    for chunk in results:
        for eps, u, m in sorted(chunk):
            tally.branches[f"eps{eps}"] += 1
            for word in sorted({u, m}):
                owner = owners.setdefault((eps, word), u)
                tally.check(owner == u, f"{eps}/{word}", owner, u)
    return tally


def _lemma59_worker(length: int, prefix: t.Tuple[int, ...]) -> Tally:
    tally = Tally()
    for u in _words(length, prefix):
        info = decode_placed(u)
        if info is None:
            continue
        key = _w(u)
        level = info.level
        m = mirror(u)
        p, pm = pred(u), pred(m)
        q, qm = pred_l(u, level), pred_l(m, level)
        lp, lpm, lq, lqm = _level(p), _level(pm), _level(q), _level(qm)
        # (a)
        if lp == level:
            tally.check(placed_decode(p).eps == info.eps, f"a/eps/{key}", info.eps, placed_decode(p).eps)
            if lpm == level:
                tally.check(pm == mirror(p), f"a/mirror/{key}", _w(mirror(p)), _w(pm))
        # (b)
        tally.check((lq == level) == (lqm == level), f"b/iff/{key}", lq == level, lqm == level)
        if lq == level:
            tally.check(placed_decode(q).eps == info.eps, f"b/eps/{key}", info.eps, placed_decode(q).eps)
            tally.check(qm == mirror(q), f"b/mirror/{key}", _w(mirror(q)), _w(qm))
        # (c) and (d)
        if lp < level or lpm < level:
            tally.branches["lt"] += 1
            tally.check(
                p == q == pm == qm and lp == level - 1,
                f"c/{key}",
                [_w(p), level - 1],
                [_w(p), _w(q), _w(pm), _w(qm), lp],
            )
        elif lp > level or lpm > level:
            tally.branches["gt"] += 1
            tally.check(
                (lp > level) != (lpm > level) and level in (lp, lpm),
                f"d/exactly-one/{key}",
                level,
                [lp, lpm],
            )
            if lp > level and lpm == level:
                tally.check(q == mirror(pm), f"d/identity/{key}", _w(mirror(pm)), _w(q))
                tally.check(placed_decode(q).eps == info.eps, f"d/eps/{key}", info.eps, placed_decode(q).eps)
            elif lpm > level and lp == level:
                mirror_eps = 1 - info.eps
                tally.check(q == p, f"d/identity/{key}", _w(p), _w(q))
                tally.check(
                    placed_decode(qm).eps == mirror_eps,
                    f"d/eps/{key}",
                    mirror_eps,
                    placed_decode(qm).eps,
                )
        else:
            tally.branches["eq"] += 1
        # (e)
        tally.check(lq in (level - 1, level), f"e/{key}", [level - 1, level], lq)
    return tally


@suite("lemma5.9")
def _lemma59(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = _sweep(_lemma59_worker, _word_tasks(bounds["maxlen"], 2), jobs)
    # "001111" is the shortest word reaching the (>l) branch
    if bounds["maxlen"] >= 6:
        for branch in ("lt", "eq", "gt"):
            tally.check(tally.branches[branch] > 0, f"branch/{branch}", "> 0", tally.branches[branch])
    return tally


# --- K_t and its children -----------------------------------------------------


def _lemma54a_worker(start: int, stop: int, nmax: int, entries: int, random_count: int) -> Tally:
    tally = Tally()
    nodes = pointsets.nodes_up_to(2, entries)
    for x in pointsets.binary_corpus(random_count=random_count)[start:stop]:
        key = format_point(x)
        for node in nodes:
            hits = {0: [], 1: []}
            for n in range(nmax + 1):
                member = ktn_member(node, n, x)
                direct = ktn_member_direct(node, n, x)
                tally.check(member == direct, f"direct/{list(node)}/{n}/{key}", direct, member)
                if member:
                    hits[dense_words(n).w[0]].append(n)
            for eps, found in hits.items():
                tally.check(len(found) <= 1, f"disjoint/{list(node)}/{eps}/{key}", "<= 1", found)
    return tally


@suite("lemma5.4a")
def _lemma54a(bounds: t.Dict[str, int], jobs: int) -> Tally:
    nmax, entries = bounds["nmax"], bounds["entries"]
    size = len(pointsets.binary_corpus(random_count=bounds["random"]))
    tally = _sweep(_lemma54a_worker, _corpus_tasks(size), jobs, nmax, entries, bounds["random"])
    for node in pointsets.nodes_up_to(2, entries):
        free = sigma_offsets(node).free_vertical
        for n in range(nmax + 1):
            for eps in (0, 1):
                point = canonical_point(node + (n,), eps)
                last = ep_last_in_vertical(point, free, 1)
                tally.check(last == n + 1, f"last-one/{list(node)}/{n}/{eps}", n + 1, last)
                tally.check(
                    ktn_member(node, n, point),
                    f"canonical/{list(node)}/{n}/{eps}",
                    True,
                    False,
                )
    return tally


@suite("lemma5.4b")
def _lemma54b(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for node in pointsets.nodes_up_to(2, bounds["entries"]):
        for eps in (0, 1):
            for length in range(bounds["maxlen"] + 1):
                for u in _words(length):
                    case = f"{list(node)}/{eps}/{_w(u)}"
                    try:
                        n = find_ktn_in_cylinder(node, eps, u)
                    except WitnessCheckFailed as e:
                        tally.check(False, case, "K_tn inside the cylinder", str(e))
                        continue
                    tally.check(
                        is_prefix((eps,) + u, dense_words(n).w), case, _w((eps,) + u), _w(dense_words(n).w)
                    )
    return tally


@suite("lemma5.5d")
def _lemma55d(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for node in pointsets.nodes_up_to(3, bounds["entries"]):
        x = canonical_point(node, 0)
        bits = ep_prefix(x, sigma_offsets(node).sigma_t + 2)
        witnesses = set()
        for p in range(1, len(bits) + 1):
            info = placed_decode(bits[:p])
            if info is not None:
                witnesses.add(info.witness)
        expected = {node[:k] for k in range(len(node) + 1)}
        tally.check(
            expected <= witnesses,
            f"{list(node)}",
            sorted(list(w) for w in expected),
            sorted(list(w) for w in witnesses),
        )
        tally.branches["other_witnesses"] += len(witnesses - expected)
    return tally


def _lemma55ab_worker(node: t.Tuple[int, ...], htlen: int) -> Tally:
    tally = Tally()
    sigma = sigma_offsets(node).sigma_t
    for length in range(htlen + 1):
        for u in _words(length):
            case = f"ht/{list(node)}/{_w(u)}"
            consistent = kt_prefix_consistent(node, u) and (len(u) <= sigma or u[sigma] == 0)
            try:
                x = density_witness_ht(node, u)
            except InconsistentPrefix:
                tally.branches["rejected"] += 1
                tally.check(not consistent, case, "a witness", "rejected")
                continue
            except WitnessCheckFailed as e:
                tally.check(False, case, "a point of H_t", str(e))
                continue
            tally.branches["built"] += 1
            tally.check(
                consistent and h_member(node, x) and ep_prefix(x, len(u)) == u,
                case,
                "a point of H_t extending u",
                format_point(x),
            )
    return tally


@suite("lemma5.5ab")
def _lemma55ab(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for length in range(bounds["maxlen"] + 1):
        for u in _words(length):
            x = density_witness_x3(u)
            answer = x3_member(x)
            tally.check(
                answer.verdict is Verdict.IN and verify_certificate(x, answer),
                f"x3/{_w(u)}",
                "IN",
                answer.verdict.value,
            )
    tasks = [(node, bounds["htlen"]) for node in pointsets.nodes_up_to(2, bounds["entries"])]
    return tally.merge(_sweep(_lemma55ab_worker, tasks, jobs))


def _sample_points(entries: int, random_count: int) -> t.List[EpPoint]:
    points = list(pointsets.binary_corpus(random_count=random_count))
    for node in pointsets.nodes_up_to(2, entries):
        witness = density_witness_ht(node, ())
        points.extend((witness, phi_t(node, witness)))
    return points


def _lemma55c_worker(points: t.List[EpPoint]) -> Tally:
    tally = Tally()
    for x in points:
        for node in witness_chain(x).nodes:
            if not h_member(node, x):
                continue
            tally.branches["edges"] += 1
            y = phi_t(node, x)
            key = f"{list(node)}/{format_point(x)}"
            found = a3_is_edge(x, y)
            tally.check(found == node, f"edge/{key}", list(node), None if found is None else list(found))
            left, right = x3_member(x), x3_member(y)
            tally.check(
                left.verdict is Verdict.IN and right.verdict is Verdict.IN,
                f"x3/{key}",
                ["IN", "IN"],
                [left.verdict.value, right.verdict.value],
            )
    return tally


@suite("lemma5.5c")
def _lemma55c(bounds: t.Dict[str, int], jobs: int) -> Tally:
    points = _sample_points(bounds["entries"], bounds["random"])
    tasks = [(points[start:stop],) for start, stop in _corpus_tasks(len(points))]
    return _sweep(_lemma55c_worker, tasks, jobs)


def _lemma510_worker(points: t.List[EpPoint], entries: int) -> Tally:
    tally = Tally()
    nodes = pointsets.nodes_up_to(2, entries)
    for x in points:
        key = format_point(x)
        owners = []
        for node in nodes:
            tilde = h_tilde_member(node, x)
            if tilde or phi_t_image_member(node, x):
                owners.append(list(node))
            if h_member(node, x):
                tally.branches["h"] += 1
                tally.check(tilde, f"b/{list(node)}/{key}", True, tilde)
            if tilde:
                tally.branches["h_tilde"] += 1
                image = h_tilde_member(node, phi_t(node, x))
                tally.check(not image, f"image/{list(node)}/{key}", False, image)
        tally.check(len(owners) <= 1, f"a/{key}", "<= 1 owner", owners)
    return tally


@suite("lemma5.10")
def _lemma510(bounds: t.Dict[str, int], jobs: int) -> Tally:
    points = _sample_points(bounds["entries"], bounds["random"])
    tasks = [(points[start:stop], bounds["entries"]) for start, stop in _corpus_tasks(len(points))]
    return _sweep(_lemma510_worker, tasks, jobs)


@suite("kt-partition")
def _kt_partition(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    qmax = bounds["qmax"]
    verdicts = {}
    for x in pointsets.binary_corpus(random_count=bounds["random"]):
        verdicts[x] = x3_member(x).verdict
        tally.branches[verdicts[x].value.lower()] += 1
    for q in range(qmax + 1):
        for x, verdict in verdicts.items():
            if verdict is not Verdict.IN:
                continue
            cells = [kt_partition_member(q, p, x) for p in range(2 * q + 3)]
            chosen = [p for p, member in enumerate(cells) if member]
            tally.check(
                len(chosen) == 1 and None not in cells,
                f"cover/{q}/{format_point(x)}",
                "one cell",
                cells,
            )
        for i in range(q + 1):
            node = prime_decode(i, DEFAULT_CODER_BOUND)
            witness = density_witness_ht(node, ())
            for eps, point in enumerate((witness, phi_t(node, witness))):
                member = kt_partition_member(q, 2 * i + eps, point)
                tally.check(member is True, f"family/{q}/{i}/{eps}", True, member)
    return tally


# --- the A2 and S3 partitions ---------------------------------------------------


@suite("def4.2-a2")
def _def42_a2(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for i in range(bounds["imax"] + 1):
        points = (a2_family_point(i, 0), a2_family_point(i, 1))
        for q in range(bounds["qmax"] + 1):
            if q >= i:
                tally.branches["b"] += 1
                for eps, x in enumerate(points):
                    member = a2_partition_member(q, 2 * i + eps, x)
                    tally.check(member, f"b/{i}/{q}/{eps}", True, member)
            else:
                tally.branches["a"] += 1
                cells = [partition_cell(PartitionSpec(PartitionKind.A2, q), x) for x in points]
                tally.check(cells[0] == cells[1], f"a/{i}/{q}", "one cell", cells)
    return tally


@suite("def4.8c-a2")
def _def48c_a2(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    qmax = bounds["qmax"]
    for i in range(bounds["imax"] + 1):
        b = prime_decode(i, DEFAULT_CODER_BOUND)
        for eps in (0, 1):
            point = a2_family_point(i, eps)
            words = [a2_cell_word(q, i, eps) for q in range(i, qmax + 1)]
            depths = [len(word) - len(b) for word in words]
            key = f"{i}/{eps}"
            tally.check(
                all(is_prefix(a, c) for a, c in zip(words, words[1:])),
                f"nested/{key}",
                True,
                False,
            )
            tally.check(
                all(ep_prefix(point, len(word)) == word for word in words),
                f"contains/{key}",
                True,
                False,
            )
            tally.check(depths[-1] > depths[0], f"grows/{key}", f"> {depths[0]}", depths[-1])
            # a point leaving C at the first free position drops out by qmax
            other = ep_with(point, len(words[0]), 2 * len(b) + 1 - eps)
            gone = not a2_partition_member(qmax, 2 * i + eps, other)
            tally.check(gone, f"collapse/{key}", True, gone)
    return tally


@suite("def4.2-s3")
def _def42_s3(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    tails = pointsets.binary_tails()
    for i in range(bounds["imax"] + 1):
        points = [s3_point(i, eps, tail) for eps in (0, 1) for tail in tails]
        for q in range(bounds["qmax"] + 1):
            if q >= i:
                tally.branches["b"] += 1
                for eps in (0, 1):
                    for tail in tails:
                        member = s3_partition_member(q, 2 * i + eps, s3_point(i, eps, tail))
                        tally.check(member, f"b/{i}/{q}/{eps}/{format_point(tail)}", True, member)
            else:
                tally.branches["a"] += 1
                cells = sorted({partition_cell(PartitionSpec(PartitionKind.S3, q), x) for x in points})
                tally.check(len(cells) == 1, f"a/{i}/{q}", "one cell", cells)
        ok = suitable_for_family(theta(i), tails)
        tally.check(ok, f"meet/{i}", True, ok)
    # on finite words: a word lies in at most one S-set
    sets = [(i, eps, theta(i) + (eps,)) for i in range(bounds["imax"] + 1) for eps in (0, 1)]
    for length in range(bounds["maxlen"] + 1):
        for word in product((0, 1, 2), repeat=length):
            inside = [
                (i, eps)
                for i, eps, head in sets
                if is_prefix(head, word) and 2 not in word[len(head):]
            ]
            tally.check(len(inside) <= 1, f"disjoint/{format_word(word, 3)}", "<= 1", inside)
    return tally


@suite("def4.8c-s3")
def _def48c_s3(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    qmax = bounds["qmax"]
    for i in range(bounds["imax"] + 1):
        for eps in (0, 1):
            frees = [len(theta(q)) - len(theta(i)) for q in range(i, qmax + 1)]
            key = f"{i}/{eps}"
            tally.check(
                all(a <= b for a, b in zip(frees, frees[1:])) and frees[-1] > frees[0],
                f"grows/{key}",
                "non-decreasing and growing",
                [frees[0], frees[-1]],
            )
            head = theta(i) + (eps,)
            stray = EpPoint(head + (0,) * frees[0] + (2,), (0,), 3)
            inside = s3_partition_member(i, 2 * i + eps, stray)
            gone = not s3_partition_member(qmax, 2 * i + eps, stray)
            tally.check(inside and gone, f"collapse/{key}", [True, True], [inside, gone])
    return tally


@suite("partition-cover")
def _partition_cover(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for q in range(bounds["qmax"] + 1):
        for x in pointsets.omega_corpus(random_count=bounds["random"]):
            cells = [p for p in range(2 * q + 4) if a2_partition_member(q, p, x)]
            tally.check(len(cells) == 1, f"a2/{q}/{format_point(x)}", "one cell", cells)
        for x in pointsets.ternary_corpus(random_count=bounds["random"]):
            cells = [p for p in range(2 * q + 4) if s3_partition_member(q, p, x)]
            tally.check(len(cells) == 1, f"s3/{q}/{format_point(x)}", "one cell", cells)
    return tally


@suite("phi-tail")
def _phi_tail(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    depth = bounds["depth"]
    for i in range(bounds["imax"] + 1):
        for eps in (0, 1):
            x = a2_family_point(i, eps)
            trace = partition_trace(PartitionKind.A2, x, depth)
            settled = trace[i:]
            tally.check(
                all(p == 2 * i + eps for p in settled), f"settles/{i}/{eps}", 2 * i + eps, list(settled)
            )
            # Phi_prefix reads fewer than `depth` symbols, all inside the trace
            gamma = EpPoint(trace, (trace[-1],), OMEGA)
            got = Phi_prefix(gamma, depth)
            traced = phi_map(trace)[:depth]
            tally.check(got == traced, f"trace/{i}/{eps}", format_word(traced, 3), format_word(got, 3))
            expected = (phi_map(trace[:i]) + (2,) + (eps,) * depth)[:depth]
            tally.check(got == expected, f"tail/{i}/{eps}", format_word(expected, 3), format_word(got, 3))
    return tally


# --- G0 -----------------------------------------------------------------------


@suite("g0-tree")
def _g0_tree(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for level in range(1, bounds["N"] + 1):
        graph = g0_level_graph(level)
        check = g0_tree_check(graph)
        tally.branches[f"edges_{level:02d}"] = check.edges
        tally.check(check.edges == 2**level - 1, f"count/{level}", 2**level - 1, check.edges)
        tally.check(check.acyclic and check.connected, f"tree/{level}", [True, True], [check.acyclic, check.connected])
        for a, b in graph.edges:
            n = g0_is_edge(ep_from_word(tuple(int(c) for c in a)), ep_from_word(tuple(int(c) for c in b)))
            tally.check(n is not None, f"edge/{level}/{a}/{b}", "an edge", n)
    return tally


# --- discreteness scans -------------------------------------------------------------


def _witness(key: str, **fields: t.Any) -> t.Dict[str, t.Any]:
    return {"key": key, **fields}


@suite("scan-g0")
def _scan_g0(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    zero = EpPoint((), (0,))
    for u in _words(bounds["depth"]):
        n = len(u)
        while not is_prefix(u, dense_words(n).s):
            n += 1
        edge = g0_edge(n, zero)
        inside = is_prefix(u, ep_prefix(edge.left, len(u))) and is_prefix(u, ep_prefix(edge.right, len(u)))
        found = g0_is_edge(edge.left, edge.right)
        tally.check(inside and found == n, f"{_w(u)}", n, found)
        tally.witnesses.append(_witness(_w(u), cylinder=_w(u), edge=edge.to_json()))
    return tally


@suite("scan-a1")
def _scan_a1(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    zero = EpPoint((), (0,))
    for k in range(bounds["depth"] + 1):
        u = (0,) * k
        i = (k + 1) // 2
        edge = a1_edge(i, zero, zero)
        inside = ep_prefix(edge.left, k) == u and ep_prefix(edge.right, k) == u
        tally.check(inside and a1_is_edge(edge.left, edge.right) == i, f"{k:02d}", i, None)
        tally.witnesses.append(_witness(f"{k:02d}", cylinder=_w(u), edge=edge.to_json()))
    return tally


@suite("scan-a1rect")
def _scan_a1rect(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for k in range(bounds["depth"] + 1):
        u = (0,) * k
        left = right = EpPoint(u, (1,))
        inside = ep_prefix(left, k) == u and ep_prefix(right, k) == u
        tally.check(inside and a1rect_is_edge(left, right) == k, f"{k:02d}", k, None)
        tally.witnesses.append(
            _witness(f"{k:02d}", cylinder=_w(u), edge={"left": format_point(left), "right": format_point(right), "parameter": k})
        )
    return tally


@suite("scan-a2")
def _scan_a2(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for u in product(range(bounds["symbols"]), repeat=bounds["depth"]):
        left, right = a2_point(u, 0), a2_point(u, 1)
        found = a2_is_edge(left, right)
        key = format_word(u, OMEGA)
        inside = ep_prefix(left, len(u)) == u and ep_prefix(right, len(u)) == u
        tally.check(inside and found == u, key, list(u), None if found is None else list(found))
        tally.witnesses.append(
            _witness(key, cylinder=key, edge={"left": format_point(left), "right": format_point(right), "parameter": list(u)})
        )
    return tally


@suite("scan-a3rel")
def _scan_a3rel(bounds: t.Dict[str, int], jobs: int) -> Tally:
    tally = Tally()
    for node in pointsets.nodes_up_to(2, 2):
        for eps in (0, 1):
            for length in range(bounds["depth"] + 1):
                for u in _words(length):
                    key = f"{list(node)}/{eps}/{_w(u)}"
                    try:
                        n = find_ktn_in_cylinder(node, eps, u)
                    except WitnessCheckFailed as e:
                        tally.check(False, key, "K_tn inside the cylinder", str(e))
                        continue
                    tally.check(True, key, n, n)
                    tally.witnesses.append(_witness(key, t=list(node), eps=eps, u=_w(u), n=n))
    return tally
