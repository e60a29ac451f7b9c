"""
The fixed point corpus behind every sampled suite.

Order is generation order after dropping duplicates, so a corpus built twice
with the same options is identical.
"""
import logging
import typing as t
from functools import lru_cache
from itertools import product

import numpy as np

from borelwit.families import (
    a1_edge,
    a2_family_point,
    g0_edge,
    s3_point,
    theta,
)
from borelwit.ktree import canonical_point, density_witness_ht, density_witness_x3, phi_t
from borelwit.options import corpus_options
from borelwit.points import EpPoint
from borelwit.seqcore import OMEGA, Bits

logger = logging.getLogger(__name__)


def nodes_up_to(length: int, entries: int) -> t.List[Bits]:
    """All nodes of length <= `length` with entries <= `entries`, shortest first."""
    nodes: t.List[Bits] = []
    for size in range(length + 1):
        nodes.extend(product(range(entries + 1), repeat=size))
    return nodes


def _dedupe(points: t.Iterable[EpPoint]) -> t.Tuple[EpPoint, ...]:
    seen = set()
    out = []
    for point in points:
        if point not in seen:
            seen.add(point)
            out.append(point)
    return tuple(out)


def random_points(
    rng: np.random.Generator,
    count: int,
    max_preperiod: int,
    max_period: int,
    symbols: int,
    alphabet: t.Optional[int],
    exclude: t.Iterable[EpPoint] = (),
) -> t.List[EpPoint]:
    """Draw until `count` distinct points outside `exclude` are found."""
    seen = set(exclude)
    points: t.List[EpPoint] = []
    attempts = 0
    limit = 50 * count + 100
    while len(points) < count and attempts < limit:
        attempts += 1
        pre = rng.integers(0, symbols, size=int(rng.integers(0, max_preperiod + 1)))
        per = rng.integers(0, symbols, size=int(rng.integers(1, max_period + 1)))
        point = EpPoint(tuple(int(s) for s in pre), tuple(int(s) for s in per), alphabet)
        if point in seen:
            continue
        seen.add(point)
        points.append(point)
    if len(points) < count:
        logger.warning("only %d distinct random points after %d draws", len(points), attempts)
    return points


@lru_cache(maxsize=4)
def _binary_corpus(
    seed: int, random_count: int, max_preperiod: int, max_period: int, entry_bound: int
) -> t.Tuple[EpPoint, ...]:
    points: t.List[EpPoint] = []
    for node in nodes_up_to(2, entry_bound):
        points.append(canonical_point(node, 0))
        points.append(canonical_point(node, 1))
    for size in range(4):
        for u in product((0, 1), repeat=size):
            points.append(density_witness_x3(u))
    for node in nodes_up_to(2, 2):
        witness = density_witness_ht(node, ())
        points.append(witness)
        points.append(phi_t(node, witness))
    zero = EpPoint((), (0,))
    one = EpPoint((), (1,))
    for n in range(7):
        edge = g0_edge(n, zero)
        points.extend((edge.left, edge.right))
    for i in range(4):
        edge = a1_edge(i, zero, one)
        points.extend((edge.left, edge.right))
    rng = np.random.default_rng(seed)
    structured = _dedupe(points)
    corpus = structured + tuple(
        random_points(rng, random_count, max_preperiod, max_period, 2, 2, structured)
    )
    logger.info("binary corpus: %d points (seed %d)", len(corpus), seed)
    return corpus


def binary_corpus(**overrides: t.Any) -> t.Tuple[EpPoint, ...]:
    options = {**corpus_options(), **overrides}
    return _binary_corpus(
        options["seed"],
        options["random_count"],
        options["max_preperiod"],
        options["max_period"],
        options["entry_bound"],
    )


@lru_cache(maxsize=4)
def _omega_corpus(seed: int, random_count: int) -> t.Tuple[EpPoint, ...]:
    points: t.List[EpPoint] = []
    for i in range(11):
        points.append(a2_family_point(i, 0))
        points.append(a2_family_point(i, 1))
    rng = np.random.default_rng(seed + 1)
    structured = _dedupe(points)
    return structured + tuple(random_points(rng, random_count, 6, 3, 20, OMEGA, structured))


def omega_corpus(**overrides: t.Any) -> t.Tuple[EpPoint, ...]:
    options = {**corpus_options(), **overrides}
    return _omega_corpus(options["seed"], options["random_count"])


@lru_cache(maxsize=4)
def _ternary_corpus(seed: int, random_count: int) -> t.Tuple[EpPoint, ...]:
    points: t.List[EpPoint] = []
    tails = binary_tails()
    for i in range(9):
        for eps in (0, 1):
            points.extend(s3_point(i, eps, tail) for tail in tails)
        points.append(EpPoint(theta(i), (2,), 3))
    rng = np.random.default_rng(seed + 2)
    structured = _dedupe(points)
    return structured + tuple(random_points(rng, random_count, 6, 3, 3, 3, structured))


def ternary_corpus(**overrides: t.Any) -> t.Tuple[EpPoint, ...]:
    options = {**corpus_options(), **overrides}
    return _ternary_corpus(options["seed"], options["random_count"])


def binary_tails() -> t.Tuple[EpPoint, ...]:
    """A few binary tails for building points of the S-sets."""
    return (
        EpPoint((), (0,)),
        EpPoint((), (1,)),
        EpPoint((1,), (0,)),
        EpPoint((0,), (1,)),
        EpPoint((), (0, 1)),
        EpPoint((1, 1, 0), (1, 0, 0)),
    )
