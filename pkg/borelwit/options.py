"""
Default bounds and hard caps for every verification suite.

Defaults keep a casual `borelwit verify` run in the seconds range. The caps
are the release bounds; asking for more raises `BoundTooLarge`.
"""
import os
import typing as t

from borelwit.errors import BoundTooLarge, UnknownBound

# Coder bound used wherever b(i) is needed and the caller gives none
DEFAULT_CODER_BOUND = 10**6

# Cap on the horizon of ep_diff_positions in edge tests
DEFAULT_DIFF_CAP = 10**6

# Depth limit of the placed-prefix scan behind X3 OUT certificates
DEFAULT_X3_DEPTH = 20000

CORPUS_SEED = 20240101

# Seeded random points in the corpus, beyond the structured ones
RANDOM_POINTS = 1000


def corpus_options() -> t.Dict[str, t.Any]:
    return {
        "seed": CORPUS_SEED,
        "random_count": RANDOM_POINTS,
        "max_preperiod": 8,
        "max_period": 4,
        "entry_bound": 4,
    }


def suite_defaults() -> t.Dict[str, t.Dict[str, int]]:
    return {
        "seqcore": {"qmax": 100000, "diag": 300, "dense": 10000, "words": 12, "coder": 100000},
        "points": {"verticals": 10, "depth": 100, "random": RANDOM_POINTS},
        "lemma5.2": {"maxlen": 12},
        "decode-equiv": {"maxlen": 16},
        "lemma5.6": {"maxlen": 14, "depth": 30, "random": RANDOM_POINTS},
        "lemma5.8": {"maxlen": 12},
        "lemma5.9": {"maxlen": 14},
        "lemma5.4a": {"nmax": 8, "entries": 2, "random": RANDOM_POINTS},
        "lemma5.4b": {"maxlen": 6, "entries": 2},
        "lemma5.5ab": {"maxlen": 10, "htlen": 8, "entries": 2},
        "lemma5.5c": {"entries": 2, "random": RANDOM_POINTS},
        "lemma5.5d": {"entries": 3},
        "lemma5.10": {"entries": 2, "random": RANDOM_POINTS},
        "def4.2-a2": {"imax": 8, "qmax": 8},
        "def4.8c-a2": {"imax": 8, "qmax": 64},
        "def4.2-s3": {"imax": 8, "qmax": 8, "maxlen": 8},
        "def4.8c-s3": {"imax": 8, "qmax": 40},
        "partition-cover": {"qmax": 8, "random": RANDOM_POINTS},
        "phi-tail": {"imax": 6, "depth": 30},
        "g0-tree": {"N": 12},
        "kt-partition": {"qmax": 4, "random": RANDOM_POINTS},
        "scan-g0": {"depth": 10},
        "scan-a1": {"depth": 10},
        "scan-a1rect": {"depth": 10},
        "scan-a2": {"depth": 6, "symbols": 2},
        "scan-a3rel": {"depth": 6},
    }


def suite_caps() -> t.Dict[str, t.Dict[str, int]]:
    return {
        "seqcore": {"qmax": 10**6, "diag": 1000, "dense": 10**4, "words": 12, "coder": 10**6},
        "points": {"verticals": 10, "depth": 100, "random": RANDOM_POINTS},
        "lemma5.2": {"maxlen": 20},
        "decode-equiv": {"maxlen": 21},
        "lemma5.6": {"maxlen": 21, "depth": 30, "random": RANDOM_POINTS},
        "lemma5.8": {"maxlen": 16},
        "lemma5.9": {"maxlen": 21},
        "lemma5.4a": {"nmax": 8, "entries": 4, "random": RANDOM_POINTS},
        "lemma5.4b": {"maxlen": 8, "entries": 3},
        "lemma5.5ab": {"maxlen": 12, "htlen": 10, "entries": 3},
        "lemma5.5c": {"entries": 4, "random": RANDOM_POINTS},
        "lemma5.5d": {"entries": 3},
        "lemma5.10": {"entries": 3, "random": RANDOM_POINTS},
        "def4.2-a2": {"imax": 8, "qmax": 8},
        "def4.8c-a2": {"imax": 8, "qmax": 200},
        "def4.2-s3": {"imax": 8, "qmax": 8, "maxlen": 12},
        "def4.8c-s3": {"imax": 8, "qmax": 200},
        "partition-cover": {"qmax": 8, "random": RANDOM_POINTS},
        "phi-tail": {"imax": 6, "depth": 30},
        "g0-tree": {"N": 16},
        "kt-partition": {"qmax": 8, "random": RANDOM_POINTS},
        "scan-g0": {"depth": 12},
        "scan-a1": {"depth": 12},
        "scan-a1rect": {"depth": 12},
        "scan-a2": {"depth": 12, "symbols": 3},
        "scan-a3rel": {"depth": 8},
    }


def resolve_bounds(suite: str, overrides: t.Optional[t.Mapping[str, int]] = None) -> t.Dict[str, int]:
    """Merge `overrides` into the suite defaults, enforcing the caps."""
    bounds = dict(suite_defaults()[suite])
    caps = suite_caps()[suite]
    for key, value in (overrides or {}).items():
        if key not in bounds:
            raise UnknownBound(suite, key, sorted(bounds))
        if value > caps[key]:
            raise BoundTooLarge(suite, key, value, caps[key])
        bounds[key] = value
    return bounds


def default_jobs() -> int:
    return int(os.environ.get("BORELWIT_JOBS", "1"))
