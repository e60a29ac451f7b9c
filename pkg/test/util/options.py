import typing as t


def quick_corpus_options() -> t.Dict[str, t.Any]:
    return {
        "random_count": 40,
        "max_preperiod": 6,
        "max_period": 3,
    }


def quick_suite_bounds() -> t.Dict[str, t.Dict[str, int]]:
    """Bounds small enough for the default test run."""
    random = quick_corpus_options()["random_count"]
    return {
        "points": {"verticals": 6, "depth": 40, "random": random},
        "lemma5.6": {"maxlen": 10, "depth": 20, "random": random},
        "lemma5.4a": {"nmax": 6, "entries": 1, "random": random},
        "lemma5.5ab": {"maxlen": 6, "htlen": 5, "entries": 1},
        "lemma5.5c": {"entries": 1, "random": random},
        "lemma5.10": {"entries": 2, "random": random},
        "kt-partition": {"qmax": 3, "random": random},
        "partition-cover": {"qmax": 6, "random": random},
        "seqcore": {"qmax": 5000, "diag": 60, "dense": 500, "words": 8, "coder": 5000},
        "lemma5.2": {"maxlen": 10},
        "decode-equiv": {"maxlen": 12},
        "lemma5.8": {"maxlen": 10},
        "lemma5.9": {"maxlen": 10},
        "lemma5.4b": {"maxlen": 5, "entries": 1},
        "lemma5.5d": {"entries": 2},
        "def4.2-a2": {"imax": 4, "qmax": 4},
        "def4.8c-a2": {"imax": 4, "qmax": 16},
        "def4.2-s3": {"imax": 4, "qmax": 4, "maxlen": 6},
        "def4.8c-s3": {"imax": 4, "qmax": 16},
        "phi-tail": {"imax": 4, "depth": 16},
        "g0-tree": {"N": 10},
        "scan-g0": {"depth": 6},
        "scan-a1": {"depth": 8},
        "scan-a1rect": {"depth": 8},
        "scan-a2": {"depth": 3, "symbols": 2},
        "scan-a3rel": {"depth": 3},
    }


def release_suite_bounds() -> t.Dict[str, t.Dict[str, int]]:
    """The release bounds, run only with -m slow."""
    return {
        "lemma5.2": {"maxlen": 20},
        "decode-equiv": {"maxlen": 21},
        "lemma5.8": {"maxlen": 16},
        "lemma5.9": {"maxlen": 21},
        "g0-tree": {"N": 12},
    }
