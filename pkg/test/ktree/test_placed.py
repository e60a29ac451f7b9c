import logging
from itertools import product

import pytest

from borelwit.errors import NotPlaced
from borelwit.ktree import (
    compositions,
    decode_placed,
    eps_of,
    is_placed,
    level_of,
    mirror,
    placed_decode,
    placed_decode_oracle,
    pred,
    pred_l,
)
from borelwit.seqcore import format_word, parse_word

logger = logging.getLogger(__name__)


def w(text: str):
    return parse_word(text)


def test_placed_decode_examples():
    info = placed_decode(w("0"))
    assert (info.witness, info.level, info.sigma, info.eps) == ((), 0, 0, 0)
    info = placed_decode(w("0010"))
    assert (info.witness, info.level, info.sigma, info.eps) == ((0,), 1, 3, 0)
    assert placed_decode(w("00")) is None


def test_placed_decode_oracle_examples():
    info = placed_decode_oracle(w("001"))
    assert (info.witness, info.level, info.sigma, info.eps) == ((), 0, 0, 0)
    info = placed_decode_oracle(w("0011"))
    assert (info.witness, info.level, info.sigma, info.eps) == ((0,), 1, 3, 1)
    assert placed_decode_oracle(w("10111")) is None


def test_placed_info_json():
    assert placed_decode(w("0010")).to_json() == {"u": "0010", "t": [0], "l": 1, "sigma": 3, "eps": 0}


def test_fast_decode_matches_oracle():
    for length in range(1, 13):
        for bits in product((0, 1), repeat=length):
            assert decode_placed(bits) == placed_decode_oracle(bits), format_word(bits)


def test_compositions():
    assert list(compositions(0)) == [()]
    assert list(compositions(1)) == []
    assert sorted(compositions(5)) == [(2, 3), (3, 2), (5,)]


def test_mirror_examples():
    assert mirror(w("0010")) == w("0011")
    assert mirror(w("0")) == w("1")
    assert mirror(mirror(w("001"))) == w("001")


def test_mirror_keeps_witness_and_flips_digit():
    for length in range(1, 11):
        for bits in product((0, 1), repeat=length):
            info = placed_decode(bits)
            if info is None:
                continue
            other = placed_decode(mirror(bits))
            assert other is not None, format_word(bits)
            assert other.witness == info.witness
            assert other.eps == 1 - info.eps


def test_not_placed_errors():
    with pytest.raises(NotPlaced, match="not placed: '00'"):
        mirror(w("00"))
    with pytest.raises(NotPlaced):
        eps_of(w("10111"))
    assert not is_placed(w("00"))
    assert level_of(w("0010")) == 1


def test_pred_examples():
    assert pred(w("0010")) == w("001")
    assert pred(w("001111")) == w("0011")
    assert pred_l(w("001111"), 0) == w("001")
    assert pred(w("0")) == ()
