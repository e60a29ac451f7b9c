"""
Eventually periodic points u·v^∞ of 2^ω, 3^ω and ω^ω.

An `EpPoint` is always held in normal form: the period is the minimal period
of the tail and the preperiod the shortest prefix after which that period
repeats. Equality of points is therefore equality of the dataclasses.
"""
import logging
import math
import typing as t
from dataclasses import dataclass
from functools import lru_cache

from borelwit.errors import AlphabetMismatch, CapExceeded, ParseError
from borelwit.seqcore import Bits, Word, format_word, pair, parse_word, unpair

logger = logging.getLogger(__name__)


def _minimal_period(period: Bits) -> Bits:
    size = len(period)
    for d in range(1, size + 1):
        if size % d == 0 and period[:d] * (size // d) == period:
            return period[:d]
    return period


def normalize(preperiod: t.Sequence[int], period: t.Sequence[int]) -> t.Tuple[Bits, Bits]:
    pre = tuple(preperiod)
    per = _minimal_period(tuple(period))
    while pre and pre[-1] == per[-1]:
        per = (per[-1],) + per[:-1]
        pre = pre[:-1]
    return pre, per


@dataclass(frozen=True)
class EpPoint:
    preperiod: Bits
    period: Bits
    alphabet: t.Optional[int] = 2

    def __post_init__(self):
        if len(self.period) == 0:
            raise ParseError("the period of a point must be nonempty")
        # validates the symbols against the alphabet
        Word(tuple(self.preperiod) + tuple(self.period), self.alphabet)
        pre, per = normalize(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def __str__(self) -> str:
        return format_point(self)


def parse_point(text: str, alphabet: t.Optional[int] = 2) -> EpPoint:
    """Parse the literal "u;v" meaning u·v^∞."""
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError(f"invalid point literal '{text}', expected 'preperiod;period'")
    pre = parse_word(parts[0], alphabet)
    per = parse_word(parts[1], alphabet)
    if not per:
        raise ParseError(f"invalid point literal '{text}': empty period")
    return EpPoint(pre, per, alphabet)


def format_point(x: EpPoint) -> str:
    return f"{format_word(x.preperiod, x.alphabet)};{format_word(x.period, x.alphabet)}"


def ep_from_word(u: t.Sequence[int], tail: int = 0, alphabet: t.Optional[int] = 2) -> EpPoint:
    return EpPoint(tuple(u), (tail,), alphabet)


def ep_at(x: EpPoint, p: int) -> int:
    lp = len(x.preperiod)
    if p < lp:
        return x.preperiod[p]
    return x.period[(p - lp) % len(x.period)]


def ep_prefix(x: EpPoint, n: int) -> Bits:
    return tuple(ep_at(x, p) for p in range(n))


def ep_with(x: EpPoint, m: int, symbol: int) -> EpPoint:
    """The point equal to x except at position m, where it reads `symbol`."""
    if ep_at(x, m) == symbol:
        return x
    lp = len(x.preperiod)
    length = max(lp, m + 1)
    pre = list(ep_prefix(x, length))
    pre[m] = symbol
    shift = (length - lp) % len(x.period)
    period = x.period[shift:] + x.period[:shift]
    return EpPoint(tuple(pre), period, x.alphabet)


def ep_first(x: EpPoint, symbol: int) -> t.Optional[int]:
    for p in range(len(x.preperiod) + len(x.period)):
        if ep_at(x, p) == symbol:
            return p
    return None


def ep_last(x: EpPoint, symbol: int) -> t.Optional[int]:
    """
    Last position holding `symbol`, or None when it never occurs.

    Only meaningful when the symbol occurs finitely often; raises ValueError
    otherwise.
    """
    if symbol in x.period:
        raise ValueError(f"symbol {symbol} occurs infinitely often in {format_point(x)}")
    for p in range(len(x.preperiod) - 1, -1, -1):
        if x.preperiod[p] == symbol:
            return p
    return None


@lru_cache(maxsize=1 << 16)
def ep_vertical(x: EpPoint, n: int) -> EpPoint:
    """
    The point read along vertical n: p ↦ x(<n,p>).

    Once <n,p> passes the preperiod, <n,p+2L> - <n,p> is a multiple of the
    period length L, so 2L values starting there make a period.
    """
    lp = len(x.preperiod)
    first = 0
    while pair(n, first) < lp:
        first += 1
    pre = tuple(ep_at(x, pair(n, p)) for p in range(first))
    per = tuple(ep_at(x, pair(n, p)) for p in range(first, first + 2 * len(x.period)))
    return EpPoint(pre, per, x.alphabet)


def ep_last_in_vertical(x: EpPoint, n: int, symbol: int = 1) -> t.Optional[int]:
    """Height p of the last `symbol` on vertical n (the symbol must occur finitely often)."""
    return ep_last(ep_vertical(x, n), symbol)


def ep_hits_forever(x: EpPoint, n: int, symbol: int) -> bool:
    return symbol in ep_vertical(x, n).period


class DiffResult(t.NamedTuple):
    positions: t.Tuple[int, ...]
    finite: bool


def ep_diff_positions(x: EpPoint, y: EpPoint, cap: int) -> DiffResult:
    """
    Positions below the joint horizon where x and y differ.

    The horizon is the longer preperiod plus the lcm of the periods; past it
    both points repeat jointly, so `finite` (the tails agree) means the list
    is the whole difference set.
    """
    if x.alphabet != y.alphabet:
        raise AlphabetMismatch(
            f"cannot compare points over alphabets {x.alphabet} and {y.alphabet}"
        )
    start = max(len(x.preperiod), len(y.preperiod))
    horizon = start + math.lcm(len(x.period), len(y.period))
    if horizon > cap:
        raise CapExceeded(horizon, cap)
    positions = tuple(p for p in range(horizon) if ep_at(x, p) != ep_at(y, p))
    finite = not positions or positions[-1] < start
    return DiffResult(positions, finite)


def first_infinite_vertical(x: EpPoint, symbol: int = 1) -> t.Optional[int]:
    """
    Least vertical holding `symbol` infinitely often, None if there is none.

    A period slot holding the symbol puts it on the vertical of that slot's
    position forever, which bounds the search.
    """
    if symbol not in x.period:
        return None
    lp = len(x.preperiod)
    upper = min(
        unpair(lp + k).n for k, value in enumerate(x.period) if value == symbol
    )
    for n in range(upper + 1):
        if ep_hits_forever(x, n, symbol):
            return n
    return upper
