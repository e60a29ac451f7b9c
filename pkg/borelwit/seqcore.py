"""
Canonical encodings shared by every other module.

- the enumeration psi of 2^{<omega} and the dense sequences s_n, w_n
- the diagonal pairing <n,p> and its inverse
- slices (u)_n of binary words
- the prime-power coder I and its enumeration b

Words are plain tuples of naturals in all hot paths. `Word` wraps a tuple
together with its alphabet for parsing, printing and validation.
"""
import logging
import math
import typing as t
from dataclasses import dataclass
from functools import lru_cache

import sympy

from borelwit.errors import BoundExceeded, ParseError

logger = logging.getLogger(__name__)

# Alphabet marker for omega-words (unbounded naturals)
OMEGA = None

Bits = t.Tuple[int, ...]


@dataclass(frozen=True)
class Word:
    symbols: t.Tuple[int, ...]
    alphabet: t.Optional[int] = 2

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for symbol in self.symbols:
            if symbol < 0:
                raise ParseError(f"negative symbol {symbol} in word")
            if self.alphabet is not None and symbol >= self.alphabet:
                raise ParseError(
                    f"symbol {symbol} is outside the alphabet {{0..{self.alphabet - 1}}}"
                )

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, index):
        return self.symbols[index]

    def __str__(self) -> str:
        return format_word(self.symbols, self.alphabet)


def parse_word(text: str, alphabet: t.Optional[int] = 2) -> Bits:
    """
    Parse a word literal.

    Binary and ternary words are digit strings ("0010"), omega-words are
    comma separated naturals ("3,0,1"). The empty string is the empty word.
    """
    text = text.strip()
    if text in ("", "∅"):
        return ()
    try:
        if alphabet is OMEGA:
            symbols = tuple(int(part) for part in text.split(","))
        else:
            symbols = tuple(int(ch) for ch in text)
    except ValueError as e:
        raise ParseError(f"invalid word literal '{text}'") from e
    return Word(symbols, alphabet).symbols


def format_word(symbols: t.Sequence[int], alphabet: t.Optional[int] = 2) -> str:
    if alphabet is OMEGA:
        return ",".join(str(s) for s in symbols)
    return "".join(str(s) for s in symbols)


def is_prefix(u: t.Sequence[int], v: t.Sequence[int]) -> bool:
    return len(u) <= len(v) and tuple(v[: len(u)]) == tuple(u)


# --- dense sequence ---------------------------------------------------------


class DenseWords(t.NamedTuple):
    psi: Bits
    s: Bits
    w: Bits


def psi(n: int) -> Bits:
    # by length, then lexicographically with 0 < 1
    length = (n + 1).bit_length() - 1
    rank = n + 1 - (1 << length)
    return tuple((rank >> (length - 1 - k)) & 1 for k in range(length))


def psi_index(s: t.Sequence[int]) -> int:
    rank = 0
    for bit in s:
        rank = 2 * rank + bit
    return (1 << len(s)) - 1 + rank


@lru_cache(maxsize=4096)
def dense_words(n: int) -> DenseWords:
    word = psi(n)
    s = word + (0,) * (n - len(word))
    return DenseWords(psi=word, s=s, w=s + (0,))


# --- pairing ----------------------------------------------------------------


def triangle(m: int) -> int:
    return m * (m + 1) // 2


def pair(n: int, p: int) -> int:
    return triangle(n + p) + p


def diagonal(q: int) -> int:
    """M(q): the largest m with 0 + 1 + ... + m <= q."""
    m = (math.isqrt(8 * q + 1) - 1) // 2
    while triangle(m + 1) <= q:
        m += 1
    while triangle(m) > q:
        m -= 1
    return m


class PairIndex(t.NamedTuple):
    n: int
    p: int
    M: int


def unpair(q: int) -> PairIndex:
    m = diagonal(q)
    p = q - triangle(m)
    return PairIndex(n=m - p, p=p, M=m)


def slice_word(u: t.Sequence[int], n: int) -> Bits:
    """(u)_n: the word read along vertical n of u."""
    out = []
    p = 0
    while True:
        position = pair(n, p)
        if position >= len(u):
            return tuple(out)
        out.append(u[position])
        p += 1


# --- prime coder ------------------------------------------------------------


@lru_cache(maxsize=None)
def nth_prime(k: int) -> int:
    """The k-th prime, counting from p_0 = 2."""
    return int(sympy.prime(k + 1))


def prime_code(s: t.Sequence[int]) -> int:
    code = 1
    for k, symbol in enumerate(s):
        code *= nth_prime(k) ** (symbol + 1)
    return code


def prime_uncode(q: int) -> t.Optional[Bits]:
    """
    Invert I by trial division over p_0, p_1, ...

    Returns None when q is not of the form p_0^{e_0}...p_{m-1}^{e_{m-1}}
    with every e_k >= 1.
    """
    if q < 1:
        return None
    symbols = []
    k = 0
    while q > 1:
        prime = nth_prime(k)
        exponent = 0
        while q % prime == 0:
            q //= prime
            exponent += 1
        if exponent == 0:
            return None
        symbols.append(exponent - 1)
        k += 1
    return tuple(symbols)


@lru_cache(maxsize=32)
def coder_values(bound: int) -> t.Tuple[t.Tuple[int, Bits], ...]:
    """All (I(s), s) with I(s) <= bound, sorted by I(s)."""
    found = []

    def extend(value: int, word: Bits):
        found.append((value, word))
        prime = nth_prime(len(word))
        power = prime
        exponent = 1
        while value * power <= bound:
            extend(value * power, word + (exponent - 1,))
            power *= prime
            exponent += 1

    if bound >= 1:
        extend(1, ())
    found.sort()
    logger.debug("coder values <= %d: %d", bound, len(found))
    return tuple(found)


def prime_decode(i: int, bound: int) -> Bits:
    """b(i), found among the coder values below `bound`."""
    values = coder_values(bound)
    if i >= len(values):
        raise BoundExceeded(i, bound)
    return values[i][1]


def prime_index(s: t.Sequence[int]) -> int:
    """b^{-1}(s)."""
    code = prime_code(s)
    values = coder_values(code)
    return len(values) - 1
