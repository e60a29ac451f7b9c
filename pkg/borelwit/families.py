"""
The example digraphs and their partitions.

G0 on 2^ω, the two 0^∞-neighbourhood families A1 and the rectangle family on
2^ω, A2 on ω^ω with the comparing partition built from the prime coder, and
the suitable-word family on 3^ω with the maps phi and Phi.

Edge tests return the certifying parameter (n, i, u) or None, never a bare
boolean.
"""
import enum
import logging
import typing as t
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from borelwit.errors import TooLarge
from borelwit.options import DEFAULT_CODER_BOUND, DEFAULT_DIFF_CAP
from borelwit.points import (
    EpPoint,
    ep_at,
    ep_diff_positions,
    ep_first,
    ep_prefix,
    format_point,
)
from borelwit.seqcore import OMEGA, Bits, dense_words, format_word, prime_decode

logger = logging.getLogger(__name__)

MAX_LEVEL = 16


class Family(str, enum.Enum):
    G0 = "G0"
    A1 = "A1"
    A1RECT = "A1rect"
    A2 = "A2"
    S3 = "S3"
    A3 = "A3"
    G = "G"


class PartitionKind(str, enum.Enum):
    A2 = "A2part"
    S3 = "S3part"
    KT = "KTpart"


@dataclass(frozen=True)
class FamilyEdge:
    family: Family
    left: EpPoint
    right: EpPoint
    parameter: t.Any

    def to_json(self) -> t.Dict[str, t.Any]:
        parameter = self.parameter
        if isinstance(parameter, tuple):
            parameter = list(parameter)
        return {
            "family": self.family.value,
            "left": format_point(self.left),
            "right": format_point(self.right),
            "parameter": parameter,
        }


@dataclass(frozen=True)
class PartitionSpec:
    kind: PartitionKind
    q: int


# --- G0 ---------------------------------------------------------------------


def g0_is_edge(x: EpPoint, y: EpPoint, cap: int = DEFAULT_DIFF_CAP) -> t.Optional[int]:
    diff = ep_diff_positions(x, y, cap)
    if not diff.finite or len(diff.positions) != 1:
        return None
    n = diff.positions[0]
    if ep_at(x, n) != 0 or ep_at(y, n) != 1:
        return None
    if ep_prefix(x, n) != dense_words(n).s:
        return None
    return n


def g0_edge(n: int, tail: EpPoint) -> FamilyEdge:
    """(s_n·0·γ, s_n·1·γ) for the given tail γ."""
    s = dense_words(n).s
    left = EpPoint(s + (0,) + tail.preperiod, tail.period)
    right = EpPoint(s + (1,) + tail.preperiod, tail.period)
    return FamilyEdge(Family.G0, left, right, n)


@dataclass(frozen=True)
class LevelGraph:
    n: int
    edges: t.Tuple[t.Tuple[str, str], ...]

    def vertices(self) -> t.List[str]:
        return [format_word(bits) for bits in product((0, 1), repeat=self.n)]

    def to_json(self) -> t.Dict[str, t.Any]:
        return {"n": self.n, "edges": [list(edge) for edge in self.edges]}


def g0_level_edges(level: int, n: int) -> t.List[t.Tuple[str, str]]:
    """Edges of the level graph contributed by the split at s_n."""
    s = format_word(dense_words(n).s)
    edges = []
    for tail in product((0, 1), repeat=level - n - 1):
        rest = format_word(tail)
        edges.append((s + "0" + rest, s + "1" + rest))
    return edges


def g0_level_graph(level: int) -> LevelGraph:
    if level > MAX_LEVEL:
        raise TooLarge(f"too large: level {level} > {MAX_LEVEL}")
    edges = []
    for n in range(level):
        edges.extend(g0_level_edges(level, n))
    return LevelGraph(level, tuple(sorted(edges)))


class TreeCheck(t.NamedTuple):
    edges: int
    acyclic: bool
    connected: bool


def g0_tree_check(graph: LevelGraph) -> TreeCheck:
    """Union-find over the level graph."""
    parent = np.arange(1 << graph.n, dtype=np.int64)

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return int(root)

    acyclic = True
    components = 1 << graph.n
    for a, b in graph.edges:
        ra, rb = find(int(a, 2) if a else 0), find(int(b, 2) if b else 0)
        if ra == rb:
            acyclic = False
            continue
        parent[ra] = rb
        components -= 1
    return TreeCheck(len(graph.edges), acyclic, components == 1)


# --- A1 and the rectangle family ---------------------------------------------


def a1_is_edge(x: EpPoint, y: EpPoint) -> t.Optional[int]:
    i0 = ep_first(x, 1)
    i1 = ep_first(y, 1)
    if i0 is None or i0 % 2 != 0 or i1 != i0 + 1:
        return None
    return i0 // 2


def a1_edge(i: int, left_tail: EpPoint, right_tail: EpPoint) -> FamilyEdge:
    left = EpPoint((0,) * (2 * i) + (1,) + left_tail.preperiod, left_tail.period)
    right = EpPoint((0,) * (2 * i + 1) + (1,) + right_tail.preperiod, right_tail.period)
    return FamilyEdge(Family.A1, left, right, i)


def a1rect_classify(x: EpPoint) -> t.Optional[int]:
    """The i with x in N_{0^i 1}; None stands for the center 0^∞."""
    return ep_first(x, 1)


def a1rect_is_edge(x: EpPoint, y: EpPoint) -> t.Optional[int]:
    """Both points in the same N_{0^i 1}; x == y is an edge too."""
    i = a1rect_classify(x)
    if i is None or a1rect_classify(y) != i:
        return None
    return i


def a1rect_zero_pair(x: EpPoint, y: EpPoint) -> bool:
    return a1rect_classify(x) is None and a1rect_classify(y) is None


# --- A2 and its comparing partition ------------------------------------------


def a2_point(u: t.Sequence[int], eps: int) -> EpPoint:
    """u·(2|u|+eps)^∞."""
    return EpPoint(tuple(u), (2 * len(u) + eps,), OMEGA)


def a2_is_edge(x: EpPoint, y: EpPoint) -> t.Optional[Bits]:
    if len(x.period) != 1 or x.period[0] % 2 != 0:
        return None
    c = x.period[0]
    size = c // 2
    if len(x.preperiod) > size:
        return None
    u = ep_prefix(x, size)
    if y != a2_point(u, 1) or x != a2_point(u, 0):
        return None
    return u


def a2_family_point(i: int, eps: int, bound: int = DEFAULT_CODER_BOUND) -> EpPoint:
    """The single point of C^eps_i, b(i)·(2|b(i)|+eps)^∞."""
    return a2_point(prime_decode(i, bound), eps)


@lru_cache(maxsize=1024)
def _a2_depth(q: int, bound: int) -> int:
    return max(len(prime_decode(k, bound)) + 1 for k in range(q + 1))


def a2_cell_word(q: int, i: int, eps: int, bound: int = DEFAULT_CODER_BOUND) -> Bits:
    """The cylinder word of O^{2i+eps}_q for i <= q."""
    b = prime_decode(i, bound)
    return b + (2 * len(b) + eps,) * (_a2_depth(q, bound) - len(b))


def a2_partition_member(q: int, p: int, x: EpPoint, bound: int = DEFAULT_CODER_BOUND) -> bool:
    if p >= 2 * q + 3:
        return False
    if p <= 2 * q + 1:
        i, eps = divmod(p, 2)
        cell = a2_cell_word(q, i, eps, bound)
        return ep_prefix(x, len(cell)) == cell
    return all(not a2_partition_member(q, k, x, bound) for k in range(2 * q + 2))


# --- the suitable-word family on 3^ω ------------------------------------------


def suitable(s: t.Sequence[int]) -> bool:
    return len(s) == 0 or s[-1] == 2


def theta(i: int) -> Bits:
    """i-th suitable word: by length, then lexicographically with 0 < 1 < 2."""
    if i == 0:
        return ()
    i -= 1
    length = 1
    while i >= 3 ** (length - 1):
        i -= 3 ** (length - 1)
        length += 1
    digits = []
    for _ in range(length - 1):
        i, digit = divmod(i, 3)
        digits.append(digit)
    return tuple(reversed(digits)) + (2,)


def theta_index(s: t.Sequence[int]) -> int:
    if not suitable(s):
        raise ValueError(f"'{format_word(s, 3)}' is not suitable")
    if not s:
        return 0
    index = 1 + sum(3 ** (k - 1) for k in range(1, len(s)))
    rank = 0
    for digit in s[:-1]:
        rank = 3 * rank + digit
    return index + rank


def suitable_pred(s: t.Sequence[int]) -> Bits:
    for length in range(len(s) - 1, -1, -1):
        if suitable(s[:length]):
            return tuple(s[:length])
    return ()


def s3_decode(x: EpPoint) -> t.Optional[t.Tuple[int, int]]:
    """(i, eps) with x in S^eps_i, or None when x is in no S-set."""
    if 2 in x.period:
        return None
    last_two = -1
    for k, symbol in enumerate(x.preperiod):
        if symbol == 2:
            last_two = k
    head = x.preperiod[: last_two + 1]
    return theta_index(head), ep_at(x, last_two + 1)


def s3_family_member(i: int, eps: int, x: EpPoint) -> bool:
    return s3_decode(x) == (i, eps)


def s3_point(i: int, eps: int, tail: EpPoint) -> EpPoint:
    """theta(i)·eps·alpha for a binary tail alpha."""
    return EpPoint(theta(i) + (eps,) + tail.preperiod, tail.period, 3)


def s3_is_edge(x: EpPoint, y: EpPoint) -> t.Optional[int]:
    left = s3_decode(x)
    right = s3_decode(y)
    if left is None or right is None or left[0] != right[0]:
        return None
    if left[1] != 0 or right[1] != 1:
        return None
    return left[0]


def meet(x: EpPoint, y: EpPoint, cap: int = DEFAULT_DIFF_CAP) -> t.Optional[Bits]:
    """Longest common prefix of two distinct points."""
    diff = ep_diff_positions(x, y, cap)
    if not diff.positions:
        return None
    return ep_prefix(x, diff.positions[0])


def suitable_for_family(s: t.Sequence[int], tails: t.Sequence[EpPoint]) -> bool:
    """
    The meet of every S-edge over theta_index(s) built from `tails` is s.

    Suitable words are exactly those meets.
    """
    if not suitable(s):
        return False
    i = theta_index(s)
    for alpha, beta in product(tails, repeat=2):
        if meet(s3_point(i, 0, alpha), s3_point(i, 1, beta)) != tuple(s):
            return False
    return True


def s3_partition_member(q: int, p: int, x: EpPoint) -> bool:
    if p >= 2 * q + 3:
        return False
    if p <= 2 * q + 1:
        i, eps = divmod(p, 2)
        head = theta(i) + (eps,)
        free = len(theta(q)) - len(theta(i))
        word = ep_prefix(x, len(head) + free)
        return word[: len(head)] == head and all(s < 2 for s in word[len(head):])
    return all(not s3_partition_member(q, k, x) for k in range(2 * q + 2))


# --- partitions in general ----------------------------------------------------


def partition_cell(spec: PartitionSpec, x: EpPoint, bound: int = DEFAULT_CODER_BOUND) -> int:
    """The p with x in O^p_q."""
    if spec.kind is PartitionKind.KT:
        raise ValueError("use ktree.kt_partition_trace for the X3 partition")
    q = spec.q
    for p in range(2 * q + 2):
        if spec.kind is PartitionKind.A2 and a2_partition_member(q, p, x, bound):
            return p
        if spec.kind is PartitionKind.S3 and s3_partition_member(q, p, x):
            return p
    return 2 * q + 2


def partition_trace(
    kind: PartitionKind, x: EpPoint, depth: int, bound: int = DEFAULT_CODER_BOUND
) -> Bits:
    """(p_q)_{q < depth}: the cell of x at each q."""
    return tuple(partition_cell(PartitionSpec(kind, q), x, bound) for q in range(depth))


# --- phi and Phi -------------------------------------------------------------


def phi_clause(s: t.Sequence[int], n: int) -> int:
    """Which recursion clause extends phi from s to s·n; the first one wins on overlap."""
    q = n // 2
    if q == len(s) or (len(s) > 0 and n != s[-1]):
        return 1
    return 2


def phi_extend(image: Bits, s: t.Sequence[int], n: int) -> Bits:
    eps = n % 2
    if phi_clause(s, n) == 1:
        return image + (2, eps)
    return image + (eps,)


def phi_map(s: t.Sequence[int]) -> Bits:
    image: Bits = ()
    for k, n in enumerate(s):
        image = phi_extend(image, s[:k], n)
    return image


def Phi_prefix(gamma: EpPoint, depth: int) -> Bits:
    """First `depth` symbols of Phi(gamma), where Phi(gamma)(p) = phi(gamma|(p+1))(p)."""
    image: Bits = ()
    prefix: t.List[int] = []
    while len(image) < depth:
        n = ep_at(gamma, len(prefix))
        image = phi_extend(image, prefix, n)
        prefix.append(n)
    return image[:depth]
