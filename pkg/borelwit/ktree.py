"""
The tree calculus on 2^ω behind the third dichotomy witness.

A node is a finite sequence of naturals. Node t fixes the verticals below
Σ^t_{|t|} block by block (one block of t(k)+2 verticals per entry, filled
from the dense word w_{t(k)}) and leaves the rest free; K_t is the set of
points obeying those constraints. Placed words, their mirrors and
predecessors, the sets H_t and H̃_t, the space X3 and the digraphs A3 and
G are all decided here on eventually periodic points.
"""
import enum
import logging
import typing as t
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from borelwit.errors import (
    ChainBoundExceeded,
    InconsistentPrefix,
    NonUniqueWitness,
    NotPlaced,
    TooLarge,
    WitnessCheckFailed,
    WordLengthError,
)
from borelwit.options import DEFAULT_CODER_BOUND, DEFAULT_DIFF_CAP, DEFAULT_X3_DEPTH
from borelwit.points import (
    EpPoint,
    ep_at,
    ep_diff_positions,
    ep_hits_forever,
    ep_last,
    ep_prefix,
    ep_vertical,
    ep_with,
    first_infinite_vertical,
)
from borelwit.seqcore import (
    Bits,
    dense_words,
    format_word,
    is_prefix,
    pair,
    prime_decode,
    slice_word,
    unpair,
)

logger = logging.getLogger(__name__)

# Largest modulus tried when looking for a free residue class
MAX_RESIDUE_MODULUS = 10**4


@dataclass(frozen=True)
class SigmaOffsets:
    partials: Bits
    sigma_t: int

    @property
    def free_vertical(self) -> int:
        return self.partials[-1]


@lru_cache(maxsize=4096)
def sigma_offsets(node: Bits) -> SigmaOffsets:
    partials = [0]
    for entry in node:
        partials.append(partials[-1] + entry + 2)
    return SigmaOffsets(tuple(partials), pair(partials[-1], 0))


@lru_cache(maxsize=1024)
def block_targets(m: int) -> t.Tuple[t.Tuple[int, EpPoint], ...]:
    """Targets of the verticals of one block, keyed by offset, for entry m."""
    w = dense_words(m).w
    head = slice_word(w, 0)
    targets = [(0, EpPoint(head + (0,) * (m + 1 - len(head)) + (1,), (0,)))]
    for i in range(1, m + 2):
        targets.append((i, EpPoint(slice_word(w, i), (0,))))
    return tuple(targets)


@lru_cache(maxsize=4096)
def _constraint_items(node: Bits) -> t.Tuple[t.Tuple[int, EpPoint], ...]:
    partials = sigma_offsets(node).partials
    items = []
    for k, entry in enumerate(node):
        for offset, target in block_targets(entry):
            items.append((partials[k] + offset, target))
    return tuple(items)


def kt_constraints(node: Bits) -> t.Dict[int, EpPoint]:
    return dict(_constraint_items(tuple(node)))


def kt_member(node: Bits, x: EpPoint) -> bool:
    return all(ep_vertical(x, v) == target for v, target in _constraint_items(tuple(node)))


def kt_prefix_consistent(node: Bits, u: t.Sequence[int]) -> bool:
    """N_u meets K_t: u agrees with every constrained position it reaches."""
    for v, target in _constraint_items(tuple(node)):
        p = 0
        while True:
            q = pair(v, p)
            if q >= len(u):
                break
            if u[q] != ep_at(target, p):
                return False
            p += 1
    return True


def canonical_point(node: Bits, eps: int) -> EpPoint:
    node = tuple(node)
    offsets = sigma_offsets(node)
    ones = [
        pair(v, p)
        for v, target in _constraint_items(node)
        for p, bit in enumerate(target.preperiod)
        if bit == 1
    ]
    if eps:
        ones.append(offsets.sigma_t)
    bits = [0] * (max(ones + [offsets.sigma_t]) + 1)
    for q in ones:
        bits[q] = 1
    return EpPoint(tuple(bits), (0,))


def phi_t(node: Bits, x: t.Union[EpPoint, t.Sequence[int]]) -> t.Union[EpPoint, Bits]:
    """Force the split coordinate Σ_t to 1."""
    return _force_split(node, x, 1)


def phi_t_inverse(node: Bits, x: t.Union[EpPoint, t.Sequence[int]]) -> t.Union[EpPoint, Bits]:
    return _force_split(node, x, 0)


def _force_split(node: Bits, x, bit: int):
    sigma = sigma_offsets(tuple(node)).sigma_t
    if isinstance(x, EpPoint):
        return ep_with(x, sigma, bit)
    if len(x) <= sigma:
        raise WordLengthError(
            f"word '{format_word(x)}' has length {len(x)}, need more than {sigma}"
        )
    out = list(x)
    out[sigma] = bit
    return tuple(out)


def ktn_member(node: Bits, n: int, x: EpPoint) -> bool:
    """
    x in K_{tn}, read off block by block.

    Besides x in K_t this needs x(Σ_t) = w_n(0), the last 1 of the free
    vertical exactly at height n+1 below the padded (w_n)_0, and the next
    n+1 verticals equal to the slices of w_n.
    """
    node = tuple(node)
    if not kt_member(node, x):
        return False
    offsets = sigma_offsets(node)
    base = offsets.free_vertical
    w = dense_words(n).w
    if ep_at(x, offsets.sigma_t) != w[0]:
        return False
    head = slice_word(w, 0)
    vertical = ep_vertical(x, base)
    if vertical.period != (0,) or len(vertical.preperiod) != n + 2:
        return False
    if vertical.preperiod[: len(head)] != head or any(vertical.preperiod[len(head): n + 1]):
        return False
    for i in range(1, n + 2):
        target = slice_word(w, i)
        vertical = ep_vertical(x, base + i)
        if vertical.period != (0,) or len(vertical.preperiod) > len(target):
            return False
        if ep_prefix(vertical, len(target)) != target:
            return False
    return True


def ktn_member_direct(node: Bits, n: int, x: EpPoint) -> bool:
    return kt_member(tuple(node) + (n,), x)


def first_disagreement(node: Bits, x: EpPoint, cap: int = DEFAULT_DIFF_CAP) -> t.Optional[int]:
    """Least position where x breaks a constraint of K_t, None when x is in K_t."""
    best = None
    for v, target in _constraint_items(tuple(node)):
        diff = ep_diff_positions(ep_vertical(x, v), target, cap)
        if diff.positions:
            q = pair(v, diff.positions[0])
            best = q if best is None else min(best, q)
    return best


# --- placed words --------------------------------------------------------------


@dataclass(frozen=True)
class PlacedInfo:
    u: Bits
    witness: Bits
    level: int
    sigma: int
    eps: int

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "u": format_word(self.u),
            "t": list(self.witness),
            "l": self.level,
            "sigma": self.sigma,
            "eps": self.eps,
        }


def _last_one_before(u: Bits, end: int) -> t.Optional[int]:
    for q in range(min(end, len(u)) - 1, -1, -1):
        if u[q] == 1:
            return q
    return None


def _placed_info(u: Bits, node: Bits) -> PlacedInfo:
    sigma = sigma_offsets(node).sigma_t
    return PlacedInfo(u, node, len(node), sigma, u[sigma])


def decode_placed(u: Bits) -> t.Optional[PlacedInfo]:
    """Uncached `placed_decode`, for scans over long prefixes."""
    if not u:
        return None
    last = unpair(len(u) - 1)
    if last.p > 0 and u[-1] != 1:
        return None
    entries = []
    free = last.n
    while free > 0:
        # the previous block ends with its last 1 at height t(k)+1
        q = _last_one_before(u, pair(free, 0))
        if q is None:
            return None
        found = unpair(q)
        if found.M != free - 1 or found.p < 1:
            return None
        entries.append(found.p - 1)
        free = found.n
    node = tuple(reversed(entries))
    if not kt_prefix_consistent(node, u):
        return None
    return _placed_info(u, node)


@lru_cache(maxsize=1 << 18)
def _placed_decode_cached(u: Bits) -> t.Optional[PlacedInfo]:
    return decode_placed(u)


def placed_decode(u: t.Sequence[int]) -> t.Optional[PlacedInfo]:
    return _placed_decode_cached(tuple(u))


def compositions(total: int, smallest: int = 2) -> t.Iterator[Bits]:
    """Ordered compositions of `total` into parts >= `smallest`."""
    if total == 0:
        yield ()
        return
    for first in range(smallest, total + 1):
        for rest in compositions(total - first, smallest):
            yield (first,) + rest


def placed_decode_oracle(u: t.Sequence[int]) -> t.Optional[PlacedInfo]:
    """Placedness by trying every node whose blocks add up to (|u|-1)_0."""
    u = tuple(u)
    if not u:
        return None
    last = unpair(len(u) - 1)
    if last.p > 0 and u[-1] != 1:
        return None
    survivors = []
    for parts in compositions(last.n):
        node = tuple(part - 2 for part in parts)
        if kt_prefix_consistent(node, u):
            survivors.append(node)
    if not survivors:
        return None
    if len(survivors) > 1:
        raise NonUniqueWitness(
            f"non-unique witness for '{format_word(u)}': "
            + ", ".join(str(list(node)) for node in survivors)
        )
    return _placed_info(u, survivors[0])


def _require_placed(u: t.Sequence[int]) -> PlacedInfo:
    info = placed_decode(u)
    if info is None:
        raise NotPlaced(format_word(u))
    return info


def is_placed(u: t.Sequence[int]) -> bool:
    return placed_decode(u) is not None


def mirror(u: t.Sequence[int]) -> Bits:
    info = _require_placed(u)
    out = list(info.u)
    out[info.sigma] = 1 - out[info.sigma]
    return tuple(out)


def eps_of(u: t.Sequence[int]) -> int:
    return _require_placed(u).eps


def level_of(u: t.Sequence[int]) -> int:
    return _require_placed(u).level


def pred(u: t.Sequence[int]) -> Bits:
    u = tuple(u)
    for n in range(len(u) - 1, 0, -1):
        if placed_decode(u[:n]) is not None:
            return u[:n]
    return ()


def pred_l(u: t.Sequence[int], level: int) -> Bits:
    u = tuple(u)
    for n in range(len(u) - 1, 0, -1):
        info = placed_decode(u[:n])
        if info is not None and info.level <= level:
            return u[:n]
    return ()


# --- witness chains and X3 ---------------------------------------------------------


@dataclass(frozen=True)
class WitnessChain:
    nodes: t.Tuple[Bits, ...]
    qualifying: t.Optional[Bits]

    @property
    def last(self) -> Bits:
        return self.nodes[-1]

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "chain": [list(node) for node in self.nodes],
            "qualifying": None if self.qualifying is None else list(self.qualifying),
        }


def _chain_limit(x: EpPoint) -> int:
    infinite = first_infinite_vertical(x, 1)
    if infinite is not None:
        return infinite // 2 + 1
    return sum(x.preperiod) + 1


def witness_chain(x: EpPoint) -> WitnessChain:
    """
    All nodes t with x in K_t, in order.

    They form a chain: the next entry is one less than the height of the
    last 1 on the current free vertical. The chain ends at a node whose free
    vertical holds infinitely many 1s (that node qualifies for X3) or when
    the next candidate fails.
    """
    limit = _chain_limit(x)
    node: Bits = ()
    nodes = [node]
    while True:
        free = sigma_offsets(node).free_vertical
        if ep_hits_forever(x, free, 1):
            return WitnessChain(tuple(nodes), node)
        last = ep_last(ep_vertical(x, free), 1)
        if last is None or last < 1:
            return WitnessChain(tuple(nodes), None)
        candidate = node + (last - 1,)
        if not kt_member(candidate, x):
            return WitnessChain(tuple(nodes), None)
        node = candidate
        nodes.append(node)
        logger.debug("witness chain of %s extended to %s", x, list(node))
        if len(nodes) > limit:
            raise ChainBoundExceeded(
                f"witness chain of {x} passed its bound {limit}"
            )


class Verdict(str, enum.Enum):
    IN = "IN"
    OUT = "OUT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Tristate:
    verdict: Verdict
    certificate: t.Dict[str, t.Any] = field(default_factory=dict, hash=False)
    depth: t.Optional[int] = None

    def to_json(self) -> t.Dict[str, t.Any]:
        out = {"verdict": self.verdict.value, "certificate": self.certificate}
        if self.depth is not None:
            out["depth"] = self.depth
        return out


def placed_horizon(x: EpPoint, chain: WitnessChain) -> int:
    """
    A length past which no prefix of x is placed, for a chain with no
    qualifying node.

    With t the last chain node and V its free vertical, a longer placed
    prefix has a witness extending t. Witness t itself needs a 1 on V past
    the last one. A witness through t·n needs x(<V,n+1>) = 1 and the prefix
    to agree with K_{tn}, so it ends before x first leaves K_{tn}.
    """
    node = chain.last
    offsets = sigma_offsets(node)
    free = offsets.free_vertical
    vertical = ep_vertical(x, free)
    horizon = offsets.sigma_t + 1
    last = ep_last(vertical, 1)
    if last is None:
        return horizon
    horizon = max(horizon, pair(free, last) + 1)
    for height in range(1, last + 1):
        if ep_at(vertical, height) != 1:
            continue
        leaves = first_disagreement(node + (height - 1,), x)
        if leaves is not None:
            horizon = max(horizon, leaves)
    return horizon


def x3_member(x: EpPoint, depth: int = DEFAULT_X3_DEPTH) -> Tristate:
    chain = witness_chain(x)
    if chain.qualifying is not None:
        node = chain.qualifying
        return Tristate(
            Verdict.IN,
            {
                "t": list(node),
                "vertical": sigma_offsets(node).free_vertical,
                "chain": [list(n) for n in chain.nodes],
            },
        )
    horizon = placed_horizon(x, chain)
    free = sigma_offsets(chain.last).free_vertical
    scan_end = max(horizon, len(x.preperiod) + 2 * len(x.period) * (free + 2))
    if scan_end > depth:
        logger.info("x3 scan of %s needs %d > depth %d", x, scan_end, depth)
        return Tristate(
            Verdict.UNKNOWN,
            {"horizon": horizon, "chain": [list(n) for n in chain.nodes]},
            depth,
        )
    bits = ep_prefix(x, scan_end)
    placed = [p for p in range(1, scan_end + 1) if _quick_placed(bits, p)]
    if placed and placed[-1] > horizon:
        logger.warning("placed prefix of %s at length %d past horizon %d", x, placed[-1], horizon)
        return Tristate(
            Verdict.UNKNOWN,
            {"horizon": horizon, "chain": [list(n) for n in chain.nodes]},
            depth,
        )
    return Tristate(
        Verdict.OUT,
        {
            "chain": [list(n) for n in chain.nodes],
            "horizon": horizon,
            "scanned": scan_end,
            "last_placed": placed[-1] if placed else None,
        },
    )


def _quick_placed(bits: Bits, length: int) -> bool:
    last = unpair(length - 1)
    if last.p > 0 and bits[length - 1] != 1:
        return False
    return decode_placed(bits[:length]) is not None


def verify_certificate(x: EpPoint, answer: Tristate) -> bool:
    """Re-check an X3 answer against the defining predicates."""
    if answer.verdict is Verdict.IN:
        node = tuple(answer.certificate["t"])
        return kt_member(node, x) and ep_hits_forever(x, sigma_offsets(node).free_vertical, 1)
    if answer.verdict is Verdict.OUT:
        return x3_member(x).verdict is Verdict.OUT
    return True


# --- H_t, H̃_t and the digraphs ------------------------------------------------------


def h_member(node: Bits, x: EpPoint) -> bool:
    node = tuple(node)
    offsets = sigma_offsets(node)
    return (
        kt_member(node, x)
        and ep_at(x, offsets.sigma_t) == 0
        and ep_hits_forever(x, offsets.free_vertical, 1)
    )


def _child_candidate(node: Bits, y: EpPoint) -> t.Optional[int]:
    """The only n that can have y in K_{tn}."""
    free = sigma_offsets(node).free_vertical
    if ep_hits_forever(y, free, 1):
        return None
    last = ep_last(ep_vertical(y, free), 1)
    if last is None or last < 1:
        return None
    return last - 1


def h_tilde_member(node: Bits, x: EpPoint) -> bool:
    node = tuple(node)
    if not kt_member(node, x) or ep_at(x, sigma_offsets(node).sigma_t) != 0:
        return False
    for y in (x, phi_t(node, x)):
        n = _child_candidate(node, y)
        if n is not None and ktn_member(node, n, y):
            return False
    return True


def phi_t_image_member(node: Bits, y: EpPoint) -> bool:
    """y in φ_t[H̃_t]."""
    node = tuple(node)
    sigma = sigma_offsets(node).sigma_t
    return ep_at(y, sigma) == 1 and h_tilde_member(node, ep_with(y, sigma, 0))


def _split_edge_node(x: EpPoint, y: EpPoint, cap: int) -> t.Optional[Bits]:
    diff = ep_diff_positions(x, y, cap)
    if not diff.finite or len(diff.positions) != 1:
        return None
    m = diff.positions[0]
    index = unpair(m)
    if index.p != 0 or ep_at(x, m) != 0 or ep_at(y, m) != 1:
        return None
    for node in witness_chain(x).nodes:
        if sigma_offsets(node).free_vertical == index.n:
            return node
    return None


def a3_is_edge(x: EpPoint, y: EpPoint, cap: int = DEFAULT_DIFF_CAP) -> t.Optional[Bits]:
    node = _split_edge_node(x, y, cap)
    if node is None or not h_member(node, x) or phi_t(node, x) != y:
        return None
    return node


def g_is_edge(x: EpPoint, y: EpPoint, cap: int = DEFAULT_DIFF_CAP) -> t.Optional[Bits]:
    node = _split_edge_node(x, y, cap)
    if node is None or not h_tilde_member(node, x) or phi_t(node, x) != y:
        return None
    return node


# --- constructive density ---------------------------------------------------------


def density_witness_x3(u: t.Sequence[int]) -> EpPoint:
    """u·1^∞, which has placed prefixes at every later height of vertical 0."""
    return EpPoint(tuple(u), (1,))


@lru_cache(maxsize=256)
def free_residue(free: int) -> t.Tuple[int, int]:
    """
    (L, r) with r hit by vertical `free` modulo L and by no vertical below it.

    Vertical v meets each residue class mod L in a pattern periodic in the
    height with period 2L, so 2L heights give the full set.
    """
    for modulus in range(1, MAX_RESIDUE_MODULUS + 1):
        heights = np.arange(2 * modulus, dtype=np.int64)
        covered = np.zeros(modulus, dtype=bool)
        for v in range(free):
            covered[((v + heights) * (v + heights + 1) // 2 + heights) % modulus] = True
        hit = np.zeros(modulus, dtype=bool)
        hit[((free + heights) * (free + heights + 1) // 2 + heights) % modulus] = True
        residues = np.flatnonzero(hit & ~covered)
        if residues.size:
            logger.debug("free residue for vertical %d: %d mod %d", free, residues[0], modulus)
            return modulus, int(residues[0])
    raise TooLarge(f"too large: no free residue for vertical {free} below {MAX_RESIDUE_MODULUS}")


def density_witness_ht(node: Bits, u: t.Sequence[int]) -> EpPoint:
    """
    A point of H_t extending u.

    The constrained verticals follow K_t, Σ_t is 0 and the free coordinates
    after u are 1 up to the end of the constrained supports. From there on
    the 1s sit on a residue class that only the free vertical of t meets.
    """
    node = tuple(node)
    u = tuple(u)
    offsets = sigma_offsets(node)
    sigma = offsets.sigma_t
    free = offsets.free_vertical
    if not kt_prefix_consistent(node, u) or (len(u) > sigma and u[sigma] != 0):
        raise InconsistentPrefix(
            f"'{format_word(u)}' is inconsistent with K^0_{list(node)}"
        )
    modulus, residue = free_residue(free)
    targets = kt_constraints(node)
    support = max((pair(v, len(target.preperiod)) for v, target in targets.items()), default=0)
    length = max(len(u), sigma + 1, support)
    bits = list(u)
    for q in range(len(u), length):
        index = unpair(q)
        if index.n < free:
            bits.append(ep_at(targets[index.n], index.p))
        elif q == sigma:
            bits.append(0)
        else:
            bits.append(1)
    period = tuple(1 if (length + k) % modulus == residue else 0 for k in range(modulus))
    x = EpPoint(tuple(bits), period)
    if not h_member(node, x):
        raise WitnessCheckFailed(f"density witness {x} is not in H_{list(node)}")
    return x


def find_ktn_in_cylinder(node: Bits, eps: int, u: t.Sequence[int]) -> int:
    """
    Least n with eps·u a prefix of w_n.

    K_{tn} then lies inside the cylinder of K^eps_t whose free part, read
    through the pairing from vertical Σ^t_{|t|} on, starts with eps·u. This
    is checked on the canonical points of t·n.
    """
    node = tuple(node)
    target = (eps,) + tuple(u)
    n = 0
    while not is_prefix(target, dense_words(n).w):
        n += 1
    offsets = sigma_offsets(node)
    child = node + (n,)
    for split in (0, 1):
        point = canonical_point(child, split)
        if ep_at(point, offsets.sigma_t) != eps:
            raise WitnessCheckFailed(f"K_{list(child)} leaves K^{eps}_{list(node)}")
        for m, bit in enumerate(target):
            index = unpair(m)
            if index.n >= n + 2 or ep_at(point, pair(offsets.free_vertical + index.n, index.p)) != bit:
                raise WitnessCheckFailed(
                    f"K_{list(child)} leaves the cylinder of '{format_word(target)}'"
                )
    return n


# --- the partition of X3 ---------------------------------------------------------


def _kt_cell_member(q: int, i: int, eps: int, x: EpPoint, bound: int) -> bool:
    node = prime_decode(i, bound)
    if not kt_member(node, x) or ep_at(x, sigma_offsets(node).sigma_t) != eps:
        return False
    for other_index in range(q + 1):
        other = prime_decode(other_index, bound)
        if len(other) <= len(node) or other[: len(node)] != node:
            continue
        n = other[len(node)]
        if dense_words(n).w[0] == eps and ktn_member(node, n, x):
            return False
    return True


def kt_partition_member(
    q: int, p: int, x: EpPoint, bound: int = DEFAULT_CODER_BOUND
) -> t.Optional[bool]:
    """
    Membership in the cell O^p_q of X3; None when it hangs on an X3 answer
    that could not be decided.
    """
    if p >= 2 * q + 3:
        return False
    if p <= 2 * q + 1:
        i, eps = divmod(p, 2)
        return _kt_cell_member(q, i, eps, x, bound)
    if any(_kt_cell_member(q, k // 2, k % 2, x, bound) for k in range(2 * q + 2)):
        return False
    verdict = x3_member(x).verdict
    if verdict is Verdict.UNKNOWN:
        return None
    return verdict is Verdict.IN


def kt_partition_trace(
    x: EpPoint, depth: int, bound: int = DEFAULT_CODER_BOUND
) -> t.Tuple[t.Optional[int], ...]:
    """The cell of x for each q < depth, None where undecided or outside X3."""
    trace = []
    for q in range(depth):
        cell = None
        for p in range(2 * q + 3):
            if kt_partition_member(q, p, x, bound):
                cell = p
                break
        trace.append(cell)
    return tuple(trace)
