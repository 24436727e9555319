"""Itemset families: frequent, closed, generators and minimal rare itemsets.

Frequent itemsets can be mined level-wise (prefix-join candidate generation,
subset pruning, counting by a scan of the objects) or depth-first (canonical
order extension, extents kept as object bitsets and intersected). Both return
the same family. The other families are derived from the frequent one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .context import BinaryContext, from_mask, iter_bits, itemset_key, to_mask
from .errors import ThresholdError

Kind = Literal["frequent", "closed", "generators", "minimal-rare"]
Strategy = Literal["levelwise", "depthfirst"]
KINDS = ("frequent", "closed", "generators", "minimal-rare")
STRATEGIES = ("levelwise", "depthfirst")


@dataclass(frozen=True)
class SupportedItemset:
    items: frozenset[int]
    support: int

    @property
    def key(self):
        return itemset_key(self.items)


@dataclass(frozen=True)
class ItemsetFamily:
    kind: str
    minsupp: int
    members: tuple[SupportedItemset, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def itemsets(self) -> list[frozenset[int]]:
        return [m.items for m in self.members]

    def as_dict(self) -> dict[frozenset[int], int]:
        return {m.items: m.support for m in self.members}


@dataclass(frozen=True)
class EquivalenceClass:
    closed: SupportedItemset
    generators: tuple[frozenset[int], ...]


def check_minsupp(minsupp: int) -> int:
    if isinstance(minsupp, bool) or not isinstance(minsupp, int) or minsupp < 1:
        raise ThresholdError(f"minimum support must be an integer >= 1, got {minsupp!r}")
    return minsupp


def _family(kind: str, minsupp: int, supports: dict[int, int]) -> ItemsetFamily:
    members = [SupportedItemset(from_mask(mask), s) for mask, s in supports.items()]
    members.sort(key=lambda m: m.key)
    return ItemsetFamily(kind, minsupp, tuple(members))


# --- level-wise ----------------------------------------------------------------


def _join(level: Iterable[tuple[int, ...]], known: set[tuple[int, ...]] | None = None) -> list[tuple[int, ...]]:
    """Apriori candidate generation.

    Joins k-itemsets (sorted index tuples) sharing their first k-1 items and
    keeps a candidate only if each of its k-subsets is in ``known`` (defaults
    to ``level``).
    """
    ordered = sorted(level)
    if known is None:
        known = set(ordered)
    candidates = []
    start = 0
    while start < len(ordered):
        prefix = ordered[start][:-1]
        end = start
        while end < len(ordered) and ordered[end][:-1] == prefix:
            end += 1
        block = ordered[start:end]
        for a in range(len(block)):
            for b in range(a + 1, len(block)):
                cand = block[a] + (block[b][-1],)
                if all(cand[:j] + cand[j + 1:] in known for j in range(len(cand) - 2)):
                    candidates.append(cand)
        start = end
    return candidates


def _levelwise(ctx: BinaryContext, minsupp: int) -> dict[int, int]:
    rows = ctx.row_masks
    result: dict[int, int] = {}
    level = []
    for i, tids in enumerate(ctx.item_tidsets):
        s = tids.bit_count()
        if s >= minsupp:
            result[1 << i] = s
            level.append((i,))
    while level:
        candidates = [(c, to_mask(c)) for c in _join(level)]
        if not candidates:
            break
        counts = [0] * len(candidates)
        for row in rows:
            for n, (_, mask) in enumerate(candidates):
                if row & mask == mask:
                    counts[n] += 1
        level = []
        for (cand, mask), s in zip(candidates, counts):
            if s >= minsupp:
                result[mask] = s
                level.append(cand)
    return result


# --- depth-first ---------------------------------------------------------------


def _depthfirst(ctx: BinaryContext, minsupp: int) -> dict[int, int]:
    result: dict[int, int] = {}

    def extend(prefix: int, tail: list[tuple[int, int]]):
        for pos, (i, tids) in enumerate(tail):
            itemset = prefix | (1 << i)
            result[itemset] = tids.bit_count()
            branch = []
            for j, other in tail[pos + 1:]:
                inter = tids & other
                if inter.bit_count() >= minsupp:
                    branch.append((j, inter))
            if branch:
                extend(itemset, branch)

    roots = [(i, t) for i, t in enumerate(ctx.item_tidsets) if t.bit_count() >= minsupp]
    extend(0, roots)
    return result


def _frequent_supports(ctx: BinaryContext, minsupp: int, strategy: str = "depthfirst") -> dict[int, int]:
    check_minsupp(minsupp)
    if strategy == "levelwise":
        return _levelwise(ctx, minsupp)
    if strategy == "depthfirst":
        return _depthfirst(ctx, minsupp)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")


def mine_frequent(ctx: BinaryContext, minsupp: int, strategy: Strategy = "depthfirst") -> ItemsetFamily:
    """All non-empty itemsets whose support is at least ``minsupp``."""
    return _family("frequent", minsupp, _frequent_supports(ctx, minsupp, strategy))


def _closed_masks(ctx: BinaryContext, frequent: dict[int, int]) -> dict[int, int]:
    # X is closed iff every one-item extension loses support; an infrequent
    # extension always does, so only frequent supersets need looking up.
    closed = {}
    for mask, s in frequent.items():
        for i in range(ctx.item_count):
            bit = 1 << i
            if not mask & bit and frequent.get(mask | bit) == s:
                break
        else:
            closed[mask] = s
    return closed


def _generator_masks(ctx: BinaryContext, frequent: dict[int, int]) -> dict[int, int]:
    n = ctx.object_count
    generators = {}
    for mask, s in frequent.items():
        for i in iter_bits(mask):
            sub = mask ^ (1 << i)
            if (frequent[sub] if sub else n) == s:
                break
        else:
            generators[mask] = s
    return generators


def mine_closed(ctx: BinaryContext, minsupp: int, strategy: Strategy = "depthfirst") -> ItemsetFamily:
    frequent = _frequent_supports(ctx, minsupp, strategy)
    return _family("closed", minsupp, _closed_masks(ctx, frequent))


def mine_generators(ctx: BinaryContext, minsupp: int, strategy: Strategy = "depthfirst") -> ItemsetFamily:
    frequent = _frequent_supports(ctx, minsupp, strategy)
    return _family("generators", minsupp, _generator_masks(ctx, frequent))


def mine_minimal_rare(ctx: BinaryContext, minsupp: int, strategy: Strategy = "depthfirst") -> ItemsetFamily:
    """Rare itemsets (support < ``minsupp``) whose proper subsets are all frequent.

    This is the negative border of the frequent family, found level by level:
    infrequent singletons, then the infrequent candidates generated from each
    frequent level. The empty itemset is never reported.
    """
    frequent = _frequent_supports(ctx, minsupp, strategy)
    rare: dict[int, int] = {}
    by_level: dict[int, list[tuple[int, ...]]] = {}
    for mask in frequent:
        t = tuple(iter_bits(mask))
        by_level.setdefault(len(t), []).append(t)
    for i, tids in enumerate(ctx.item_tidsets):
        if (1 << i) not in frequent:
            rare[1 << i] = tids.bit_count()
    for k in sorted(by_level):
        level = by_level[k]
        for cand in _join(level):
            mask = to_mask(cand)
            if mask not in frequent:
                rare[mask] = ctx.extent_of_mask(mask).bit_count()
    return _family("minimal-rare", minsupp, rare)


def mine_family(ctx: BinaryContext, kind: Kind, minsupp: int, strategy: Strategy = "depthfirst") -> ItemsetFamily:
    miners = {
        "frequent": mine_frequent,
        "closed": mine_closed,
        "generators": mine_generators,
        "minimal-rare": mine_minimal_rare,
    }
    try:
        miner = miners[kind]
    except KeyError:
        raise ValueError(f"unknown itemset kind {kind!r}; expected one of {', '.join(KINDS)}") from None
    return miner(ctx, minsupp, strategy)


def equivalence_classes(ctx: BinaryContext, minsupp: int) -> list[EquivalenceClass]:
    """Group the frequent itemsets by closure.

    Each class is headed by a frequent closed itemset and lists its minimal
    generators. The class of ``closure(∅)`` is included when ``∅`` is
    frequent, with ``∅`` as its generator.
    """
    frequent = _frequent_supports(ctx, minsupp)
    closed = _closed_masks(ctx, frequent)
    generators = _generator_masks(ctx, frequent)
    groups: dict[int, list[int]] = {c: [] for c in closed}
    if ctx.object_count >= minsupp:
        bottom = ctx.closure_of_mask(0)
        groups.setdefault(bottom, []).append(0)
        closed.setdefault(bottom, ctx.object_count)
    for g in generators:
        groups[ctx.closure_of_mask(g)].append(g)
    classes = []
    for c, gens in groups.items():
        head = SupportedItemset(from_mask(c), closed[c])
        members = sorted((from_mask(g) for g in gens), key=itemset_key)
        classes.append(EquivalenceClass(head, tuple(members)))
    classes.sort(key=lambda cls: cls.closed.key)
    return classes


def class_members(ctx: BinaryContext, cls: EquivalenceClass) -> list[frozenset[int]]:
    """Every itemset of the class: supersets of a generator inside the closed set."""
    top = to_mask(cls.closed.items)
    gens = [to_mask(g) for g in cls.generators]
    free = list(iter_bits(top))
    members = []
    for bits in range(1 << len(free)):
        mask = to_mask(free[j] for j in range(len(free)) if bits >> j & 1)
        if any(mask & g == g for g in gens):
            members.append(from_mask(mask))
    members.sort(key=itemset_key)
    return members
