"""Binary contexts and the Galois connection between objects and items.

Items are referred to by their position in ``BinaryContext.item_names`` (the
canonical item order). Objects are numbered from 1 in input order. Internally
both sides are kept as Python ints used as bitsets, which makes extent
intersection and closure a handful of ``&`` operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidItemsetError, InvalidObjectError

Itemset = frozenset  # frozenset[int] of item indices

_WHITESPACE = re.compile(r"\s")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def itemset_key(itemset: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key giving the canonical (cardinality, lexicographic) order."""
    ordered = tuple(sorted(itemset))
    return len(ordered), ordered


def format_itemset(item_names: Sequence[str], itemset: Iterable[int]) -> str:
    return "{" + ", ".join(item_names[i] for i in sorted(itemset)) + "}"


@dataclass(frozen=True)
class BinaryContext:
    """An objects x items incidence relation.

    ``rows[k]`` holds the item indices possessed by object ``k + 1``.
    Instances are immutable; use the constructors in :mod:`patternkit.ingest`
    or :meth:`from_rows` to build one.
    """

    item_names: tuple[str, ...]
    rows: tuple[frozenset[int], ...]

    def __post_init__(self):
        names = tuple(self.item_names)
        rows = tuple(frozenset(r) for r in self.rows)
        object.__setattr__(self, "item_names", names)
        object.__setattr__(self, "rows", rows)
        if len(set(names)) != len(names):
            raise ValueError("item labels must be unique")
        for name in names:
            if not isinstance(name, str) or not name or _WHITESPACE.search(name):
                raise ValueError(f"invalid item label {name!r}")
        m = len(names)
        for k, row in enumerate(rows, start=1):
            for i in row:
                if not isinstance(i, int) or not 0 <= i < m:
                    raise ValueError(f"object {k} references item index {i!r} outside 0..{m - 1}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[str]], item_names: Sequence[str] | None = None) -> BinaryContext:
        """Build a context from rows of item labels.

        Without ``item_names`` the item order is the order of first appearance.
        """
        names: list[str] = list(item_names) if item_names is not None else []
        index = {name: i for i, name in enumerate(names)}
        out = []
        for row in rows:
            idx = set()
            for label in row:
                if label not in index:
                    if item_names is not None:
                        raise InvalidItemsetError(f"unknown item {label!r}")
                    index[label] = len(names)
                    names.append(label)
                idx.add(index[label])
            out.append(frozenset(idx))
        return cls(tuple(names), tuple(out))

    @property
    def object_count(self) -> int:
        return len(self.rows)

    @property
    def item_count(self) -> int:
        return len(self.item_names)

    @cached_property
    def all_items_mask(self) -> int:
        return (1 << self.item_count) - 1

    @cached_property
    def all_objects_mask(self) -> int:
        return (1 << self.object_count) - 1

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(r) for r in self.rows)

    @cached_property
    def item_tidsets(self) -> tuple[int, ...]:
        """Per item, the bitset of objects (bit k = object k + 1) possessing it."""
        tids = [0] * self.item_count
        for k, row in enumerate(self.rows):
            for i in row:
                tids[i] |= 1 << k
        return tuple(tids)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.item_names)}

    def item_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InvalidItemsetError(f"unknown item {name!r}") from None

    def itemset(self, names: Iterable[str]) -> frozenset[int]:
        """Translate item labels into an itemset of indices."""
        return frozenset(self.item_index(n) for n in names)

    def format(self, itemset: Iterable[int]) -> str:
        return format_itemset(self.item_names, itemset)

    def incidence_matrix(self) -> list[list[int]]:
        return [[int(i in row) for i in range(self.item_count)] for row in self.rows]

    # bitset-level Galois operators, used by the miners

    def check_itemset(self, itemset: Iterable[int]) -> int:
        mask = 0
        for i in itemset:
            if not isinstance(i, int) or not 0 <= i < self.item_count:
                raise InvalidItemsetError(f"item index {i!r} is not valid for a context of {self.item_count} items")
            mask |= 1 << i
        return mask

    def extent_of_mask(self, mask: int) -> int:
        tids = self.all_objects_mask
        tidsets = self.item_tidsets
        for i in iter_bits(mask):
            tids &= tidsets[i]
            if not tids:
                break
        return tids

    def intent_of_tids(self, tids: int) -> int:
        items = self.all_items_mask
        rows = self.row_masks
        for k in iter_bits(tids):
            items &= rows[k]
        return items

    def closure_of_mask(self, mask: int) -> int:
        return self.intent_of_tids(self.extent_of_mask(mask))


def extent(ctx: BinaryContext, itemset: Iterable[int]) -> frozenset[int]:
    """Ids (1-based) of the objects possessing every item of ``itemset``."""
    tids = ctx.extent_of_mask(ctx.check_itemset(itemset))
    return frozenset(k + 1 for k in iter_bits(tids))


def intent(ctx: BinaryContext, objects: Iterable[int]) -> frozenset[int]:
    """Items shared by all given objects; the empty object set yields every item."""
    tids = 0
    for o in objects:
        if not isinstance(o, int) or not 1 <= o <= ctx.object_count:
            raise InvalidObjectError(f"object id {o!r} is not in 1..{ctx.object_count}")
        tids |= 1 << (o - 1)
    return from_mask(ctx.intent_of_tids(tids))


def closure(ctx: BinaryContext, itemset: Iterable[int]) -> frozenset[int]:
    return from_mask(ctx.closure_of_mask(ctx.check_itemset(itemset)))


def support(ctx: BinaryContext, itemset: Iterable[int]) -> int:
    return ctx.extent_of_mask(ctx.check_itemset(itemset)).bit_count()


def relative_support(ctx: BinaryContext, itemset: Iterable[int]) -> float:
    if ctx.object_count == 0:
        raise ValueError("relative support is undefined on a context without objects")
    return support(ctx, itemset) / ctx.object_count
