"""Concept lattices: enumeration, Hasse diagram and text export."""

from __future__ import annotations

from dataclasses import dataclass

from .context import BinaryContext, format_itemset, from_mask, iter_bits, itemset_key, to_mask
from .errors import LatticeError


@dataclass(frozen=True)
class FormalConcept:
    extent: frozenset[int]  # object ids, 1-based
    intent: frozenset[int]

    @property
    def key(self):
        return itemset_key(self.intent)


@dataclass(frozen=True)
class LatticeDiagram:
    concepts: tuple[FormalConcept, ...]
    covers: tuple[tuple[int, int], ...]
    """(child, parent) index pairs; the child has the larger intent."""


def _next_intent(ctx: BinaryContext, current: int) -> int | None:
    for i in reversed(range(ctx.item_count)):
        bit = 1 << i
        if current & bit:
            continue
        candidate = ctx.closure_of_mask(((bit - 1) & current) | bit)
        if (candidate & ~current) & (bit - 1) == 0:
            return candidate
    return None


def build_concepts(ctx: BinaryContext) -> list[FormalConcept]:
    """All formal concepts of ``ctx``, in canonical intent order.

    Intents are stepped through in lectic order with Next Closure, starting
    from the closure of the empty set.
    """
    concepts = []
    current: int | None = ctx.closure_of_mask(0)
    while current is not None:
        tids = ctx.extent_of_mask(current)
        concepts.append(FormalConcept(frozenset(k + 1 for k in iter_bits(tids)), from_mask(current)))
        current = _next_intent(ctx, current)
    concepts.sort(key=lambda c: c.key)
    return concepts


def hasse(concepts: list[FormalConcept]) -> LatticeDiagram:
    """Cover relation (transitive reduction of intent inclusion) of a concept set.

    Raises :class:`LatticeError` when the intents are not closed under
    intersection or the set lacks a top concept, i.e. it cannot be the full
    concept set of a context.
    """
    ordered = sorted(concepts, key=lambda c: c.key)
    masks = [to_mask(c.intent) for c in ordered]
    if len(set(masks)) != len(masks):
        raise LatticeError("duplicate intents in concept set")
    present = set(masks)
    for a in masks:
        for b in masks:
            if a & b not in present:
                raise LatticeError(
                    f"intents are not closed under intersection: missing {sorted(from_mask(a & b))}"
                )
    covers = []
    for child, cm in enumerate(masks):
        below = [p for p, pm in enumerate(masks) if pm != cm and pm & cm == pm]
        # a parent covers the child when no other candidate sits between them
        for p in below:
            pm = masks[p]
            if not any(q != p and masks[q] & pm == pm and masks[q] != pm for q in below):
                covers.append((child, p))
    covers.sort()
    return LatticeDiagram(tuple(ordered), tuple(covers))


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _extent_text(extent) -> str:
    return "{" + ", ".join(str(o) for o in sorted(extent)) + "}"


def export_dot(diagram: LatticeDiagram, item_names, verbose: bool = False) -> str:
    """Graphviz description of the diagram.

    Nodes are ``c0``..``cN`` in concept order, labelled with the intent and the
    extent size (the full extent with ``verbose``). Edges run from child to
    parent, so the top concept is drawn at the top with ``rankdir=BT``.
    """
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for k, concept in enumerate(diagram.concepts):
        label = format_itemset(item_names, concept.intent)
        if verbose:
            label += " " + _extent_text(concept.extent)
        else:
            label += f" ({len(concept.extent)})"
        lines.append(f"  {_quote(f'c{k}')} [label={_quote(label)}];")
    for child, parent in diagram.covers:
        lines.append(f"  {_quote(f'c{child}')} -> {_quote(f'c{parent}')};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_text(diagram: LatticeDiagram, item_names) -> str:
    """Line-oriented listing: one ``concept`` line per node, one ``cover`` line per edge."""
    lines = []
    for k, concept in enumerate(diagram.concepts):
        lines.append(f"concept c{k} {format_itemset(item_names, concept.intent)} {_extent_text(concept.extent)}")
    for child, parent in diagram.covers:
        lines.append(f"cover c{child} c{parent}")
    return "".join(line + "\n" for line in lines)
