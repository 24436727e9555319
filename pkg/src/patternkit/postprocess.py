"""Filtering, ranking and highlighting of mined itemsets and rules."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import FilterError
from .formats import format_measures, format_rule
from .itemsets import SupportedItemset
from .rules import MEASURES, AssociationRule

Side = Literal["antecedent", "consequent", "either"]
SIDES = ("antecedent", "consequent", "either")


@dataclass(frozen=True)
class RuleFilter:
    min_antecedent: int | None = None
    max_antecedent: int | None = None
    min_consequent: int | None = None
    max_consequent: int | None = None
    required: tuple[str, ...] = ()
    side: Side = "either"

    def __post_init__(self):
        object.__setattr__(self, "required", tuple(self.required))
        for lo, hi, what in (
            (self.min_antecedent, self.max_antecedent, "antecedent"),
            (self.min_consequent, self.max_consequent, "consequent"),
        ):
            if lo is not None and hi is not None and lo > hi:
                raise FilterError(f"{what} length bounds are inverted: min {lo} > max {hi}")
        if self.side not in SIDES:
            raise FilterError(f"unknown side {self.side!r}; expected one of {', '.join(SIDES)}")


def _within(n: int, lo: int | None, hi: int | None) -> bool:
    return (lo is None or n >= lo) and (hi is None or n <= hi)


def check_items(items: Iterable[str], item_names: Sequence[str]) -> frozenset[int]:
    index = {name: i for i, name in enumerate(item_names)}
    out = set()
    for name in items:
        if name not in index:
            raise FilterError(f"unknown item {name!r}")
        out.add(index[name])
    return frozenset(out)


def filter_rules(rules: Iterable[AssociationRule], f: RuleFilter, item_names: Sequence[str]) -> list[AssociationRule]:
    """Keep the rules meeting every constraint of ``f``, in input order.

    Every required item must occur on the selected side.
    """
    required = check_items(f.required, item_names)
    kept = []
    for rule in rules:
        if not _within(len(rule.antecedent), f.min_antecedent, f.max_antecedent):
            continue
        if not _within(len(rule.consequent), f.min_consequent, f.max_consequent):
            continue
        if f.side == "antecedent":
            pool = rule.antecedent
        elif f.side == "consequent":
            pool = rule.consequent
        else:
            pool = rule.antecedent | rule.consequent
        if required <= pool:
            kept.append(rule)
    return kept


def _measure(unit, measure: str):
    if isinstance(unit, SupportedItemset):
        if measure != "support":
            raise ValueError(f"itemsets can only be ranked by support, not {measure!r}")
        return unit.support
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; expected one of {', '.join(MEASURES)}")
    return unit.measures.get(measure)


def top_k(units: Sequence, measure: str, k: int, direction: Literal["desc", "asc"] = "desc") -> list:
    """The ``k`` best units under ``measure``.

    ``desc`` ranks high values first (``inf`` above every finite value); ``asc``
    the reverse. Undefined values always rank last. Ties fall back to canonical
    order, never to input order.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if direction not in ("desc", "asc"):
        raise ValueError(f"unknown direction {direction!r}")
    sign = -1 if direction == "desc" else 1

    def rank(unit):
        value = _measure(unit, measure)
        if value is None:
            return (1, 0, unit.key)
        return (0, sign * value, unit.key)

    return sorted(units, key=rank)[:k]


COLOR_START = "\x1b[1;31m"
COLOR_END = "\x1b[0m"
MARK_START = "[*"
MARK_END = "*]"


def _highlight(item_names: Sequence[str], itemset: frozenset[int], selected: frozenset[int], start: str, end: str) -> str:
    names = [
        f"{start}{item_names[i]}{end}" if i in selected else item_names[i]
        for i in sorted(itemset)
    ]
    return "{" + ", ".join(names) + "}"


def colorize(
    rules: Iterable[AssociationRule],
    items: Iterable[str],
    item_names: Sequence[str],
    mode: Literal["terminal", "markers"] = "markers",
) -> str:
    """Rule listing with each occurrence of a selected item highlighted.

    ``markers`` wraps items as ``[*item*]``; ``terminal`` uses ANSI color.
    Removing the wrappers gives back the plain listing byte for byte.
    """
    if mode == "terminal":
        start, end = COLOR_START, COLOR_END
    elif mode == "markers":
        start, end = MARK_START, MARK_END
    else:
        raise ValueError(f"unknown colorize mode {mode!r}")
    selected = check_items(items, item_names)
    lines = []
    for rule in rules:
        if not selected:
            lines.append(format_rule(item_names, rule))
            continue
        lines.append(
            f"{_highlight(item_names, rule.antecedent, selected, start, end)} => "
            f"{_highlight(item_names, rule.consequent, selected, start, end)} "
            f"({format_measures(rule.measures)})"
        )
    return "".join(line + "\n" for line in lines)


_STRIP = re.compile(re.escape(MARK_START) + r"(\S*?)" + re.escape(MARK_END) + r"|\x1b\[[0-9;]*m")


def strip_highlights(text: str) -> str:
    return _STRIP.sub(lambda m: m.group(1) or "", text)
