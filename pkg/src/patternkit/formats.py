"""Line formats for itemset families, rules and equivalence classes.

Itemset line::

    {b, e} (4)

Rule line (measures rounded half-up to 3 decimals, ``inf``/``undef`` for the
degenerate cases)::

    {b} => {e} (supp=4 [0.800]; conf=1.000; lift=1.250; conv=inf)

Listings start with ``#`` header lines: one describing what was mined and an
``# items:`` line giving the canonical item order, which lets downstream
commands read a listing back without the original context.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .context import BinaryContext, format_itemset
from .errors import ParseError
from .itemsets import EquivalenceClass, ItemsetFamily, SupportedItemset
from .rules import AssociationRule, RuleMeasures

INF = "inf"
UNDEF = "undef"


def round3(value: Fraction | float | None) -> str:
    if value is None:
        return UNDEF
    if value == math.inf:
        return INF
    value = Fraction(value)
    scaled = math.floor(value * 1000 + Fraction(1, 2))
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 1000)
    return f"{sign}{whole}.{frac:03d}"


def format_supported(item_names: Sequence[str], member: SupportedItemset) -> str:
    return f"{format_itemset(item_names, member.items)} ({member.support})"


def format_measures(m: RuleMeasures) -> str:
    return (
        f"supp={m.support_abs} [{round3(m.support_rel)}]; conf={round3(m.confidence)}; "
        f"lift={round3(m.lift)}; conv={round3(m.conviction)}"
    )


def format_rule(item_names: Sequence[str], rule: AssociationRule) -> str:
    return (
        f"{format_itemset(item_names, rule.antecedent)} => "
        f"{format_itemset(item_names, rule.consequent)} ({format_measures(rule.measures)})"
    )


def format_class(item_names: Sequence[str], cls: EquivalenceClass) -> str:
    gens = ", ".join(format_itemset(item_names, g) for g in cls.generators)
    return f"{format_itemset(item_names, cls.closed.items)} <- [{gens}] ({cls.closed.support})"


def _header(kind: str, params: dict, ctx: BinaryContext) -> list[str]:
    fields = " ".join(f"{k}={v}" for k, v in params.items())
    return [
        f"# {kind} {fields} objects={ctx.object_count} items={ctx.item_count}".replace("  ", " "),
        "# items: " + " ".join(ctx.item_names),
    ]


def write_family(ctx: BinaryContext, family: ItemsetFamily) -> str:
    lines = _header("itemsets", {"kind": family.kind, "minsupp": family.minsupp}, ctx)
    lines += [format_supported(ctx.item_names, m) for m in family.members]
    return "".join(line + "\n" for line in lines)


def write_rules(ctx: BinaryContext, rules: Iterable[AssociationRule], **params) -> str:
    lines = _header("rules", params, ctx)
    lines += [format_rule(ctx.item_names, r) for r in rules]
    return "".join(line + "\n" for line in lines)


def write_classes(ctx: BinaryContext, classes: Iterable[EquivalenceClass], minsupp: int) -> str:
    lines = _header("eqclasses", {"minsupp": minsupp}, ctx)
    lines += [format_class(ctx.item_names, c) for c in classes]
    return "".join(line + "\n" for line in lines)


# --- reading listings back -------------------------------------------------------


@dataclass
class Listing:
    """A parsed itemset or rule listing."""

    kind: str  # "itemsets" or "rules"
    header: list[str]
    item_names: list[str]
    itemsets: list[SupportedItemset] = field(default_factory=list)
    rules: list[AssociationRule] = field(default_factory=list)

    @property
    def units(self) -> list:
        return self.rules if self.kind == "rules" else self.itemsets


class _Items:
    def __init__(self, declared: list[str] | None):
        self.names: list[str] = list(declared or [])
        self.index = {n: i for i, n in enumerate(self.names)}
        self.frozen = declared is not None

    def parse(self, text: str, lineno: int) -> frozenset[int]:
        if not (text.startswith("{") and text.endswith("}")):
            raise ParseError(f"expected an itemset in braces, found {text!r}", lineno)
        inner = text[1:-1]
        out = set()
        for name in inner.split(", ") if inner else []:
            if not name or " " in name:
                raise ParseError(f"malformed itemset {text!r}", lineno)
            if name not in self.index:
                if self.frozen:
                    raise ParseError(f"item {name!r} is not declared in the listing header", lineno)
                self.index[name] = len(self.names)
                self.names.append(name)
            out.add(self.index[name])
        return frozenset(out)


_ITEMSET_LINE = re.compile(r"^(\{.*\}) \((\d+)\)$")
_MEASURES = re.compile(
    r"^supp=(\d+) \[(-?\d+\.\d+)\]; conf=(\S+); lift=(\S+); conv=(\S+)$"
)


def _parse_value(token: str, lineno: int, allow_inf: bool = False):
    if token == UNDEF:
        return None
    if token == INF and allow_inf:
        return math.inf
    try:
        return Fraction(token)
    except ValueError:
        raise ParseError(f"invalid measure value {token!r}", lineno) from None


def _parse_rule(line: str, lineno: int, items: _Items) -> AssociationRule:
    left, sep, right = line.partition(" => ")
    cut = right.find(" (")
    if not sep or cut < 0 or not right.endswith(")"):
        raise ParseError(f"malformed rule line {line!r}", lineno)
    antecedent = items.parse(left, lineno)
    consequent = items.parse(right[:cut], lineno)
    match = _MEASURES.match(right[cut + 2:-1])
    if not match:
        raise ParseError(f"malformed rule measures in {line!r}", lineno)
    supp, rel, conf, lift, conv = match.groups()
    measures = RuleMeasures(
        int(supp),
        Fraction(rel),
        _parse_value(conf, lineno),
        _parse_value(lift, lineno),
        _parse_value(conv, lineno, allow_inf=True),
    )
    return AssociationRule(antecedent, consequent, measures)


def read_listing(text: str) -> Listing:
    """Parse an itemset or rule listing produced by :func:`write_family` or
    :func:`write_rules`. The kind is taken from the header, or guessed from the
    first data line for header-less input.
    """
    header: list[str] = []
    declared: list[str] | None = None
    kind: str | None = None
    data: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            if data:
                continue
            header.append(line)
            body = line[1:].strip()
            if body.startswith("items:"):
                declared = body[len("items:"):].split()
            elif body.startswith("itemsets ") or body.startswith("rules "):
                kind = body.split()[0]
            elif body.startswith("eqclasses"):
                raise ParseError("equivalence class listings cannot be read back", lineno)
            continue
        data.append((lineno, line))
    if kind is None:
        kind = "rules" if data and " => " in data[0][1] else "itemsets"
    items = _Items(declared)
    listing = Listing(kind, header, items.names)
    for lineno, line in data:
        if kind == "rules":
            listing.rules.append(_parse_rule(line, lineno, items))
        else:
            match = _ITEMSET_LINE.match(line)
            if not match:
                raise ParseError(f"malformed itemset line {line!r}", lineno)
            listing.itemsets.append(SupportedItemset(items.parse(match.group(1), lineno), int(match.group(2))))
    return listing


def write_listing(listing: Listing, units: list | None = None) -> str:
    """Render ``units`` (defaults to the listing's own) with the listing's header."""
    units = listing.units if units is None else units
    lines = list(listing.header)
    if not any(h[1:].strip().startswith("items:") for h in listing.header):
        lines.append("# items: " + " ".join(listing.item_names))
    if listing.kind == "rules":
        lines += [format_rule(listing.item_names, r) for r in units]
    else:
        lines += [format_supported(listing.item_names, m) for m in units]
    return "".join(line + "\n" for line in lines)
