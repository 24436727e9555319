"""Association rules, their interestingness measures, and rule bases.

All measures are derived from integer support counts and held as
:class:`fractions.Fraction`. Conviction may be ``math.inf``; a measure that is
undefined is ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .context import BinaryContext, from_mask, itemset_key, to_mask
from .errors import InvalidRuleError, ThresholdError, UndefinedConfidenceError
from .itemsets import (
    _closed_masks,
    _frequent_supports,
    _generator_masks,
    check_minsupp,
    mine_minimal_rare,
)

Measure = Union[Fraction, float, None]
MEASURES = ("support", "confidence", "lift", "conviction")
BASES = ("all", "mnr", "dg", "rare")


@dataclass(frozen=True)
class RuleMeasures:
    support_abs: int
    support_rel: Fraction
    confidence: Fraction
    lift: Fraction | None
    conviction: Fraction | float | None

    def get(self, name: str) -> Measure:
        if name == "support":
            return self.support_abs
        if name in ("confidence", "lift", "conviction"):
            return getattr(self, name)
        raise ValueError(f"unknown measure {name!r}; expected one of {', '.join(MEASURES)}")


@dataclass(frozen=True)
class AssociationRule:
    antecedent: frozenset[int]
    consequent: frozenset[int]
    measures: RuleMeasures

    @property
    def key(self):
        return itemset_key(self.antecedent), itemset_key(self.consequent)


def measures_from_counts(n: int, supp_a: int, supp_b: int, supp_ab: int) -> RuleMeasures:
    """Measures of a rule A -> B from |O|, supp(A), supp(B) and supp(A u B)."""
    if supp_a == 0:
        raise UndefinedConfidenceError("confidence is undefined when the antecedent has support 0")
    confidence = Fraction(supp_ab, supp_a)
    rel_b = Fraction(supp_b, n)
    lift = confidence / rel_b if supp_b else None
    if confidence == 1:
        conviction = math.inf if rel_b < 1 else None
    else:
        conviction = (1 - rel_b) / (1 - confidence)
    return RuleMeasures(supp_ab, Fraction(supp_ab, n), confidence, lift, conviction)


def compute_measures(ctx: BinaryContext, antecedent, consequent) -> RuleMeasures:
    a = ctx.check_itemset(antecedent)
    b = ctx.check_itemset(consequent)
    if not a or not b:
        raise InvalidRuleError("antecedent and consequent must be non-empty")
    if a & b:
        raise InvalidRuleError("antecedent and consequent overlap")
    return _measures(ctx, a, b)


def _measures(ctx: BinaryContext, a: int, b: int) -> RuleMeasures:
    ext_a = ctx.extent_of_mask(a)
    ext_b = ctx.extent_of_mask(b)
    return measures_from_counts(ctx.object_count, ext_a.bit_count(), ext_b.bit_count(), (ext_a & ext_b).bit_count())


def _rule(ctx: BinaryContext, a: int, b: int) -> AssociationRule:
    return AssociationRule(from_mask(a), from_mask(b), _measures(ctx, a, b))


def sort_rules(rules):
    return sorted(rules, key=lambda r: r.key)


def check_minconf(minconf) -> Fraction:
    """Normalize ``minconf`` to an exact fraction in (0, 1].

    Floats are read through their shortest decimal repr, so ``0.8`` is 4/5.
    """
    if isinstance(minconf, bool):
        raise ThresholdError(f"invalid minimum confidence {minconf!r}")
    try:
        value = Fraction(repr(minconf)) if isinstance(minconf, float) else Fraction(minconf)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ThresholdError(f"invalid minimum confidence {minconf!r}") from None
    if not 0 < value <= 1:
        raise ThresholdError(f"minimum confidence must lie in (0, 1], got {minconf!r}")
    return value


def _confident(supp_ab: int, supp_a: int, minconf: Fraction) -> bool:
    return supp_ab * minconf.denominator >= minconf.numerator * supp_a


def mine_all_rules(ctx: BinaryContext, minsupp: int, minconf) -> list[AssociationRule]:
    """Every rule A -> Z \\ A from a frequent Z with confidence >= ``minconf``."""
    minconf = check_minconf(minconf)
    frequent = _frequent_supports(ctx, check_minsupp(minsupp))
    rules = []
    for z, supp_z in frequent.items():
        if z.bit_count() < 2:
            continue
        # proper non-empty submasks of z
        a = (z - 1) & z
        while a:
            if _confident(supp_z, frequent[a], minconf):
                rules.append(_rule(ctx, a, z ^ a))
            a = (a - 1) & z
    return sort_rules(rules)


def mine_mnr_rules(ctx: BinaryContext, minsupp: int, minconf) -> list[AssociationRule]:
    """Minimal non-redundant (informative) basis.

    Antecedents are frequent generators g. The exact part has g -> closure(g)\\g;
    the approximate part has g -> c\\g for each frequent closed c strictly
    above closure(g) with enough confidence.
    """
    minconf = check_minconf(minconf)
    frequent = _frequent_supports(ctx, check_minsupp(minsupp))
    closed = _closed_masks(ctx, frequent)
    generators = _generator_masks(ctx, frequent)
    rules = []
    for g, supp_g in generators.items():
        gc = ctx.closure_of_mask(g)
        if gc != g:
            rules.append(_rule(ctx, g, gc ^ g))
        if minconf == 1:
            continue
        for c, supp_c in closed.items():
            if c != gc and c & gc == gc and _confident(supp_c, supp_g, minconf):
                rules.append(_rule(ctx, g, c ^ g))
    return sort_rules(rules)


def implication_closure(mask: int, implications: list[tuple[int, int]]) -> int:
    """Smallest superset of ``mask`` closed under premise -> conclusion pairs."""
    changed = True
    while changed:
        changed = False
        for premise, conclusion in implications:
            if premise & mask == premise and conclusion & ~mask:
                mask |= conclusion
                changed = True
    return mask


def pseudo_intents(ctx: BinaryContext) -> list[tuple[int, int]]:
    """(pseudo-closed set, its closure) pairs as bitmasks, in lectic order.

    Next Closure over the implication closure of the pairs found so far: every
    set it visits is either an intent or the next pseudo-intent.
    """
    m = ctx.item_count
    full = ctx.all_items_mask
    found: list[tuple[int, int]] = []
    current = implication_closure(0, found)
    while True:
        closed = ctx.closure_of_mask(current)
        if closed != current:
            found.append((current, closed))
        if current == full:
            break
        for i in reversed(range(m)):
            bit = 1 << i
            if current & bit:
                continue
            lower = (bit - 1) & current
            candidate = implication_closure(lower | bit, found)
            if (candidate & ~current) & (bit - 1) == 0:
                current = candidate
                break
        else:  # pragma: no cover - unreachable, ``full`` is always visited last
            break
    return found


def mine_dg_basis(ctx: BinaryContext) -> list[AssociationRule]:
    """Duquenne-Guigues basis: P -> closure(P)\\P for every pseudo-closed P.

    Unlike the other rule families the antecedent may be empty here.
    """
    rules = []
    for p, pc in pseudo_intents(ctx):
        supp = ctx.extent_of_mask(p).bit_count()
        if supp:
            measures = _measures(ctx, p, pc ^ p)
        else:
            # P never occurs: the implication holds vacuously
            measures = RuleMeasures(0, Fraction(0, max(ctx.object_count, 1)), Fraction(1), None, None)
        rules.append(AssociationRule(from_mask(p), from_mask(pc ^ p), measures))
    return sort_rules(rules)


def mine_rare_rules(ctx: BinaryContext, minsupp: int) -> list[AssociationRule]:
    """Exact rules m -> closure(m)\\m from non-zero minimal rare itemsets m."""
    rules = []
    for member in mine_minimal_rare(ctx, minsupp):
        if member.support == 0:
            continue
        m = to_mask(member.items)
        mc = ctx.closure_of_mask(m)
        if mc != m:
            rules.append(_rule(ctx, m, mc ^ m))
    return sort_rules(rules)


def mine_rules(ctx: BinaryContext, basis: str, minsupp: int = 1, minconf=1) -> list[AssociationRule]:
    if basis == "all":
        return mine_all_rules(ctx, minsupp, minconf)
    if basis == "mnr":
        return mine_mnr_rules(ctx, minsupp, minconf)
    if basis == "dg":
        return mine_dg_basis(ctx)
    if basis == "rare":
        return mine_rare_rules(ctx, minsupp)
    raise ValueError(f"unknown rule basis {basis!r}; expected one of {', '.join(BASES)}")
