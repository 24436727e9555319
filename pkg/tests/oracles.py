"""Brute-force reference implementations used to check the miners.

These work directly on ``ctx.rows`` with plain Python sets and powerset
enumeration; they share no code with the library beyond the context type.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import chain, combinations


def powerset(items):
    items = sorted(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def ext(ctx, itemset):
    return frozenset(k + 1 for k, row in enumerate(ctx.rows) if set(itemset) <= row)


def inte(ctx, objects):
    common = set(range(len(ctx.item_names)))
    for o in objects:
        common &= ctx.rows[o - 1]
    return frozenset(common)


def clo(ctx, itemset):
    return inte(ctx, ext(ctx, itemset))


def supp(ctx, itemset):
    return len(ext(ctx, itemset))


def all_itemsets(ctx):
    return powerset(range(len(ctx.item_names)))


def frequent(ctx, minsupp):
    return {x: supp(ctx, x) for x in all_itemsets(ctx) if x and supp(ctx, x) >= minsupp}


def closed(ctx, minsupp):
    return {x: s for x, s in frequent(ctx, minsupp).items() if clo(ctx, x) == x}


def generators(ctx, minsupp):
    out = {}
    for x, s in frequent(ctx, minsupp).items():
        if all(clo(ctx, y) != clo(ctx, x) for y in powerset(x) if y != x):
            out[x] = s
    return out


def minimal_rare(ctx, minsupp):
    out = {}
    for x in all_itemsets(ctx):
        if not x or supp(ctx, x) >= minsupp:
            continue
        # the empty set is not part of the subset condition
        if all(supp(ctx, y) >= minsupp for y in powerset(x) if y and y != x):
            out[x] = supp(ctx, x)
    return out


def measures(ctx, a, b):
    """(supp_abs, supp_rel, conf, lift, conviction) straight from the definitions."""
    n = len(ctx.rows)
    sa, sb, sab = supp(ctx, a), supp(ctx, b), supp(ctx, a | b)
    conf = Fraction(sab, sa)
    rel_b = Fraction(sb, n)
    lift = None if sb == 0 else conf / rel_b
    if conf == 1:
        conv = math.inf if rel_b < 1 else None
    else:
        conv = (1 - rel_b) / (1 - conf)
    return sab, Fraction(sab, n), conf, lift, conv


def all_rules(ctx, minsupp, minconf):
    """Every split A -> B of disjoint non-empty itemsets meeting both thresholds."""
    minconf = Fraction(minconf)
    items = range(len(ctx.item_names))
    out = {}
    for a in all_itemsets(ctx):
        if not a or supp(ctx, a) == 0:
            continue
        for b in powerset(set(items) - a):
            if not b:
                continue
            z = a | b
            if supp(ctx, z) >= minsupp and Fraction(supp(ctx, z), supp(ctx, a)) >= minconf:
                out[(a, b)] = measures(ctx, a, b)
    return out


def pseudo_closed(ctx):
    """Pseudo-closed sets by the recursive definition, smallest first."""
    found = []
    for p in sorted(all_itemsets(ctx), key=len):
        if clo(ctx, p) == p:
            continue
        if all(clo(ctx, q) <= p for q in found if q < p):
            found.append(p)
    return found


def implication_closure(x, implications):
    x = set(x)
    changed = True
    while changed:
        changed = False
        for premise, conclusion in implications:
            if premise <= x and not conclusion <= x:
                x |= conclusion
                changed = True
    return frozenset(x)


def concepts(ctx):
    intents = {clo(ctx, x) for x in all_itemsets(ctx)}
    return {(ext(ctx, i), i) for i in intents}


def covers(intents):
    """Transitive reduction of strict inclusion over a set of intents."""
    intents = list(intents)
    out = set()
    for c in intents:
        for p in intents:
            if p < c and not any(p < q < c for q in intents):
                out.add((c, p))
    return out
