"""Command-line front end.

Every subcommand reads its input from a path argument or, when none is given,
from standard input, and writes to standard output (or ``-o``), so commands
chain with shell pipes::

    patternkit randgen --objects 20 --items 6 --seed 1 \\
        | patternkit itemsets --kind frequent --minsupp 30% \\
        | patternkit topk --measure support --k 5

Exit status is 0 on success, 1 on data errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

from . import context as core
from . import formats, ingest, itemsets, lattice, postprocess, rules
from .errors import PatternError

ITEMSET_LINE_HELP = "itemset lines look like '{a, b} (3)': items in canonical order, absolute support"
RULE_LINE_HELP = (
    "rule lines look like '{b} => {e} (supp=4 [0.800]; conf=1.000; lift=1.250; conv=inf)'; "
    "measures are rounded to 3 decimals, 'inf' and 'undef' mark degenerate values"
)
CONTEXT_HELP = (
    "context formats: 'transactions' (one object per line, space-separated items) "
    "or 'matrix' (header of item names, then rows of 0/1); '#' starts a comment"
)

# library operation -> the subcommand exposing it
OPERATIONS = {
    "extent": "galois",
    "intent": "galois",
    "closure": "galois",
    "support": "galois",
    "parse_transactions": "convert",
    "parse_matrix": "convert",
    "serialize": "convert",
    "transpose": "transpose",
    "complement": "complement",
    "discretize": "discretize",
    "random_context": "randgen",
    "mine_frequent": "itemsets",
    "mine_closed": "itemsets",
    "mine_generators": "itemsets",
    "mine_minimal_rare": "itemsets",
    "equivalence_classes": "eqclasses",
    "compute_measures": "rules",
    "mine_all_rules": "rules",
    "mine_mnr_rules": "rules",
    "mine_dg_basis": "rules",
    "mine_rare_rules": "rules",
    "build_concepts": "lattice",
    "hasse": "lattice",
    "export_dot": "lattice",
    "filter_rules": "filter",
    "top_k": "topk",
    "colorize": "colorize",
}


class Threshold:
    """A support threshold given as ``N`` objects or ``P%`` of the objects."""

    def __init__(self, text: str):
        self.text = text
        if text.endswith("%"):
            try:
                self.percent = Fraction(text[:-1])
            except ValueError:
                raise argparse.ArgumentTypeError(f"invalid percentage {text!r}") from None
            if not 0 < self.percent <= 100:
                raise argparse.ArgumentTypeError(f"percentage must lie in (0, 100], got {text!r}")
            self.absolute = None
        else:
            try:
                self.absolute = int(text)
            except ValueError:
                raise argparse.ArgumentTypeError(f"threshold must be an integer or a percentage, got {text!r}") from None
            if self.absolute < 1:
                raise argparse.ArgumentTypeError(f"absolute threshold must be >= 1, got {text!r}")
            self.percent = None

    def resolve(self, object_count: int) -> int:
        if self.absolute is not None:
            return self.absolute
        return max(1, math.ceil(self.percent * object_count / 100))

    def __repr__(self):
        return self.text


def _confidence(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid confidence {text!r}") from None
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"confidence must lie in (0, 1], got {text!r}")
    return value


def _density(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid density {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"density must lie in [0, 1], got {text!r}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text!r}")
    return value


def _names(values: list[str] | None) -> list[str]:
    out = []
    for value in values or []:
        out.extend(v for v in value.split(",") if v)
    return out


# --- I/O helpers -----------------------------------------------------------------


def _read_input(args) -> str:
    if args.input in (None, "-"):
        data = sys.stdin.buffer.read()
        source = "<stdin>"
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
        source = args.input
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise PatternError(f"{source}: not valid UTF-8 ({exc.reason} at byte {exc.start})") from None


def _read_context(args) -> core.BinaryContext:
    return ingest.parse_context(_read_input(args), args.format)


def _read_listing(args) -> formats.Listing:
    return formats.read_listing(_read_input(args))


# --- subcommands -----------------------------------------------------------------


def cmd_convert(args) -> str:
    ctx = ingest.parse_context(_read_input(args), args.source)
    return ingest.serialize(ctx, args.to)


def cmd_transpose(args) -> str:
    return ingest.serialize(ingest.transpose(_read_context(args)), args.to or args.format)


def cmd_complement(args) -> str:
    return ingest.serialize(ingest.complement(_read_context(args)), args.to or args.format)


def cmd_discretize(args) -> str:
    table = ingest.parse_numeric_table(_read_input(args))
    spec = ingest.DiscretizationSpec(method=args.method, bins=args.bins)
    return ingest.serialize(ingest.discretize(table, spec), args.to)


def cmd_randgen(args) -> str:
    ctx = ingest.random_context(args.objects, args.items, args.density, args.seed)
    return ingest.serialize(ctx, args.to)


def cmd_galois(args) -> str:
    ctx = _read_context(args)
    lines = []
    if args.objects is not None:
        try:
            ids = [int(v) for v in _names([args.objects])]
        except ValueError:
            raise PatternError(f"invalid object list {args.objects!r}") from None
        common = core.intent(ctx, ids)
        lines.append(f"intent {ctx.format(common)}")
    else:
        items = ctx.itemset(_names([args.items or ""]))
        ext = core.extent(ctx, items)
        lines.append(f"extent {{{', '.join(str(o) for o in sorted(ext))}}}")
        lines.append(f"closure {ctx.format(core.closure(ctx, items))}")
        lines.append(f"support {core.support(ctx, items)}")
    return "".join(line + "\n" for line in lines)


def cmd_itemsets(args) -> str:
    ctx = _read_context(args)
    family = itemsets.mine_family(ctx, args.kind, args.minsupp.resolve(ctx.object_count), args.strategy)
    return formats.write_family(ctx, family)


def cmd_eqclasses(args) -> str:
    ctx = _read_context(args)
    minsupp = args.minsupp.resolve(ctx.object_count)
    return formats.write_classes(ctx, itemsets.equivalence_classes(ctx, minsupp), minsupp)


def cmd_rules(args) -> str:
    ctx = _read_context(args)
    minsupp = args.minsupp.resolve(ctx.object_count)
    if args.basis == "dg":
        found = rules.mine_dg_basis(ctx)
        return formats.write_rules(ctx, found, basis="dg")
    if args.basis == "rare":
        found = rules.mine_rare_rules(ctx, minsupp)
        return formats.write_rules(ctx, found, basis="rare", minsupp=minsupp)
    found = rules.mine_rules(ctx, args.basis, minsupp, args.minconf)
    return formats.write_rules(ctx, found, basis=args.basis, minsupp=minsupp, minconf=f"{float(args.minconf):g}")


def cmd_lattice(args) -> str:
    ctx = _read_context(args)
    diagram = lattice.hasse(lattice.build_concepts(ctx))
    if args.dot:
        return lattice.export_dot(diagram, ctx.item_names, verbose=args.verbose)
    return lattice.export_text(diagram, ctx.item_names)


def _rules_listing(args) -> formats.Listing:
    listing = _read_listing(args)
    if listing.kind != "rules":
        raise PatternError(f"{args.command} expects a rule listing, got an itemset listing")
    return listing


def cmd_filter(args) -> str:
    listing = _rules_listing(args)
    f = postprocess.RuleFilter(
        min_antecedent=args.min_antecedent,
        max_antecedent=args.max_antecedent,
        min_consequent=args.min_consequent,
        max_consequent=args.max_consequent,
        required=_names(args.require),
        side=args.side,
    )
    return formats.write_listing(listing, postprocess.filter_rules(listing.rules, f, listing.item_names))


def cmd_topk(args) -> str:
    listing = _read_listing(args)
    if listing.kind == "itemsets" and args.measure != "support":
        raise PatternError(f"itemsets can only be ranked by support, not {args.measure!r}")
    best = postprocess.top_k(listing.units, args.measure, args.k, args.direction)
    return formats.write_listing(listing, best)


def cmd_colorize(args) -> str:
    listing = _rules_listing(args)
    items = _names(args.items)
    if args.mode == "terminal" and os.environ.get("NO_COLOR"):
        items_shown = []
    else:
        items_shown = items
    postprocess.check_items(items, listing.item_names)
    body = postprocess.colorize(listing.rules, items_shown, listing.item_names, args.mode)
    return "".join(h + "\n" for h in listing.header) + body


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patternkit",
        description="Itemset, association rule and concept lattice mining over binary contexts.",
        epilog=CONTEXT_HELP,
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def command(name, func, help, epilog=None, reads=True, context_input=True):
        p = sub.add_parser(name, help=help, description=help, epilog=epilog)
        if reads:
            p.add_argument("input", nargs="?", help="input file (default: standard input)")
        if context_input:
            p.add_argument("-f", "--format", choices=ingest.FORMATS, default="transactions",
                           help="input context format (default: transactions)")
        p.add_argument("-o", "--output", help="output file (default: standard output)")
        p.set_defaults(func=func)
        return p

    def minsupp(p, default=None):
        p.add_argument("-s", "--minsupp", type=Threshold, required=default is None, default=default,
                       help="minimum support: an absolute count N >= 1 or a percentage P%% (rounded up)")

    p = command("convert", cmd_convert, "convert a context between file formats", CONTEXT_HELP, context_input=False)
    p.add_argument("--from", dest="source", choices=ingest.FORMATS, default="transactions")
    p.add_argument("--to", choices=ingest.FORMATS, default="matrix")

    for name, func, what in (
        ("transpose", cmd_transpose, "swap objects and items (new items are o1..oN)"),
        ("complement", cmd_complement, "flip every cell of the context"),
    ):
        p = command(name, func, what, CONTEXT_HELP)
        p.add_argument("--to", choices=ingest.FORMATS, help="output format (default: same as input)")

    p = command("discretize", cmd_discretize, "turn a numeric CSV table into interval items",
                "input: comma-separated values with a header line, empty field = missing", context_input=False)
    p.add_argument("--method", choices=ingest.METHODS, default="equal-width")
    p.add_argument("--bins", type=_positive, default=3)
    p.add_argument("--to", choices=ingest.FORMATS, default="transactions")

    p = command("randgen", cmd_randgen, "generate a random context", CONTEXT_HELP, reads=False, context_input=False)
    p.add_argument("--objects", type=_non_negative, required=True)
    p.add_argument("--items", type=_non_negative, required=True)
    p.add_argument("--density", type=_density, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--to", choices=ingest.FORMATS, default="transactions")

    p = command("galois", cmd_galois, "extent, closure and support of an itemset, or intent of objects")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--items", help="comma-separated item labels (default: the empty itemset)")
    group.add_argument("--objects", help="comma-separated object ids (1-based)")

    p = command("itemsets", cmd_itemsets, "mine an itemset family", ITEMSET_LINE_HELP)
    p.add_argument("-k", "--kind", choices=itemsets.KINDS, default="frequent")
    p.add_argument("--strategy", choices=itemsets.STRATEGIES, default="depthfirst")
    minsupp(p)

    p = command("eqclasses", cmd_eqclasses, "list closure equivalence classes with their generators",
                "lines look like '{b, e} <- [{b}, {e}] (4)': closed itemset, generators, support")
    minsupp(p)

    p = command("rules", cmd_rules, "generate association rules or a rule basis", RULE_LINE_HELP)
    p.add_argument("-b", "--basis", choices=rules.BASES, default="all")
    minsupp(p, default=Threshold("1"))
    p.add_argument("-c", "--minconf", type=_confidence, default=Fraction(1, 2),
                   help="minimum confidence in (0, 1] (default 0.5; ignored by dg and rare)")

    p = command("lattice", cmd_lattice, "build the concept lattice",
                "default output: 'concept cK {intent} {extent}' and 'cover cCHILD cPARENT' lines")
    p.add_argument("--dot", action="store_true", help="emit a Graphviz digraph instead")
    p.add_argument("--verbose", action="store_true", help="label dot nodes with full extents")

    p = command("filter", cmd_filter, "filter a rule listing", RULE_LINE_HELP, context_input=False)
    p.add_argument("--min-antecedent", type=_non_negative)
    p.add_argument("--max-antecedent", type=_non_negative)
    p.add_argument("--min-consequent", type=_non_negative)
    p.add_argument("--max-consequent", type=_non_negative)
    p.add_argument("--require", action="append", metavar="ITEM", help="item that must occur (repeatable, comma-separated)")
    p.add_argument("--side", choices=postprocess.SIDES, default="either")

    p = command("topk", cmd_topk, "keep the k best itemsets or rules under a measure",
                ITEMSET_LINE_HELP + "; " + RULE_LINE_HELP, context_input=False)
    p.add_argument("--measure", choices=rules.MEASURES, default="support")
    p.add_argument("-k", "--k", type=_non_negative, required=True)
    p.add_argument("--direction", choices=("desc", "asc"), default="desc")

    p = command("colorize", cmd_colorize, "highlight items in a rule listing",
                RULE_LINE_HELP + "; set NO_COLOR to disable terminal colors", context_input=False)
    p.add_argument("--items", action="append", required=True, metavar="ITEM")
    p.add_argument("--mode", choices=("terminal", "markers"), default="markers")

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        text = args.func(args)
    except (PatternError, ValueError, OSError) as exc:
        print(f"patternkit {args.command}: error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early; silence the interpreter's flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 1
    except OSError as exc:
        print(f"patternkit {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
