from pathlib import Path

from hypothesis import strategies as st

from patternkit import BinaryContext

DATA = Path(__file__).parent / "data"
K_PATH = DATA / "k.txt"
K_TEXT = K_PATH.read_text()


def I(ctx, labels):
    """Itemset from a space-separated label string ("" is the empty itemset)."""
    return ctx.itemset(labels.split())


def family(ctx, fam):
    """Family members as {label-string: support} for readable assertions."""
    return {" ".join(ctx.item_names[i] for i in sorted(m.items)): m.support for m in fam}


@st.composite
def contexts(draw, max_objects=8, max_items=7, min_items=0):
    n_items = draw(st.integers(min_items, max_items))
    n_objects = draw(st.integers(0, max_objects))
    names = tuple(f"i{j}" for j in range(n_items))
    row = st.frozensets(st.integers(0, n_items - 1)) if n_items else st.just(frozenset())
    rows = draw(st.lists(row, min_size=n_objects, max_size=n_objects))
    return BinaryContext(names, tuple(rows))
