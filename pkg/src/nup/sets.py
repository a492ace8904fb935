"""Finite subsets of the group, product tables with full factorization lists.

A GroupSet is a strictly increasing (hence duplicate-free) tuple of
NormalForms in the canonical order, optionally carrying one label per
element.  A FactorizationTable records, for every element z of the product
set X*Y, the complete list of index pairs (i, j) with X[i] * Y[j] = z, so
callers can count multiplicities and extract witnesses.

Set file format: UTF-8 text, one word per line in the word grammar, "#"
starts a comment, blank lines are ignored, and an optional trailing
"| label" annotates the element.
"""

from __future__ import annotations

import os
from typing import Iterable, Optional, Sequence

from .words import GroupParams, NormalForm, from_string, to_string


class GroupSet:
    __slots__ = ("params", "elements", "labels", "duplicates_removed", "_index")

    def __init__(self, params: GroupParams, elements: tuple, labels: Optional[tuple], duplicates_removed: int):
        self.params = params
        self.elements = elements
        self.labels = labels
        self.duplicates_removed = duplicates_removed
        self._index = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, w):
        return w in self._position_map()

    def __eq__(self, other):
        if not isinstance(other, GroupSet):
            return NotImplemented
        return self.params == other.params and self.elements == other.elements

    def __repr__(self):
        return f"GroupSet(k={self.params.k}, size={len(self.elements)})"

    def _position_map(self) -> dict:
        if self._index is None:
            self._index = {w: i for i, w in enumerate(self.elements)}
        return self._index

    def index_of(self, w: NormalForm) -> Optional[int]:
        return self._position_map().get(w)

    def label_of(self, i: int):
        return None if self.labels is None else self.labels[i]

    def inverse_set(self) -> "GroupSet":
        """The set of inverses, re-sorted; labels are dropped."""
        return make_set(self.params, [w.inverse() for w in self.elements])


def make_set(params: GroupParams, elements: Iterable[NormalForm], labels: Optional[Sequence] = None) -> GroupSet:
    """Sort and deduplicate; the number of duplicates removed is recorded.

    Callers that rely on distinctness assert ``duplicates_removed == 0``.
    """
    elems = list(elements)
    for w in elems:
        if w.k != params.k:
            raise ValueError(f"element of group k={w.k} in a set over k={params.k}")
    if labels is not None:
        labels = list(labels)
        if len(labels) != len(elems):
            raise ValueError(f"{len(labels)} labels for {len(elems)} elements")
        pairs = sorted(zip(elems, labels), key=lambda t: t[0].sort_key())
        out_e: list[NormalForm] = []
        out_l: list = []
        dups = 0
        for w, lab in pairs:
            if out_e and out_e[-1] == w:
                dups += 1
                continue
            out_e.append(w)
            out_l.append(lab)
        return GroupSet(params, tuple(out_e), tuple(out_l), dups)
    elems.sort(key=lambda w: w.sort_key())
    out: list[NormalForm] = []
    dups = 0
    for w in elems:
        if out and out[-1] == w:
            dups += 1
            continue
        out.append(w)
    return GroupSet(params, tuple(out), None, dups)


class FactorizationTable:
    """All factorizations of the product set X*Y, keyed by product element."""

    __slots__ = ("x", "y", "entries")

    def __init__(self, x: GroupSet, y: GroupSet, entries: dict):
        self.x = x
        self.y = y
        self.entries = entries

    def total_pairs(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def multiplicity(self, z: NormalForm) -> int:
        return len(self.entries.get(z, ()))

    def __len__(self):
        return len(self.entries)


def _rows_worker(args):
    x_chunk, y_elems, offset = args
    entries: dict = {}
    for di, x in enumerate(x_chunk):
        i = offset + di
        for j, y in enumerate(y_elems):
            z = x * y
            entries.setdefault(z, []).append((i, j))
    return entries


def product_table(X: GroupSet, Y: GroupSet, workers: int = 1) -> FactorizationTable:
    """Complete factorization table of X*Y, deterministically ordered.

    With workers > 1 the row range is split across processes and the partial
    tables are merged in row order, so the result is identical to the
    sequential one.
    """
    if X.params != Y.params:
        raise ValueError("product of sets over different groups")
    if workers > 1 and len(X) >= 4 * workers:
        chunks = []
        step = (len(X) + workers - 1) // workers
        for lo in range(0, len(X), step):
            chunks.append((X.elements[lo : lo + step], Y.elements, lo))
        try:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=workers) as pool:
                partials = list(pool.map(_rows_worker, chunks))
        except (OSError, ValueError):  # no usable process pool; fall back
            partials = [_rows_worker(c) for c in chunks]
        entries: dict = {}
        for part in partials:
            for z, pairs in part.items():
                entries.setdefault(z, []).extend(pairs)
        for pairs in entries.values():
            pairs.sort()
        return FactorizationTable(X, Y, entries)
    entries = {}
    y_elems = Y.elements
    for i, x in enumerate(X.elements):
        for j, y in enumerate(y_elems):
            z = x * y
            entries.setdefault(z, []).append((i, j))
    return FactorizationTable(X, Y, entries)


def unique_products(X: GroupSet, Y: GroupSet, table: Optional[FactorizationTable] = None) -> list:
    """The table entries with exactly one factorization, in canonical order."""
    if table is None:
        table = product_table(X, Y)
    singles = [(z, pairs[0]) for z, pairs in table.entries.items() if len(pairs) == 1]
    singles.sort(key=lambda t: t[0].sort_key())
    return singles


def is_nonunique_square(S: GroupSet) -> tuple[bool, Optional[tuple]]:
    """True when S*S has no uniquely represented element.

    On False the first uniquely represented element and its factorization is
    returned as a witness.
    """
    if len(S) == 0:
        raise ValueError("empty set")
    singles = unique_products(S, S)
    if singles:
        return False, singles[0]
    return True, None


# -- set files ----------------------------------------------------------------


def save_set_file(gset: GroupSet, path: str | os.PathLike, header: str = "") -> None:
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    for i, w in enumerate(gset.elements):
        lab = gset.label_of(i)
        if lab is None:
            lines.append(to_string(w))
        elif isinstance(lab, tuple):
            lines.append(f"{to_string(w)} | {' '.join(str(x) for x in lab)}")
        else:
            lines.append(f"{to_string(w)} | {lab}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_set_file(path: str | os.PathLike, params: GroupParams) -> GroupSet:
    from .families import SliceLabel

    elements: list[NormalForm] = []
    labels: list = []
    any_label = False
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            word_text, _, label_text = line.partition("|")
            elements.append(from_string(word_text.strip(), params))
            label_text = label_text.strip()
            if label_text:
                any_label = True
                parts = label_text.split()
                if len(parts) == 3 and parts[0] in ("X", "Y", "Z"):
                    try:
                        labels.append(SliceLabel(parts[0], int(parts[1]), int(parts[2])))
                        continue
                    except ValueError:
                        pass
                labels.append(label_text)
            else:
                labels.append(None)
    return make_set(params, elements, labels if any_label else None)
