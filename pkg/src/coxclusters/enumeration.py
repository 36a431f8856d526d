"""Breadth-first enumeration of group elements by length and class.

Elements are deduplicated by their exact integer matrix, so finite and
infinite groups run through the same machinery; only the caps differ.
The pruned enumeration of maximally clustered elements relies on prefix
closure: deleting the last letter of a reduced word of a maximally
clustered element leaves a maximally clustered element, so the BFS
frontier at length l+1 only ever needs the clustered elements at
length l.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapExceededError, ScopeError
from .graphs import CoxeterGraph, classify_graph
from .triples import classification_flags
from .words import DEFAULT_MAX_NODES, GroupElement, Word, canonical_form

__all__ = ["CensusRow", "enumerate_by_length", "enumerate_all_mc"]


@dataclass(frozen=True)
class CensusRow:
    """Counts at one length: all elements, fully commutative, freely braided,
    maximally clustered."""

    length: int
    total: int
    fc: int
    fb: int
    mc: int

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "total": self.total,
            "fc": self.fc,
            "fb": self.fb,
            "mc": self.mc,
        }


def _check_budget(count: int, max_nodes: int) -> None:
    if count > max_nodes:
        raise CapExceededError(
            f"enumeration exceeded the cap of {max_nodes} elements; "
            "raise max_nodes to go further"
        )


def enumerate_by_length(
    g: CoxeterGraph, max_len: int, max_nodes: int = DEFAULT_MAX_NODES
) -> list[CensusRow]:
    """Census of all elements up to length max_len, one row per length.

    Rows stop early when the group runs out of elements.

    >>> from .graphs import coxeter_family
    >>> [row.total for row in enumerate_by_length(coxeter_family("A", 2), 3)]
    [1, 2, 2, 1]
    """
    if max_len < 0:
        raise ValueError(f"max_len must be nonnegative, got {max_len}")
    identity = GroupElement.identity(g)
    seen: set[bytes] = {identity.key}
    frontier: list[tuple[GroupElement, Word]] = [(identity, ())]
    rows = [CensusRow(0, 1, 1, 1, 1)]
    for length in range(1, max_len + 1):
        fresh: dict[bytes, tuple[GroupElement, Word]] = {}
        for e, w in frontier:
            for i in g.vertices:
                if not e.has_right_descent(i):
                    child = e.right_multiplied(i, length=length)
                    if child.key not in seen and child.key not in fresh:
                        fresh[child.key] = (child, w + (i,))
        if not fresh:
            break
        seen.update(fresh)
        _check_budget(len(seen), max_nodes)
        fc = fb = mc = 0
        for _, w in fresh.values():
            is_fc, is_fb, is_mc = classification_flags(g, w)
            fc += is_fc
            fb += is_fb
            mc += is_mc
        rows.append(CensusRow(length, len(fresh), fc, fb, mc))
        frontier = list(fresh.values())
    return rows


def enumerate_all_mc(
    g: CoxeterGraph,
    max_length: Optional[int] = None,
    max_nodes: int = DEFAULT_MAX_NODES,
    override_finiteness: bool = False,
) -> frozenset[Word]:
    """Every maximally clustered element, as its canonical reduced word.

    Terminates on its own exactly when the graph is MC-finite; for other
    graphs pass override_finiteness together with max_length or rely on
    the node cap (exceeding it raises, never truncates silently).

    >>> from .graphs import coxeter_family
    >>> len(enumerate_all_mc(coxeter_family("A", 3)))
    21
    """
    if not classify_graph(g).mc_finite and not override_finiteness:
        raise ScopeError(
            "graph admits infinitely many maximally clustered elements; "
            "pass override_finiteness=True together with a cap to sample anyway"
        )
    identity = GroupElement.identity(g)
    visited: set[bytes] = {identity.key}
    frontier: list[tuple[GroupElement, Word]] = [(identity, ())]
    found: list[tuple[GroupElement, Word]] = [(identity, ())]
    length = 0
    while frontier and (max_length is None or length < max_length):
        length += 1
        fresh: dict[bytes, tuple[GroupElement, Word]] = {}
        for e, w in frontier:
            for i in g.vertices:
                if not e.has_right_descent(i):
                    child = e.right_multiplied(i, length=length)
                    if child.key not in visited and child.key not in fresh:
                        fresh[child.key] = (child, w + (i,))
        visited.update(fresh)
        _check_budget(len(visited), max_nodes)
        frontier = []
        for child, w in fresh.values():
            if classification_flags(g, w)[2]:
                frontier.append((child, w))
        found.extend(frontier)
    return frozenset(canonical_form(g, e) for e, _ in found)
