"""Inversion triples, contractibility and element classification.

An inversion triple of an element w is a triple of roots {a, b, a + b}
inside the inversion set of w.  It is contractible when its three roots
appear consecutively in the root sequence of some reduced word of w.
Consecutive appearance happens exactly at positions admitting a long
braid move, so contractibility is decided by walking the reduced word
graph and recording the triple at every long move position, instead of
rescanning every window of every root sequence.

Classification of w:

* fully commutative: no contractible triples at all;
* maximally clustered: any two intersecting contractible triples share
  their highest root;
* freely braided: maximally clustered with pairwise disjoint
  contractible triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    InvariantViolationError,
    NotMaximallyClusteredError,
    NotReducedError,
)
from .graphs import CoxeterGraph
from .words import (
    DEFAULT_MAX_NODES,
    Root,
    Word,
    braid_closure,
    evaluate_word,
    is_reduced,
    normalize_word,
    root_sequence,
)

__all__ = [
    "InversionTriple",
    "TripleReport",
    "inversion_set",
    "inversion_triples",
    "contractible_triples",
    "is_fully_commutative_word",
    "classify_element",
    "classification_flags",
    "check_subword_heredity",
    "clear_caches",
]


@dataclass(frozen=True)
class InversionTriple:
    """Roots {low_a, low_b, high} with high = low_a + low_b.

    Equality and hashing ignore the contractible flag, so the same root
    triple compares equal whether or not it has been marked.
    """

    low_a: Root
    low_b: Root
    high: Root
    contractible: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.low_b < self.low_a:
            a, b = self.low_a, self.low_b
            object.__setattr__(self, "low_a", b)
            object.__setattr__(self, "low_b", a)
        got = tuple(x + y for x, y in zip(self.low_a, self.low_b))
        if got != self.high:
            raise ValueError(f"{self.low_a} + {self.low_b} != {self.high}")

    @classmethod
    def of(cls, a: Root, b: Root, contractible: bool = False) -> "InversionTriple":
        return cls(a, b, tuple(x + y for x, y in zip(a, b)), contractible)

    def roots(self) -> frozenset[Root]:
        return frozenset((self.low_a, self.low_b, self.high))

    def intersects(self, other: "InversionTriple") -> bool:
        return bool(self.roots() & other.roots())

    def sort_key(self):
        return (self.high, self.low_a, self.low_b)

    def to_dict(self) -> dict:
        return {
            "low": [list(self.low_a), list(self.low_b)],
            "high": list(self.high),
            "contractible": self.contractible,
        }


@dataclass(frozen=True)
class TripleReport:
    """Every inversion triple of an element, with counts and flags.

    contractible_count is the number of contractible triples and
    cluster_count the number of distinct highest roots among them (which
    is also the number of braid clusters in any contracted expression).
    """

    triples: frozenset[InversionTriple]
    contractible_count: int
    cluster_count: int
    fully_commutative: bool
    freely_braided: bool
    maximally_clustered: bool

    def contractible(self) -> tuple[InversionTriple, ...]:
        return tuple(
            sorted((t for t in self.triples if t.contractible), key=InversionTriple.sort_key)
        )

    def to_dict(self) -> dict:
        return {
            "triples": [t.to_dict() for t in sorted(self.triples, key=InversionTriple.sort_key)],
            "contractible_count": self.contractible_count,
            "cluster_count": self.cluster_count,
            "flags": {
                "fully_commutative": self.fully_commutative,
                "freely_braided": self.freely_braided,
                "maximally_clustered": self.maximally_clustered,
            },
        }


def inversion_set(g: CoxeterGraph, word: Iterable[int]) -> frozenset[Root]:
    """The positive roots sent negative by the element (as a set of vectors)."""
    return frozenset(root_sequence(g, word))


def inversion_triples(g: CoxeterGraph, word: Iterable[int]) -> frozenset[InversionTriple]:
    """All triples {a, b, a + b} inside the inversion set.

    >>> from .graphs import coxeter_family
    >>> sorted(t.high for t in inversion_triples(coxeter_family("A", 2), (1, 2, 1)))
    [(1, 1)]
    """
    inv = sorted(inversion_set(g, word))
    present = set(inv)
    out = set()
    for q, a in enumerate(inv):
        for b in inv[q + 1 :]:
            if tuple(x + y for x, y in zip(a, b)) in present:
                out.add(InversionTriple.of(a, b))
    return frozenset(out)


def _collect_contractible(
    g: CoxeterGraph, word: Word, max_nodes: int
) -> set[tuple[Root, Root, Root]]:
    found: set[tuple[Root, Root, Root]] = set()

    def record(rs, base):
        a, high, b = rs[base], rs[base + 1], rs[base + 2]
        found.add((min(a, b), max(a, b), high))
        return False

    braid_closure(g, word, max_nodes=max_nodes, on_long_position=record)
    return found


def contractible_triples(
    g: CoxeterGraph, word: Iterable[int], max_nodes: int = DEFAULT_MAX_NODES
) -> frozenset[InversionTriple]:
    """The contractible inversion triples of the element of a reduced word."""
    w = normalize_word(g, word)
    found = _collect_contractible(g, w, max_nodes)
    return frozenset(
        InversionTriple(a, b, high, contractible=True) for a, b, high in found
    )


def is_fully_commutative_word(g: CoxeterGraph, word: Iterable[int]) -> bool:
    """Single-word test for full commutativity of a reduced word's element.

    Between two consecutive occurrences of a letter in a reduced word,
    the number of letters that fail to commute with it never changes
    under commuting swaps, and a long move can be brought to bear exactly
    when some such gap count is 1.  So the element is fully commutative
    exactly when every gap count is at least 2.
    """
    w = normalize_word(g, word)
    if not is_reduced(g, w):
        raise NotReducedError(f"word {w} is not reduced")
    return _fc_gap_scan(g, w)


def _fc_gap_scan(g: CoxeterGraph, w: Word) -> bool:
    last: dict[int, int] = {}
    for p, s in enumerate(w):
        prev = last.get(s)
        if prev is not None:
            count = 0
            for t in w[prev + 1 : p]:
                if g.adjacent(s, t):
                    count += 1
                    if count >= 2:
                        break
            if count < 2:
                return False
        last[s] = p
    return True


_report_cache: dict[tuple[CoxeterGraph, bytes], TripleReport] = {}
_flag_cache: dict[tuple[CoxeterGraph, bytes], tuple[bool, bool, bool]] = {}


def clear_caches() -> None:
    """Drop the per-element classification caches."""
    _report_cache.clear()
    _flag_cache.clear()


def _mc_flags(contractible: Iterable[tuple[Root, Root, Root]]) -> tuple[bool, bool]:
    """(maximally clustered, pairwise disjoint) for canonical triple keys."""
    highs_seen: dict[Root, Root] = {}  # root -> highest root of a triple containing it
    mc = True
    disjoint = True
    for a, b, high in contractible:
        for r in (a, b, high):
            other = highs_seen.get(r)
            if other is None:
                highs_seen[r] = high
            else:
                disjoint = False
                if other != high:
                    mc = False
        if not mc:
            break
    return mc, disjoint


def classify_element(
    g: CoxeterGraph, word: Iterable[int], max_nodes: int = DEFAULT_MAX_NODES
) -> TripleReport:
    """Full triple report of the element of a reduced word.

    Cached per element (not per word), since enumerations reach the same
    element through many words.

    >>> from .graphs import coxeter_family
    >>> r = classify_element(coxeter_family("A", 2), (1, 2, 1))
    >>> r.contractible_count, r.cluster_count, r.maximally_clustered
    (1, 1, True)
    """
    w = normalize_word(g, word)
    e = evaluate_word(g, w)
    cache_key = (g, e.key)
    hit = _report_cache.get(cache_key)
    if hit is not None:
        return hit
    found = _collect_contractible(g, w, max_nodes)
    inv = sorted(inversion_set(g, w))
    present = set(inv)
    triples = set()
    for q, a in enumerate(inv):
        for b in inv[q + 1 :]:
            high = tuple(x + y for x, y in zip(a, b))
            if high in present:
                triples.add(
                    InversionTriple(a, b, high, contractible=(a, b, high) in found)
                )
    triple_keys = {(t.low_a, t.low_b, t.high) for t in triples}
    if not found <= triple_keys:
        raise InvariantViolationError("contractible triple outside the inversion set")
    mc, disjoint = _mc_flags(sorted(found))
    report = TripleReport(
        triples=frozenset(triples),
        contractible_count=len(found),
        cluster_count=len({high for _, _, high in found}),
        fully_commutative=not found,
        freely_braided=mc and disjoint,
        maximally_clustered=mc,
    )
    _report_cache[cache_key] = report
    _flag_cache[cache_key] = (
        report.fully_commutative,
        report.freely_braided,
        report.maximally_clustered,
    )
    return report


def classification_flags(
    g: CoxeterGraph, word: Iterable[int], max_nodes: int = DEFAULT_MAX_NODES
) -> tuple[bool, bool, bool]:
    """(fully commutative, freely braided, maximally clustered) flags only.

    Cheaper than classify_element on large sweeps: the single-word test
    settles fully commutative elements without touching the reduced word
    graph, and the traversal aborts at the first pair of intersecting
    contractible triples with different highest roots.
    """
    w = normalize_word(g, word)
    e = evaluate_word(g, w)
    cache_key = (g, e.key)
    hit = _flag_cache.get(cache_key)
    if hit is not None:
        return hit
    if _fc_gap_scan(g, w):
        flags = (True, True, True)
    else:
        found: set[tuple[Root, Root, Root]] = set()
        highs_seen: dict[Root, Root] = {}
        state = {"disjoint": True}

        def record(rs, base):
            a, high, b = rs[base], rs[base + 1], rs[base + 2]
            key = (min(a, b), max(a, b), high)
            if key in found:
                return False
            found.add(key)
            for r in key:
                other = highs_seen.get(r)
                if other is None:
                    highs_seen[r] = high
                elif other != high:
                    return True  # two intersecting triples, different highs
                else:
                    state["disjoint"] = False
            return False

        _, aborted = braid_closure(g, w, max_nodes=max_nodes, on_long_position=record)
        if aborted:
            flags = (False, False, False)
        else:
            if not found:
                raise InvariantViolationError(
                    f"gap scan of {w} found a braid pattern but the closure did not"
                )
            flags = (False, state["disjoint"], True)
    _flag_cache[cache_key] = flags
    return flags


def check_subword_heredity(g: CoxeterGraph, word: Iterable[int]) -> bool:
    """Every contiguous subword of a reduced word of a maximally clustered
    element is reduced and maximally clustered; verify that for one word.

    Raises if the input itself is not reduced or not maximally clustered.
    """
    w = normalize_word(g, word)
    if not is_reduced(g, w):
        raise NotReducedError(f"word {w} is not reduced")
    if not classification_flags(g, w)[2]:
        raise NotMaximallyClusteredError(f"element of {w} is not maximally clustered")
    n = len(w)
    for a in range(n):
        for b in range(a + 1, n + 1):
            sub = w[a:b]
            if not is_reduced(g, sub):
                return False
            if not classification_flags(g, sub)[2]:
                return False
    return True
