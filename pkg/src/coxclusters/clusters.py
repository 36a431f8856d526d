"""Braid clusters, contracted expressions and cluster contraction.

A braid cluster is a palindromic word i_1 ... i_n i_(n+1) i_n ... i_1
on distinct letters in which every one of the first n letters has
exactly one later neighbor in the Coxeter graph.  Reduced words of
maximally clustered elements can always be rewritten, using commuting
swaps only, into a contracted form: plain stretches alternating with
braid clusters, one cluster per highest root.

The contraction operator removes the first half of a chosen normalized
cluster (and sometimes its middle letter) from a contracted expression;
iterating it over every cluster lands on a fully commutative element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import (
    ClusterIndexError,
    InvariantViolationError,
    NormalizationError,
    NotBraidClusterError,
    NotContractedError,
    NotMaximallyClusteredError,
    NotReducedError,
    ScopeError,
    WordSpecError,
)
from .graphs import CoxeterGraph, classify_graph, induced_subgraph
from .triples import TripleReport, classify_element
from .words import (
    DEFAULT_MAX_NODES,
    GroupElement,
    Word,
    canonical_form,
    commutation_class,
    evaluate_word,
    is_reduced,
    normalize_word,
    reduced_word_graph,
    root_sequence,
)

__all__ = [
    "BraidCluster",
    "ClusterGraph",
    "ContractedDecomposition",
    "is_braid_cluster",
    "cluster_graph",
    "is_normalized",
    "normalize_cluster",
    "contracted_decomposition",
    "find_contracted_expression",
    "contract_cluster",
    "contract_fully",
    "parse_bracketed",
]


def _cluster_shape_failure(g: CoxeterGraph, w: Word) -> Optional[str]:
    """Why w is not a braid cluster, or None if it is one."""
    if len(w) < 3 or len(w) % 2 == 0:
        return "length must be odd and at least 3"
    if w != w[::-1]:
        return "word is not palindromic"
    n = len(w) // 2
    letters = w[: n + 1]
    if len(set(letters)) != len(letters):
        return "letters up to the middle are not pairwise distinct"
    for q in range(n):
        later = [r for r in range(q + 1, n + 1) if g.adjacent(w[q], w[r])]
        if len(later) != 1:
            return (
                f"letter {w[q]} at position {q} has {len(later)} later neighbors, "
                "expected exactly one"
            )
    return None


def is_braid_cluster(g: CoxeterGraph, word: Iterable[int]) -> bool:
    """Whether a word has the braid cluster shape.

    >>> from .graphs import coxeter_family
    >>> g = coxeter_family("A", 3)
    >>> is_braid_cluster(g, (1, 2, 3, 2, 1)), is_braid_cluster(g, (2, 1, 3, 1, 2))
    (True, False)
    """
    return _cluster_shape_failure(g, normalize_word(g, word)) is None


@dataclass(frozen=True)
class BraidCluster:
    """A braid cluster word together with its middle letter and half length."""

    word: Word
    middle: int
    half_length: int

    @classmethod
    def from_word(cls, g: CoxeterGraph, word: Iterable[int]) -> "BraidCluster":
        w = normalize_word(g, word)
        failure = _cluster_shape_failure(g, w)
        if failure is not None:
            raise NotBraidClusterError(f"{w} is not a braid cluster: {failure}")
        n = len(w) // 2
        return cls(w, w[n], n)

    def letters(self) -> tuple[int, ...]:
        """The distinct letters, in order of first appearance."""
        return self.word[: self.half_length + 1]


@dataclass(frozen=True)
class ClusterGraph:
    """Induced graph on a cluster's letters, each edge oriented toward the later letter."""

    graph: CoxeterGraph
    arrows: tuple[tuple[int, int], ...]

    @property
    def sink(self) -> int:
        sources = {a for a, _ in self.arrows}
        sinks = [v for v in self.graph.vertices if v not in sources]
        if len(sinks) != 1:  # pragma: no cover - excluded at construction
            raise InvariantViolationError(f"expected a unique sink, found {sinks}")
        return sinks[0]

    def has_branch_point(self) -> bool:
        return any(self.graph.degree(v) >= 3 for v in self.graph.vertices)


def cluster_graph(g: CoxeterGraph, c: BraidCluster) -> ClusterGraph:
    """Oriented letter graph of a braid cluster, with its invariants checked.

    The cluster shape forces a connected tree whose unique sink is the
    middle letter, and in the supported setting the tree is a path or a
    one-branch tree of type A, D or E.  Violations are surfaced, never
    ignored: they mean the cluster came from a buggy upstream step.

    >>> from .graphs import coxeter_family
    >>> g = coxeter_family("A", 3)
    >>> cluster_graph(g, BraidCluster.from_word(g, (1, 2, 3, 2, 1))).arrows
    ((1, 2), (2, 3))
    """
    letters = c.letters()
    induced = induced_subgraph(g, letters)
    arrows = []
    for q in range(len(letters)):
        for r in range(q + 1, len(letters)):
            if g.adjacent(letters[q], letters[r]):
                arrows.append((letters[q], letters[r]))
    if len(arrows) != len(induced.edges):
        raise InvariantViolationError(
            f"cluster {c.word}: oriented {len(arrows)} arrows "
            f"but the letter graph has {len(induced.edges)} edges"
        )
    sources = {a for a, _ in arrows}
    sinks = [v for v in induced.vertices if v not in sources]
    if sinks != [c.middle]:
        raise InvariantViolationError(
            f"cluster {c.word}: sinks {sinks}, expected only the middle {c.middle}"
        )
    if len(induced.components()) != 1:
        raise InvariantViolationError(f"cluster {c.word}: letter graph is disconnected")
    if len(induced.edges) != len(induced.vertices) - 1:
        raise InvariantViolationError(f"cluster {c.word}: letter graph has a cycle")
    report = classify_graph(induced)
    if not report.mc_finite:
        raise InvariantViolationError(
            f"cluster {c.word}: letter graph is not of type A, D or E "
            f"({report.per_component[0].reason})"
        )
    return ClusterGraph(induced, tuple(sorted(arrows)))


def is_normalized(g: CoxeterGraph, c: BraidCluster) -> bool:
    """Whether the middle letter sits where contraction needs it.

    True when the letter graph has no branch point and the middle is
    extremal, or when the middle is the unique branch point.

    >>> from .graphs import coxeter_family
    >>> g = coxeter_family("A", 3)
    >>> is_normalized(g, BraidCluster.from_word(g, (1, 3, 2, 3, 1)))
    False
    """
    induced = induced_subgraph(g, c.letters())
    branch = [v for v in induced.vertices if induced.degree(v) >= 3]
    if not branch:
        return induced.degree(c.middle) <= 1
    return len(branch) == 1 and branch[0] == c.middle


def normalize_cluster(
    g: CoxeterGraph, c: BraidCluster, max_nodes: int = DEFAULT_MAX_NODES
) -> BraidCluster:
    """A normalized braid cluster for the same group element.

    Searches the full reduced word graph of the cluster element for
    normalized cluster-shaped words and returns the lexicographically
    least; returns c unchanged when it is already normalized.

    >>> from .graphs import coxeter_family
    >>> g = coxeter_family("A", 3)
    >>> normalize_cluster(g, BraidCluster.from_word(g, (1, 3, 2, 3, 1))).word
    (1, 2, 3, 2, 1)
    """
    if is_normalized(g, c):
        return c
    words = reduced_word_graph(g, c.word, max_nodes=max_nodes)
    best: Optional[Word] = None
    for w in words:
        if best is not None and w >= best:
            continue
        if _cluster_shape_failure(g, w) is None:
            candidate = BraidCluster(w, w[len(w) // 2], len(w) // 2)
            if is_normalized(g, candidate):
                best = w
    if best is None:
        raise NormalizationError(
            f"no normalized braid cluster represents {c.word}: searched "
            f"{len(words)} reduced words of the element with canonical form "
            f"{canonical_form(g, evaluate_word(g, c.word))}"
        )
    return BraidCluster(best, best[len(best) // 2], len(best) // 2)


Segment = Union[Word, BraidCluster]


@dataclass(frozen=True)
class ContractedDecomposition:
    """Alternating plain words and braid clusters whose concatenation is reduced.

    segments[0], segments[2], ... are (possibly empty) plain words and
    segments[1], segments[3], ... are BraidCluster values; the counts
    match the owner element: one cluster per highest root, and half
    lengths summing to the number of contractible triples.
    """

    segments: tuple[Segment, ...]
    owner: GroupElement

    def __post_init__(self):
        if len(self.segments) % 2 == 0:
            raise ValueError("segments must start and end with plain words")
        for q, seg in enumerate(self.segments):
            if q % 2 == 0 and not isinstance(seg, tuple):
                raise ValueError(f"segment {q} should be a plain word, got {seg!r}")
            if q % 2 == 1 and not isinstance(seg, BraidCluster):
                raise ValueError(f"segment {q} should be a cluster, got {seg!r}")

    @property
    def clusters(self) -> tuple[BraidCluster, ...]:
        return tuple(self.segments[1::2])

    @property
    def cluster_count(self) -> int:
        return len(self.segments) // 2

    @property
    def half_length_total(self) -> int:
        return sum(c.half_length for c in self.clusters)

    @property
    def word(self) -> Word:
        out: list[int] = []
        for q, seg in enumerate(self.segments):
            out.extend(seg if q % 2 == 0 else seg.word)
        return tuple(out)

    def bracketed(self) -> str:
        parts: list[str] = []
        for q, seg in enumerate(self.segments):
            if q % 2 == 0:
                parts.extend(str(i) for i in seg)
            else:
                parts.append("[" + " ".join(str(i) for i in seg.word) + "]")
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "segments": [
                {"type": "word", "letters": list(seg)}
                if q % 2 == 0
                else {"type": "cluster", "letters": list(seg.word)}
                for q, seg in enumerate(self.segments)
            ],
            "bracketed": self.bracketed(),
        }


def _segments_from_items(items: list) -> tuple[Segment, ...]:
    """Collapse a mixed list of letters and BraidClusters into alternating form."""
    segments: list[Segment] = []
    plain: list[int] = []
    for item in items:
        if isinstance(item, BraidCluster):
            segments.append(tuple(plain))
            segments.append(item)
            plain = []
        else:
            plain.append(item)
    segments.append(tuple(plain))
    return tuple(segments)


def _mc_report(g: CoxeterGraph, w: Word) -> TripleReport:
    if not is_reduced(g, w):
        raise NotReducedError(f"word {w} is not reduced")
    report = classify_element(g, w)
    if not report.maximally_clustered:
        raise NotMaximallyClusteredError(
            f"element of {w} is not maximally clustered"
        )
    return report


def contracted_decomposition(g: CoxeterGraph, word: Iterable[int]) -> ContractedDecomposition:
    """Parse a contracted reduced word into plain stretches and braid clusters.

    Greedy longest-match from the left with backtracking; a parse only
    counts when it hits the element's own accounting: as many clusters
    as distinct highest roots, and cluster half lengths summing to the
    number of contractible triples.  Words that fail to parse are not in
    contracted form; run find_contracted_expression first.

    >>> from .graphs import coxeter_family
    >>> d = contracted_decomposition(coxeter_family("A", 3), (3, 1, 2, 1))
    >>> d.bracketed()
    '3 [1 2 1]'
    """
    w = normalize_word(g, word)
    report = _mc_report(g, w)
    target_k = report.cluster_count
    target_n = report.contractible_count
    n = len(w)
    failed: set[tuple[int, int, int]] = set()

    def search(pos: int, k_done: int, n_done: int) -> Optional[list]:
        if pos == n:
            return [] if (k_done == target_k and n_done == target_n) else None
        state = (pos, k_done, n_done)
        if state in failed:
            return None
        top = n - pos
        if top % 2 == 0:
            top -= 1
        for length in range(top, 2, -2):
            half = length // 2
            if k_done + 1 > target_k or n_done + half > target_n:
                continue
            sub = w[pos : pos + length]
            if _cluster_shape_failure(g, sub) is None:
                rest = search(pos + length, k_done + 1, n_done + half)
                if rest is not None:
                    return [BraidCluster(sub, sub[half], half)] + rest
        rest = search(pos + 1, k_done, n_done)
        if rest is not None:
            return [w[pos]] + rest
        failed.add(state)
        return None

    items = search(0, 0, 0)
    if items is None:
        raise NotContractedError(
            f"word {w} is not in contracted form (need {target_k} clusters with half "
            f"lengths summing to {target_n}); run find_contracted_expression first"
        )
    return ContractedDecomposition(_segments_from_items(items), evaluate_word(g, w))


def _group_by_high(report: TripleReport) -> dict:
    groups: dict = {}
    for t in report.triples:
        if t.contractible:
            groups.setdefault(t.high, []).append(t)
    return groups


def _is_contracted_word(g: CoxeterGraph, w: Word, groups: dict) -> bool:
    """Root sequence check: every highest-root group sits in a centered window.

    For each group, the 2m+1 roots must occupy consecutive positions,
    the highest root must be the exact center, and each pair of summands
    must mirror around it.
    """
    pos = {r: q for q, r in enumerate(root_sequence(g, w))}
    for high, ts in groups.items():
        center = pos[high]
        idxs = sorted([center] + [pos[r] for t in ts for r in (t.low_a, t.low_b)])
        if idxs != list(range(idxs[0], idxs[0] + len(idxs))):
            return False
        if center - idxs[0] != idxs[-1] - center:
            return False
        if any(pos[t.low_a] + pos[t.low_b] != 2 * center for t in ts):
            return False
    return True


def find_contracted_expression(
    g: CoxeterGraph, word: Iterable[int], max_nodes: int = DEFAULT_MAX_NODES
) -> Word:
    """The least member of the commutation class in contracted form.

    Every reduced word of a maximally clustered element is commutation
    equivalent to a contracted one, so under the precondition this never
    fails; absence means a bug and raises accordingly.

    >>> from .graphs import coxeter_family
    >>> find_contracted_expression(coxeter_family("A", 3), (1, 2, 3, 1))
    (1, 2, 1, 3)
    """
    w = normalize_word(g, word)
    report = _mc_report(g, w)
    groups = _group_by_high(report)
    for u in sorted(commutation_class(g, w, max_nodes=max_nodes)):
        if _is_contracted_word(g, u, groups):
            return u
    raise InvariantViolationError(
        f"no member of the commutation class of {w} is contracted"
    )


def contract_cluster(g: CoxeterGraph, d: ContractedDecomposition, j: int) -> Word:
    """Contract the j-th cluster (1-based) of a contracted decomposition.

    With the cluster normalized and written c' i c'' around its middle
    letter i, the output drops c' and keeps i c'', except that i is also
    dropped when the cluster's letter graph has a branch point and i
    cannot reduce after the prefix.  Only graphs whose components embed
    in the E series are supported.

    >>> from .graphs import coxeter_family
    >>> g = coxeter_family("A", 2)
    >>> contract_cluster(g, contracted_decomposition(g, (1, 2, 1)), 1)
    (2, 1)
    """
    if not classify_graph(g).mc_finite:
        raise ScopeError(
            "cluster contraction needs a graph whose components embed in the "
            "E series; this one admits infinitely many maximally clustered elements"
        )
    if not 1 <= j <= d.cluster_count:
        raise ClusterIndexError(
            f"cluster index {j} out of range: decomposition has {d.cluster_count}"
        )
    c = d.clusters[j - 1]
    if not is_normalized(g, c):
        c = normalize_cluster(g, c)
    before = d.segments[: 2 * j - 1]
    after = d.segments[2 * j :]
    prefix: list[int] = []
    for q, seg in enumerate(before):
        prefix.extend(seg if q % 2 == 0 else seg.word)
    suffix: list[int] = []
    for q, seg in enumerate(after):
        suffix.extend(seg if q % 2 == 0 else seg.word)
    second_half = c.word[c.half_length + 1 :]
    graph_j = induced_subgraph(g, c.letters())
    has_branch = any(graph_j.degree(v) >= 3 for v in graph_j.vertices)
    if has_branch and not is_reduced(g, tuple(prefix) + (c.middle,)):
        kept = second_half
    else:
        kept = (c.middle,) + second_half
    out = tuple(prefix) + kept + tuple(suffix)
    if not is_reduced(g, out):
        raise InvariantViolationError(
            f"contraction of cluster {j} of {d.word} gave a non-reduced word {out}"
        )
    return out


def contract_fully(g: CoxeterGraph, word: Iterable[int]) -> Word:
    """Contract every cluster in turn, landing on a fully commutative element.

    Re-finds a contracted expression after each step, once per cluster
    of the original element.

    >>> from .graphs import coxeter_family
    >>> contract_fully(coxeter_family("A", 3), (1, 2, 3, 2, 1))
    (3, 2, 1)
    """
    if not classify_graph(g).mc_finite:
        raise ScopeError(
            "cluster contraction needs a graph whose components embed in the "
            "E series; this one admits infinitely many maximally clustered elements"
        )
    w = normalize_word(g, word)
    report = _mc_report(g, w)
    for _ in range(report.cluster_count):
        u = find_contracted_expression(g, w)
        d = contracted_decomposition(g, u)
        w = contract_cluster(g, d, 1)
    return w


def parse_bracketed(g: CoxeterGraph, text: str) -> ContractedDecomposition:
    """Parse the bracketed serialization, e.g. ``"3 [1 2 1]"``.

    The result is validated the same way contracted_decomposition
    validates its parse, so the bracketing must match the element's own
    cluster accounting.
    """
    toks = text.replace("[", " [ ").replace("]", " ] ").replace(",", " ").split()
    items: list = []
    current: Optional[list[int]] = None
    for tok in toks:
        if tok == "[":
            if current is not None:
                raise WordSpecError(f"nested '[' in {text!r}")
            current = []
        elif tok == "]":
            if current is None:
                raise WordSpecError(f"unmatched ']' in {text!r}")
            items.append(BraidCluster.from_word(g, current))
            current = None
        else:
            try:
                letter = int(tok)
            except ValueError as exc:
                raise WordSpecError(f"bad token {tok!r} in {text!r}") from exc
            if current is None:
                items.append(letter)
            else:
                current.append(letter)
    if current is not None:
        raise WordSpecError(f"unclosed '[' in {text!r}")
    segments = _segments_from_items(items)
    d = ContractedDecomposition(segments, evaluate_word(g, tuple(
        i for q, seg in enumerate(segments) for i in (seg if q % 2 == 0 else seg.word)
    )))
    w = d.word
    report = _mc_report(g, w)
    if d.cluster_count != report.cluster_count or d.half_length_total != report.contractible_count:
        raise NotContractedError(
            f"bracketing of {w} does not match the element: need "
            f"{report.cluster_count} clusters with half lengths summing to "
            f"{report.contractible_count}, got {d.cluster_count} and {d.half_length_total}"
        )
    return d
