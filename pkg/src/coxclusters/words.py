"""Words, roots, root sequences and braid moves.

Conventions
-----------
A word is a tuple of vertex labels, read left to right as a product of
simple reflections.  A root is a tuple of integer coordinates over the
simple roots, ordered by sorted vertex label.  All arithmetic is exact.

The root sequence of a reduced word i_1 ... i_n lists, for q = 1 ... n,
the positive root sent negative by the length-q suffix but not by the
length-(q-1) suffix:

    r_q = s_{i_n} s_{i_(n-1)} ... s_{i_(n-q+2)} (alpha_{i_(n-q+1)})

so r_1 is the simple root of the last letter and initial segments of the
sequence are the root sequences of suffix subwords.  Letter position p
(0-based) corresponds to root index n - p - 1.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CapExceededError,
    GraphSpecError,
    InvariantViolationError,
    NoBraidMoveError,
    NotReducedError,
    RootSequenceError,
    WordSpecError,
)
from .graphs import CoxeterGraph

__all__ = [
    "Word",
    "Root",
    "DEFAULT_MAX_NODES",
    "GroupElement",
    "simple_root",
    "root_height",
    "is_positive_root",
    "cartan_pairing",
    "reflect",
    "root_sequence",
    "is_reduced",
    "word_from_root_sequence",
    "evaluate_word",
    "some_reduced_word",
    "canonical_form",
    "apply_braid_move",
    "reduced_word_graph",
    "commutation_class",
    "positive_roots",
    "parse_word",
    "format_word",
    "format_root",
]

Word = tuple[int, ...]
Root = tuple[int, ...]

DEFAULT_MAX_NODES = 10**6


def normalize_word(g: CoxeterGraph, word: Iterable[int]) -> Word:
    """Coerce to a tuple and check every letter is a vertex of g."""
    w = tuple(word)
    for i in w:
        g.check_vertex(i)
    return w


@lru_cache(maxsize=None)
def _reflect_data(g: CoxeterGraph) -> dict[int, tuple[int, tuple[int, ...]]]:
    # vertex -> (own coordinate, coordinates of its neighbors)
    return {
        v: (g.index_of(v), tuple(g.index_of(u) for u in g.neighbors(v)))
        for v in g.vertices
    }


@lru_cache(maxsize=None)
def _reflection_matrices(g: CoxeterGraph) -> dict[int, np.ndarray]:
    mats = {}
    c = g.cartan()
    n = g.rank
    for v in g.vertices:
        idx = g.index_of(v)
        m = np.eye(n, dtype=np.int64)
        m[idx, :] -= c[idx, :]
        m.setflags(write=False)
        mats[v] = m
    return mats


def simple_root(g: CoxeterGraph, i: int) -> Root:
    """Coordinate vector of the simple root of vertex i.

    >>> from .graphs import coxeter_family
    >>> simple_root(coxeter_family("A", 3), 2)
    (0, 1, 0)
    """
    idx = g.index_of(i)
    return tuple(1 if q == idx else 0 for q in range(g.rank))


def root_height(root: Root) -> int:
    return sum(root)


def is_positive_root(root: Root) -> bool:
    """True for a nonzero vector with all coordinates >= 0."""
    return any(c > 0 for c in root) and all(c >= 0 for c in root)


def cartan_pairing(g: CoxeterGraph, u: Root, v: Root) -> int:
    """The symmetric pairing with matrix 2 I - adjacency (value 2 on any root)."""
    c = g.cartan()
    return int(np.asarray(u, dtype=np.int64) @ c @ np.asarray(v, dtype=np.int64))


def reflect(g: CoxeterGraph, i: int, root: Root) -> Root:
    """Apply the simple reflection of vertex i to a coordinate vector.

    Only coordinate i changes; in the simply laced case it becomes the
    sum over neighboring coordinates minus itself.

    >>> from .graphs import coxeter_family
    >>> reflect(coxeter_family("A", 2), 1, (0, 1))
    (1, 1)
    """
    idx, nbrs = _reflect_data(g)[i]
    new = list(root)
    new[idx] = -root[idx] + sum(root[q] for q in nbrs)
    return tuple(new)


def _scan_root_sequence(g: CoxeterGraph, word: Word) -> tuple[list[Root], bool]:
    """Incremental roots of a word, stopping early at the first negative one.

    Returns (roots so far, True) when all n roots are positive, i.e. when
    the word is reduced.
    """
    data = _reflect_data(g)
    n = len(word)
    out: list[Root] = []
    for q in range(1, n + 1):
        v = list(simple_root(g, word[n - q]))
        for letter in word[n - q + 1 :]:
            idx, nbrs = data[letter]
            v[idx] = -v[idx] + sum(v[p] for p in nbrs)
        if all(c <= 0 for c in v):
            return out, False
        out.append(tuple(v))
    return out, True


def is_reduced(g: CoxeterGraph, word: Iterable[int]) -> bool:
    """True when no shorter word evaluates to the same element.

    Checked by the incremental root scan: the word is reduced exactly
    when every root r_q stays positive.
    """
    w = normalize_word(g, word)
    return _scan_root_sequence(g, w)[1]


def root_sequence(g: CoxeterGraph, word: Iterable[int]) -> tuple[Root, ...]:
    """Root sequence of a reduced word.

    >>> from .graphs import coxeter_family
    >>> root_sequence(coxeter_family("A", 3), (1, 2, 3))
    ((0, 0, 1), (0, 1, 1), (1, 1, 1))
    """
    w = normalize_word(g, word)
    rs, ok = _scan_root_sequence(g, w)
    if not ok:
        raise NotReducedError(f"word {w} is not reduced")
    return tuple(rs)


def word_from_root_sequence(g: CoxeterGraph, roots: Sequence[Sequence[int]]) -> Word:
    """The unique reduced word with the given root sequence.

    Inverts the defining recurrence: with u_q the length-q suffix of the
    word, u_(q-1)(r_q) must be the simple root of the next letter from
    the right.  Raises RootSequenceError when the list is not the root
    sequence of any reduced word.

    >>> from .graphs import coxeter_family
    >>> word_from_root_sequence(coxeter_family("A", 3), [(0, 0, 1), (0, 1, 1), (1, 1, 1)])
    (1, 2, 3)
    """
    rank = g.rank
    rs: list[Root] = []
    for v in roots:
        vec = tuple(int(c) for c in v)
        if len(vec) != rank:
            raise RootSequenceError(
                f"root {v!r} has {len(vec)} coordinates, expected {rank}"
            )
        rs.append(vec)
    mats = _reflection_matrices(g)
    u = np.eye(rank, dtype=np.int64)  # matrix of u_(q-1)
    rev: list[int] = []
    for q, r in enumerate(rs, start=1):
        if not is_positive_root(r):
            raise RootSequenceError(f"entry {q} is not a positive root: {r}")
        image = u @ np.asarray(r, dtype=np.int64)
        hot = [idx for idx, c in enumerate(image) if c != 0]
        if len(hot) != 1 or image[hot[0]] != 1:
            raise RootSequenceError(
                f"entry {q} is not realizable: maps to {tuple(int(c) for c in image)}, "
                "which is not a simple root"
            )
        letter = g.vertices[hot[0]]
        rev.append(letter)
        u = mats[letter] @ u
    word = tuple(reversed(rev))
    if root_sequence(g, word) != tuple(rs):
        raise InvariantViolationError(
            f"round trip failed: recovered {word} from {rs}"
        )
    return word


class GroupElement:
    """A group element as its exact integer matrix on the root lattice.

    Column j holds the image of the j-th simple root, so a column with
    non-positive entries marks a right descent.  Instances are immutable
    and hashable; equality compares the graph and the matrix.
    """

    __slots__ = ("graph", "matrix", "key", "_length")

    def __init__(self, graph: CoxeterGraph, matrix, length: Optional[int] = None):
        self.graph = graph
        m = np.array(matrix, dtype=np.int64)
        if m.shape != (graph.rank, graph.rank):
            raise ValueError(f"matrix shape {m.shape} does not match rank {graph.rank}")
        m.setflags(write=False)
        self.matrix = m
        self.key: bytes = m.tobytes()
        self._length = length

    @classmethod
    def identity(cls, graph: CoxeterGraph) -> "GroupElement":
        return cls(graph, np.eye(graph.rank, dtype=np.int64), length=0)

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = len(some_reduced_word(self.graph, self))
        return self._length

    def is_identity(self) -> bool:
        return bool((self.matrix == np.eye(self.graph.rank, dtype=np.int64)).all())

    def apply(self, root: Sequence[int]) -> Root:
        return tuple(int(c) for c in self.matrix @ np.asarray(root, dtype=np.int64))

    def has_right_descent(self, i: int) -> bool:
        col = self.matrix[:, self.graph.index_of(i)]
        return bool((col <= 0).all())

    def right_descents(self) -> tuple[int, ...]:
        return tuple(v for v in self.graph.vertices if self.has_right_descent(v))

    def right_multiplied(self, i: int, length: Optional[int] = None) -> "GroupElement":
        m = self.matrix @ _reflection_matrices(self.graph)[i]
        return GroupElement(self.graph, m, length=length)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.graph == other.graph
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((self.graph, self.key))

    def __repr__(self) -> str:
        return f"GroupElement({self.graph!r}, {self.matrix.tolist()!r})"


def evaluate_word(g: CoxeterGraph, word: Iterable[int]) -> GroupElement:
    """Multiply out a word (not necessarily reduced).

    >>> from .graphs import coxeter_family
    >>> g = coxeter_family("A", 2)
    >>> evaluate_word(g, (1, 2, 1)) == evaluate_word(g, (2, 1, 2))
    True
    """
    w = normalize_word(g, word)
    mats = _reflection_matrices(g)
    m = np.eye(g.rank, dtype=np.int64)
    for i in w:
        m = m @ mats[i]
    return GroupElement(g, m)


# loop guard for descent stripping; no valid element needs anywhere near this
_MAX_STRIP = 10**6


def some_reduced_word(g: CoxeterGraph, e: GroupElement) -> Word:
    """A reduced word for e, chosen by stripping smallest right descents."""
    mats = _reflection_matrices(g)
    m = e.matrix
    ident = np.eye(g.rank, dtype=np.int64)
    rev: list[int] = []
    while not (m == ident).all():
        for v in g.vertices:
            if (m[:, g.index_of(v)] <= 0).all():
                rev.append(v)
                m = m @ mats[v]
                break
        else:
            raise InvariantViolationError(
                "matrix has no right descent but is not the identity"
            )
        if len(rev) > _MAX_STRIP:
            raise InvariantViolationError("descent stripping did not terminate")
    return tuple(reversed(rev))


def canonical_form(g: CoxeterGraph, e: GroupElement) -> Word:
    """The lexicographically least reduced word for e.

    Greedy: the possible first letters of reduced words are exactly the
    left descents, so repeatedly take the smallest one.  Left descents of
    w are right descents of its inverse, whose matrix is obtained by
    evaluating any reduced word of w in reverse.
    """
    mats = _reflection_matrices(g)
    inv = np.eye(g.rank, dtype=np.int64)
    for i in reversed(some_reduced_word(g, e)):
        inv = inv @ mats[i]
    ident = np.eye(g.rank, dtype=np.int64)
    out: list[int] = []
    while not (inv == ident).all():
        for v in g.vertices:
            if (inv[:, g.index_of(v)] <= 0).all():
                out.append(v)
                inv = inv @ mats[v]
                break
        else:  # pragma: no cover - inverse of a valid element
            raise InvariantViolationError("inverse matrix has no right descent")
    return tuple(out)


def apply_braid_move(g: CoxeterGraph, word: Iterable[int], pos: int) -> Word:
    """Apply the braid move starting at 0-based position pos of a reduced word.

    Commuting letters swap in place; a pattern (i, j, i) across an edge
    becomes (j, i, j).  Raises NoBraidMoveError when neither applies.

    >>> from .graphs import coxeter_family
    >>> apply_braid_move(coxeter_family("A", 3), (1, 2, 1), 0)
    (2, 1, 2)
    >>> apply_braid_move(coxeter_family("A", 3), (1, 3, 2), 0)
    (3, 1, 2)
    """
    w = normalize_word(g, word)
    if not is_reduced(g, w):
        raise NotReducedError(f"word {w} is not reduced")
    n = len(w)
    if not 0 <= pos < n - 1:
        raise NoBraidMoveError(f"position {pos} is out of range for a word of length {n}")
    a, b = w[pos], w[pos + 1]
    if a != b and not g.adjacent(a, b):
        return w[:pos] + (b, a) + w[pos + 2 :]
    if pos + 2 < n and w[pos + 2] == a and g.adjacent(a, b):
        return w[:pos] + (b, a, b) + w[pos + 3 :]
    raise NoBraidMoveError(f"no braid move applies at position {pos} of {w}")


def _check_cap(count: int, max_nodes: int, what: str) -> None:
    if count > max_nodes:
        raise CapExceededError(
            f"{what} exceeded the cap of {max_nodes} nodes; "
            "raise max_nodes to search further"
        )


def braid_closure(
    g: CoxeterGraph,
    word: Word,
    *,
    short_only: bool = False,
    max_nodes: int = DEFAULT_MAX_NODES,
    on_long_position: Optional[Callable[[tuple[Root, ...], int], bool]] = None,
) -> tuple[frozenset[Word], bool]:
    """Breadth-first closure of a reduced word under braid moves.

    Root sequences ride along incrementally: a commuting swap at letters
    (p, p+1) swaps roots (n-p-2, n-p-1) and a long move at (p, p+1, p+2)
    swaps roots (n-p-3, n-p-1), so only the seed pays the quadratic scan.

    ``on_long_position(rs, base)`` is invoked for every position of every
    visited word where a long move applies, with rs[base], rs[base + 1],
    rs[base + 2] the three consecutive roots (lowest index first); a
    truthy return aborts the traversal.  Returns (words, aborted).
    """
    n = len(word)
    rs0 = tuple(_checked_root_sequence(g, word))
    seen: set[Word] = {word}
    queue: deque[tuple[Word, tuple[Root, ...]]] = deque([(word, rs0)])
    adjacent = g.adjacent
    while queue:
        w, rs = queue.popleft()
        for p in range(n - 1):
            a, b = w[p], w[p + 1]
            if adjacent(a, b):
                if p + 2 < n and w[p + 2] == a:
                    if on_long_position is not None and on_long_position(rs, n - p - 3):
                        return frozenset(seen), True
                    if not short_only:
                        nw = w[:p] + (b, a, b) + w[p + 3 :]
                        if nw not in seen:
                            seen.add(nw)
                            _check_cap(len(seen), max_nodes, "braid move closure")
                            nrs = list(rs)
                            i1, i3 = n - p - 3, n - p - 1
                            nrs[i1], nrs[i3] = nrs[i3], nrs[i1]
                            queue.append((nw, tuple(nrs)))
            elif a != b:
                nw = w[:p] + (b, a) + w[p + 2 :]
                if nw not in seen:
                    seen.add(nw)
                    _check_cap(len(seen), max_nodes, "braid move closure")
                    nrs = list(rs)
                    i1, i2 = n - p - 2, n - p - 1
                    nrs[i1], nrs[i2] = nrs[i2], nrs[i1]
                    queue.append((nw, tuple(nrs)))
    return frozenset(seen), False


def _checked_root_sequence(g: CoxeterGraph, word: Word) -> list[Root]:
    rs, ok = _scan_root_sequence(g, word)
    if not ok:
        raise NotReducedError(f"word {word} is not reduced")
    return rs


def reduced_word_graph(
    g: CoxeterGraph, word: Iterable[int], max_nodes: int = DEFAULT_MAX_NODES
) -> frozenset[Word]:
    """All reduced words of the element, by closing under braid moves.

    Every two reduced words of one element are linked by braid moves, so
    the closure is the full set.

    >>> from .graphs import coxeter_family
    >>> sorted(reduced_word_graph(coxeter_family("A", 2), (1, 2, 1)))
    [(1, 2, 1), (2, 1, 2)]
    """
    w = normalize_word(g, word)
    words, _ = braid_closure(g, w, max_nodes=max_nodes)
    return words


def commutation_class(
    g: CoxeterGraph, word: Iterable[int], max_nodes: int = DEFAULT_MAX_NODES
) -> frozenset[Word]:
    """Closure of a reduced word under commuting swaps only.

    >>> from .graphs import coxeter_family
    >>> sorted(commutation_class(coxeter_family("A", 3), (2, 1, 3, 2)))
    [(2, 1, 3, 2), (2, 3, 1, 2)]
    """
    w = normalize_word(g, word)
    words, _ = braid_closure(g, w, short_only=True, max_nodes=max_nodes)
    return words


def positive_roots(g: CoxeterGraph, max_roots: int = 100000) -> frozenset[Root]:
    """All positive roots of a finite type graph, by orbit search.

    Raises CapExceededError past max_roots (the set is infinite for
    non-finite types, so the cap is the only stopping rule).
    """
    found: set[Root] = {simple_root(g, v) for v in g.vertices}
    queue = deque(found)
    while queue:
        r = queue.popleft()
        for v in g.vertices:
            nr = reflect(g, v, r)
            if is_positive_root(nr) and nr not in found:
                found.add(nr)
                _check_cap(len(found), max_roots, "positive root search")
                queue.append(nr)
    return frozenset(found)


def parse_word(text: str) -> Word:
    """Parse ``"1,2,1"`` or ``"1 2 1"`` (empty string means the empty word)."""
    cleaned = text.replace(",", " ").strip()
    if not cleaned:
        return ()
    try:
        return tuple(int(tok) for tok in cleaned.split())
    except ValueError as exc:
        raise WordSpecError(f"cannot parse word {text!r}: {exc}") from exc


def format_word(word: Word) -> str:
    return ",".join(str(i) for i in word) if word else "-"


def format_root(root: Root) -> str:
    return "[" + ",".join(str(c) for c in root) + "]"
