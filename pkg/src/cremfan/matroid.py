"""Matroids with exact rank oracles.

Elements are dense integer indices ``0..m-1``; a :class:`GroundSet` carries
optional display labels next to the indices. Three primitive backends give
the rank function (column vectors over an exact field, a rank-3 line
presentation, an explicit circuit list), and minors are represented lazily
against their parent oracle. Rank, closure and connectivity queries are
memoized per matroid and safe to issue from worker threads.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .errors import BudgetExceeded, InputError
from .field import (
    Field,
    FpElement,
    QuadSqrt5,
    primitive_int_vector,
    primitive_quad_vector,
    residue_vector,
)


class GroundSet:
    """A finite ground set 0..size-1 with display labels."""

    __slots__ = ("size", "labels")

    def __init__(self, size: int, labels: Sequence[str] | None = None):
        if size < 0:
            raise InputError("ground set size must be non-negative")
        if labels is None:
            labels = [str(i) for i in range(size)]
        labels = list(labels)
        if len(labels) != size:
            raise InputError("label count does not match ground set size")
        if len(set(labels)) != size:
            raise InputError("labels must be distinct")
        self.size = size
        self.labels = labels

    def label(self, e: int) -> str:
        return self.labels[e]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown element label {label!r}") from None

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __repr__(self):
        return f"GroundSet({self.size})"


@dataclass(frozen=True)
class Flat:
    """A flat with its rank; connectivity is filled in when known."""

    elements: frozenset[int]
    rank: int
    connected: bool | None = None

    def __contains__(self, e: int) -> bool:
        return e in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


@dataclass(frozen=True)
class ElementBijection:
    """A bijection between ground sets, stored as the forward image tuple."""

    forward: tuple[int, ...]

    def __call__(self, e: int) -> int:
        return self.forward[e]

    def image(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.forward[e] for e in subset)

    def inverse(self) -> "ElementBijection":
        inv = [0] * len(self.forward)
        for i, j in enumerate(self.forward):
            inv[j] = i
        return ElementBijection(tuple(inv))

    def compose(self, first: "ElementBijection") -> "ElementBijection":
        """self after first: (self.compose(first))(e) == self(first(e))."""
        return ElementBijection(tuple(self.forward[j] for j in first.forward))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.forward))


# ---------------------------------------------------------------------------
# backends


class VectorBackend:
    """Columns of an exact matrix; rank queries go through the kernels."""

    name = "vectors"

    def __init__(self, field: Field, vectors: Sequence[Sequence]):
        self.field = field
        self.vectors = [[field.coerce(x) for x in v] for v in vectors]
        widths = {len(v) for v in self.vectors}
        if len(widths) > 1:
            raise InputError("vectors of mixed dimension")
        if field.kind == "Q":
            self._rows = [primitive_int_vector(v) for v in self.vectors]
            self._rank = kernels.rank_int
            self._closure = kernels.closure_int
        elif field.kind == "Qsqrt5":
            self._rows = [primitive_quad_vector(v) for v in self.vectors]
            self._rank = kernels.rank_quad
            self._closure = kernels.closure_quad
        else:
            p = field.p
            self._rows = [residue_vector(v) for v in self.vectors]
            self._rank = lambda rows: kernels.rank_mod(rows, p)
            self._closure = lambda rows, sub: kernels.closure_mod(rows, p, sub)

    @property
    def size(self) -> int:
        return len(self._rows)

    def rank_subset(self, subset: tuple[int, ...]) -> int:
        return self._rank([self._rows[i] for i in subset])

    def closure_fast(self, subset: tuple[int, ...]):
        return self._closure(self._rows, list(subset))


class LineBackend:
    """A simple rank-3 matroid presented by its lines of three or more points.

    Pairs lying on no listed line are (implicitly) trivial two-point flats.
    """

    name = "lines"

    def __init__(self, size: int, lines: Iterable[Iterable[int]]):
        self.size = size
        self.lines = []
        pair_line: dict[tuple[int, int], int] = {}
        for line in lines:
            L = frozenset(line)
            if len(L) < 3:
                raise InputError("a listed line needs at least 3 points")
            if not all(0 <= e < size for e in L):
                raise InputError("line element out of range")
            lid = len(self.lines)
            for a, b in itertools.combinations(sorted(L), 2):
                if (a, b) in pair_line:
                    raise InputError(
                        f"elements {a},{b} lie on two listed lines"
                    )
                pair_line[(a, b)] = lid
            self.lines.append(L)
        self._pair_line = pair_line

    def _line_through(self, a: int, b: int) -> frozenset[int] | None:
        lid = self._pair_line.get((a, b) if a < b else (b, a))
        return self.lines[lid] if lid is not None else None

    def rank_subset(self, subset: tuple[int, ...]) -> int:
        n = len(subset)
        if n <= 2:
            return n
        a, b = subset[0], subset[1]
        line = self._line_through(a, b)
        if line is not None and all(e in line for e in subset):
            return 2
        return 3

    def closure_fast(self, subset: tuple[int, ...]):
        r = self.rank_subset(subset)
        if r <= 1:
            return r, list(subset)
        if r == 2:
            line = self._line_through(subset[0], subset[1])
            return 2, sorted(line) if line is not None else list(subset)
        return 3, list(range(self.size))


class CircuitBackend:
    """Rank via greedy independence over an explicit circuit list."""

    name = "circuits"

    def __init__(self, size: int, circuits: Iterable[Iterable[int]]):
        self.size = size
        seen = set()
        self.circuit_list: list[frozenset[int]] = []
        for c in circuits:
            C = frozenset(c)
            if not C:
                raise InputError("empty circuit")
            if not all(0 <= e < size for e in C):
                raise InputError("circuit element out of range")
            if C not in seen:
                seen.add(C)
                self.circuit_list.append(C)
        for C, D in itertools.combinations(self.circuit_list, 2):
            if C < D or D < C:
                raise InputError("circuit list is not an antichain")
        self._by_element: list[list[frozenset[int]]] = [[] for _ in range(size)]
        for C in self.circuit_list:
            for e in C:
                self._by_element[e].append(C)

    def rank_subset(self, subset: tuple[int, ...]) -> int:
        indep: set[int] = set()
        for e in subset:
            trial = indep | {e}
            if not any(C <= trial for C in self._by_element[e]):
                indep.add(e)
        return len(indep)


class MinorBackend:
    """Restriction/contraction oracle against a parent matroid."""

    name = "minor"

    def __init__(self, parent: "Matroid", kept: Sequence[int], contracted: Iterable[int]):
        self.parent = parent
        self.kept = tuple(kept)
        self.contracted = frozenset(contracted)
        self._base = parent.rank(self.contracted)

    @property
    def size(self) -> int:
        return len(self.kept)

    def rank_subset(self, subset: tuple[int, ...]) -> int:
        mapped = {self.kept[i] for i in subset}
        return self.parent.rank(mapped | self.contracted) - self._base


# ---------------------------------------------------------------------------


class Matroid:
    """A matroid over a dense integer ground set, defined by a rank oracle."""

    name: str | None = None

    def __init__(self, backend, labels: Sequence[str] | None = None, *,
                 ground: GroundSet | None = None):
        if ground is None:
            ground = GroundSet(backend.size, labels)
        if ground.size != getattr(backend, "size", ground.size):
            raise InputError("backend size disagrees with ground set")
        self.ground = ground
        self.backend = backend
        self._lock = threading.RLock()
        self._rank_cache: dict[frozenset[int], int] = {}
        self._closure_cache: dict[frozenset[int], Flat] = {}
        self._connected_cache: dict[frozenset[int], bool] = {}
        self._flats_cache: dict[int, tuple[Flat, ...]] = {}
        self._lines_cache = None

    # -- basics ------------------------------------------------------------

    @property
    def size(self) -> int:
        return self.ground.size

    def elements(self) -> range:
        return range(self.size)

    def _check_subset(self, subset: Iterable[int]) -> frozenset[int]:
        S = frozenset(subset)
        for e in S:
            if not isinstance(e, int) or not 0 <= e < self.size:
                raise InputError(f"element {e!r} outside ground set")
        return S

    def rank(self, subset: Iterable[int]) -> int:
        S = self._check_subset(subset)
        with self._lock:
            hit = self._rank_cache.get(S)
        if hit is not None:
            return hit
        r = self.backend.rank_subset(tuple(sorted(S)))
        with self._lock:
            self._rank_cache[S] = r
        return r

    def full_rank(self) -> int:
        return self.rank(range(self.size))

    def is_independent(self, subset: Iterable[int]) -> bool:
        S = self._check_subset(subset)
        return self.rank(S) == len(S)

    def closure(self, subset: Iterable[int]) -> Flat:
        S = self._check_subset(subset)
        with self._lock:
            hit = self._closure_cache.get(S)
        if hit is not None:
            return hit
        fast = getattr(self.backend, "closure_fast", None)
        if fast is not None:
            r, members = fast(tuple(sorted(S)))
            flat = Flat(frozenset(members), r)
        else:
            r = self.rank(S)
            members = set(S)
            for e in range(self.size):
                if e not in S and self.rank(S | {e}) == r:
                    members.add(e)
            flat = Flat(frozenset(members), r)
        with self._lock:
            self._closure_cache[S] = flat
            self._closure_cache.setdefault(flat.elements, flat)
            self._rank_cache.setdefault(S, flat.rank)
            self._rank_cache.setdefault(flat.elements, flat.rank)
        return flat

    def is_flat(self, subset: Iterable[int]) -> bool:
        S = self._check_subset(subset)
        return self.closure(S).elements == S

    def is_simple(self) -> bool:
        return all(
            self.closure({e}).elements == frozenset({e}) for e in range(self.size)
        )

    # -- flats, level by level ----------------------------------------------

    def flats_of_rank(self, k: int) -> list[Flat]:
        """All rank-k flats, canonically ordered by sorted element tuple."""
        if not 0 <= k <= self.full_rank():
            raise InputError(f"no flats of rank {k} (matroid rank {self.full_rank()})")
        with self._lock:
            hit = self._flats_cache.get(k)
        if hit is not None:
            return list(hit)
        level = {self.closure(()).elements}
        for j in range(1, k + 1):
            nxt = set()
            for F in level:
                for e in range(self.size):
                    if e not in F:
                        nxt.add(self.closure(F | {e}).elements)
            level = nxt
        flats = [Flat(F, k) for F in sorted(level, key=lambda F: tuple(sorted(F)))]
        with self._lock:
            self._flats_cache[k] = tuple(flats)
        return list(flats)

    # -- connectivity --------------------------------------------------------

    def is_connected(self, flat: Iterable[int]) -> bool:
        """Connectivity of the restriction to a flat.

        Uses the exhaustive 2-partition criterion up to 12 elements and the
        fundamental-circuit graph of a basis beyond that.
        """
        F = self._check_subset(flat)
        if not self.is_flat(F):
            raise InputError("connectivity is defined here only for flats")
        with self._lock:
            hit = self._connected_cache.get(F)
        if hit is not None:
            return hit
        result = self._connected(F)
        with self._lock:
            self._connected_cache[F] = result
        return result

    def _connected(self, F: frozenset[int]) -> bool:
        n = len(F)
        if n == 0:
            return False
        if n == 1:
            return True
        rF = self.rank(F)
        if n <= 12:
            items = sorted(F)
            first, rest = items[0], items[1:]
            for bits in range(1 << len(rest)):
                A = {first} | {rest[i] for i in range(len(rest)) if bits >> i & 1}
                if len(A) == n:
                    continue
                B = F - A
                if self.rank(A) + self.rank(B) == rF:
                    return False
            return True
        # fundamental-circuit graph of a greedy basis of F
        basis: list[int] = []
        r = 0
        for e in sorted(F):
            if self.rank(basis + [e]) > r:
                basis.append(e)
                r += 1
                if r == rF:
                    break
        parent = {e: e for e in F}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        bset = set(basis)
        for e in F - bset:
            circ = [e] + [
                x for x in basis if self.rank((bset - {x}) | {e}) == rF
            ]
            for x in circ[1:]:
                union(e, x)
        root = find(next(iter(F)))
        return all(find(e) == root for e in F)

    def connected_flat(self, flat: Flat | Iterable[int]) -> Flat:
        """The same flat with its connectivity field filled in."""
        if not isinstance(flat, Flat):
            flat = self.closure(flat)
        if flat.connected is not None:
            return flat
        return Flat(flat.elements, flat.rank, self.is_connected(flat.elements))

    # -- circuits -------------------------------------------------------------

    def circuits(self, *, max_elements: int = 16) -> list[frozenset[int]]:
        """All circuits (minimal dependent sets), smallest first.

        Exponential in general, so guarded by a ground-set budget; the
        circuit backend returns its defining list directly.
        """
        if isinstance(self.backend, CircuitBackend):
            return sorted(self.backend.circuit_list, key=lambda C: (len(C), sorted(C)))
        if self.size > max_elements:
            raise BudgetExceeded(
                f"circuit enumeration over {self.size} elements exceeds the "
                f"budget of {max_elements}; raise max_elements to override"
            )
        found: list[frozenset[int]] = []
        r = self.full_rank()
        for k in range(1, min(self.size, r + 1) + 1):
            for S in itertools.combinations(range(self.size), k):
                fs = frozenset(S)
                if any(C <= fs for C in found):
                    continue
                if self.rank(fs) < k:
                    found.append(fs)
        return sorted(found, key=lambda C: (len(C), sorted(C)))

    # -- minors ----------------------------------------------------------------

    def restrict(self, subset: Iterable[int]) -> "Matroid":
        S = sorted(self._check_subset(subset))
        ground = GroundSet(len(S), [self.ground.label(e) for e in S])
        sub = Matroid(MinorBackend(self, S, ()), ground=ground)
        sub.parent_elements = tuple(S)
        return sub

    def contract(self, subset: Iterable[int] | int) -> "Matroid":
        if isinstance(subset, int):
            subset = {subset}
        C = self._check_subset(subset)
        kept = [e for e in range(self.size) if e not in C]
        ground = GroundSet(len(kept), [self.ground.label(e) for e in kept])
        minor = Matroid(MinorBackend(self, kept, C), ground=ground)
        minor.parent_elements = tuple(kept)
        return minor

    def simplify(self) -> tuple["Matroid", list[int | None]]:
        """Merge parallel classes and drop loops.

        Returns the simple quotient together with the explicit quotient map:
        old index -> new index, or None for deleted loops.
        """
        loops = {e for e in range(self.size) if self.rank({e}) == 0}
        reps: list[int] = []
        quotient: list[int | None] = [None] * self.size
        for e in range(self.size):
            if e in loops:
                continue
            cls = min(self.closure({e}).elements - loops)
            if cls == e:
                quotient[e] = len(reps)
                reps.append(e)
            else:
                quotient[e] = quotient[cls]
        return self.restrict(reps), quotient

    # -- rank-2 flat structure used by the isomorphism search -------------------

    def _lines(self):
        with self._lock:
            if self._lines_cache is not None:
                return self._lines_cache
        line_ids: dict[frozenset[int], int] = {}
        pair_line: dict[tuple[int, int], int] = {}
        for a, b in itertools.combinations(range(self.size), 2):
            F = self.closure({a, b}).elements
            lid = line_ids.setdefault(F, len(line_ids))
            pair_line[(a, b)] = lid
        sizes = [0] * len(line_ids)
        through: list[list[int]] = [[] for _ in range(self.size)]
        for F, lid in line_ids.items():
            sizes[lid] = len(F)
            for e in F:
                through[e].append(lid)
        profiles = [tuple(sorted(sizes[lid] for lid in th)) for th in through]
        data = (pair_line, sizes, profiles)
        with self._lock:
            self._lines_cache = data
        return data

    def __repr__(self):
        return f"Matroid(size={self.size}, backend={self.backend.name})"


# ---------------------------------------------------------------------------
# parallel connection


def parallel_connection(m1: Matroid, e1: int, m2: Matroid, e2: int) -> Matroid:
    """Parallel connection of two matroids across identified basepoints.

    Ground set layout: elements of M1 except e1, then the joint (keeping
    M1's basepoint label), then elements of M2 except e2. Circuits are the
    inherited ones of both summands plus the mixed unions through the joint.
    """
    for M, e in ((m1, e1), (m2, e2)):
        M._check_subset({e})
        if M.rank({e}) == 0:
            raise InputError("basepoint is a loop")
        if M.rank(set(range(M.size)) - {e}) < M.full_rank():
            raise InputError("basepoint is a coloop")
    left = [e for e in range(m1.size) if e != e1]
    right = [e for e in range(m2.size) if e != e2]
    joint = len(left)
    map1 = {e: i for i, e in enumerate(left)}
    map1[e1] = joint
    map2 = {e: joint + 1 + i for i, e in enumerate(right)}
    map2[e2] = joint
    labels = [m1.ground.label(e) for e in left] + [m1.ground.label(e1)]
    seen = set(labels)
    for e in right:
        lab = m2.ground.label(e)
        while lab in seen:
            lab += "'"
        seen.add(lab)
        labels.append(lab)
    c1 = [frozenset(map1[x] for x in C) for C in m1.circuits()]
    c2 = [frozenset(map2[x] for x in C) for C in m2.circuits()]
    mixed = [
        (C1 - {joint}) | (C2 - {joint})
        for C1 in c1
        if joint in C1
        for C2 in c2
        if joint in C2
    ]
    size = len(left) + 1 + len(right)
    return Matroid(CircuitBackend(size, c1 + c2 + mixed), labels)


# ---------------------------------------------------------------------------
# isomorphism and automorphism search


def _census(M: Matroid) -> dict[int, set[frozenset[int]]]:
    # ranks 0 and 1 matter for non-simple matroids (loops, parallel classes)
    return {
        k: {F.elements for F in M.flats_of_rank(k)}
        for k in range(0, M.full_rank())
    }


def _search(m1: Matroid, m2: Matroid, *, find_all: bool, max_elements: int):
    n = m1.size
    if n != m2.size or m1.full_rank() != m2.full_rank():
        return []
    if n > max_elements:
        raise BudgetExceeded(
            f"isomorphism search over {n} elements exceeds the budget of "
            f"{max_elements}; raise max_elements to override"
        )
    if n == 0:
        return [ElementBijection(())]
    pair1, sizes1, prof1 = m1._lines()
    pair2, sizes2, prof2 = m2._lines()
    if sorted(prof1) != sorted(prof2):
        return []
    census2 = _census(m2)
    census1 = _census(m1)
    if {k: len(v) for k, v in census1.items()} != {
        k: len(v) for k, v in census2.items()
    }:
        return []

    # static order: scarce line profiles first, high incidence degree first
    freq: dict[tuple, int] = {}
    for p in prof1:
        freq[p] = freq.get(p, 0) + 1
    order = sorted(range(n), key=lambda e: (freq[prof1[e]], -len(prof1[e]), e))
    candidates = [
        [x for x in range(n) if prof2[x] == prof1[e]] for e in order
    ]

    assigned: dict[int, int] = {}
    used = [False] * n
    line_map: dict[int, int] = {}
    line_map_rev: dict[int, int] = {}
    results: list[ElementBijection] = []

    def leaf_ok() -> bool:
        forward = [0] * n
        for a, x in assigned.items():
            forward[a] = x
        for k, flats in census1.items():
            target = census2[k]
            for F in flats:
                if frozenset(forward[e] for e in F) not in target:
                    return False
        return True

    def extend(depth: int) -> bool:
        if depth == len(order):
            if leaf_ok():
                forward = [0] * n
                for a, x in assigned.items():
                    forward[a] = x
                results.append(ElementBijection(tuple(forward)))
                return not find_all
            return False
        a = order[depth]
        for x in candidates[depth]:
            if used[x]:
                continue
            trail = []
            ok = True
            for b, y in assigned.items():
                l1 = pair1[(a, b) if a < b else (b, a)]
                l2 = pair2[(x, y) if x < y else (y, x)]
                if sizes1[l1] != sizes2[l2]:
                    ok = False
                    break
                bound = line_map.get(l1)
                if bound is None:
                    if line_map_rev.get(l2) is not None:
                        ok = False
                        break
                    line_map[l1] = l2
                    line_map_rev[l2] = l1
                    trail.append((l1, l2))
                elif bound != l2:
                    ok = False
                    break
            if ok:
                assigned[a] = x
                used[x] = True
                if extend(depth + 1):
                    return True
                del assigned[a]
                used[x] = False
            for l1, l2 in trail:
                del line_map[l1]
                del line_map_rev[l2]
        return False

    extend(0)
    return results


def find_isomorphism(
    m1: Matroid, m2: Matroid, *, max_elements: int = 24
) -> ElementBijection | None:
    """A rank-preserving element bijection between two matroids, or None.

    The returned map carries flats to flats of equal rank in both
    directions (verified against the full flat censuses before returning).
    """
    found = _search(m1, m2, find_all=False, max_elements=max_elements)
    return found[0] if found else None


def automorphisms(M: Matroid, *, max_elements: int = 24) -> list[ElementBijection]:
    """The full automorphism group as a list of element bijections."""
    return _search(M, M, find_all=True, max_elements=max_elements)
