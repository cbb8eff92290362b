"""Cremona bases and the maps, graphs, theorems, and realizations they induce.

A Cremona basis of a simple connected matroid is a basis b = b_0..b_d whose
pairwise closure remainders F_ij = cl{b_i, b_j} \\ {b_i, b_j} partition
E \\ b.  Such a basis induces the lattice map Crem_b sending each basis
indicator vector to the indicator of the opposite corank-one flat.  This
module detects and enumerates Cremona bases, builds the map, analyses
support graphs, verifies the two-basis structure statement, constructs the
induced involutive automorphism, and realizes the matroid over a field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InputError, InvariantError
from .field import Field, determinant
from .fan import TropicalPoint
from .matroid import ElementBijection, Matroid, VectorBackend


# ---------------------------------------------------------------------------
# integer linear maps on Z^E


@dataclass(frozen=True)
class IntegerLinearMap:
    """An integer matrix acting on Z^E; column k is the image of v_k."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.matrix)
        if any(len(row) != m for row in self.matrix):
            raise InputError("integer linear map must be square")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(row[k] for row in self.matrix)

    def apply_vector(self, w: Sequence) -> tuple:
        m = self.size
        if len(w) != m:
            raise InputError("vector length does not match the map size")
        return tuple(sum(self.matrix[i][j] * w[j] for j in range(m)) for i in range(m))

    def apply(self, point: TropicalPoint | Sequence) -> TropicalPoint:
        if not isinstance(point, TropicalPoint):
            point = TropicalPoint.of(point)
        return TropicalPoint.of(self.apply_vector(point.weights))

    def one_multiple(self) -> int | None:
        """c when the all-ones vector maps to c*(all-ones), else None."""
        sums = {sum(row) for row in self.matrix}
        if len(sums) == 1:
            return sums.pop()
        return None

    def quotient_matrix(self) -> tuple[tuple[int, ...], ...]:
        """The induced matrix on Z^E / Z*1 in the basis v_0..v_{m-2}.

        Modulo the all-ones vector, v_{m-1} = -(v_0 + ... + v_{m-2}), so
        the induced matrix subtracts the last row from every other row and
        drops the last row and column.
        """
        m = self.size
        A = self.matrix
        return tuple(
            tuple(A[i][j] - A[m - 1][j] for j in range(m - 1)) for i in range(m - 1)
        )

    def quotient_determinant(self) -> int:
        Q = self.quotient_matrix()
        if not Q:
            return 1
        det = determinant([[Fraction(x) for x in row] for row in Q])
        return int(det)

    @property
    def is_lattice_isomorphism(self) -> bool:
        return abs(self.quotient_determinant()) == 1


def indicator_map(M: Matroid, assignment: dict[int, Iterable[int]]) -> IntegerLinearMap:
    """The map sending v_e to the indicator vector of assignment[e].

    Elements missing from the assignment are fixed (v_e maps to v_e).
    """
    m = M.size
    bad_keys = [e for e in assignment if not (isinstance(e, int) and 0 <= e < m)]
    if bad_keys:
        raise InputError(f"assignment keys out of range: {sorted(bad_keys)}")
    columns = []
    for e in range(m):
        target = frozenset(assignment.get(e, {e}))
        if not all(isinstance(x, int) and 0 <= x < m for x in target):
            raise InputError(f"assignment for element {e} is out of range")
        columns.append([1 if i in target else 0 for i in range(m)])
    matrix = tuple(tuple(columns[j][i] for j in range(m)) for i in range(m))
    return IntegerLinearMap(matrix)


# ---------------------------------------------------------------------------
# Cremona bases


@dataclass(frozen=True)
class CremonaData:
    """A verified Cremona basis with its partition and corank-one flats."""

    matroid: Matroid
    basis: tuple[int, ...]
    partition: dict[tuple[int, int], frozenset[int]]
    corank_flats: dict[int, frozenset[int]]

    def pair_flat(self, i: int, j: int) -> frozenset[int]:
        return self.partition[(i, j) if i < j else (j, i)]

    def pair_of(self, e: int) -> tuple[int, int]:
        """Basis positions (i, j) with e in F_ij."""
        pair = self.element_pairs().get(e)
        if pair is None:
            raise InputError(f"element {e} is not in any F-set of this basis")
        return pair

    def element_pairs(self) -> dict[int, tuple[int, int]]:
        cache = getattr(self, "_pairs_cache", None)
        if cache is None:
            cache = {}
            for (i, j), F in self.partition.items():
                for e in F:
                    cache[e] = (i, j)
            object.__setattr__(self, "_pairs_cache", cache)
        return cache

    def basis_set(self) -> frozenset[int]:
        return frozenset(self.basis)


def _check_basis(M: Matroid, b: Iterable[int]) -> tuple[int, ...]:
    basis = tuple(sorted(M._check_subset(b)))
    r = M.full_rank()
    if len(basis) != r:
        raise InputError(
            f"basis must have exactly rank(M) = {r} elements, got {len(basis)}"
        )
    if M.rank(basis) != r:
        raise InputError(f"{list(basis)} is dependent, not a basis")
    return basis


def cremona_check(M: Matroid, b: Iterable[int]) -> CremonaData | None:
    """The CremonaData of b, or None when b is not a Cremona basis."""
    data, _reason = cremona_check_detail(M, b)
    return data


def cremona_check_detail(M: Matroid, b: Iterable[int]) -> tuple[CremonaData | None, str | None]:
    """Cremona check with a human-readable failure reason.

    Fails fast: the first overlapping pair of F-sets or the final coverage
    gap is reported without computing the rest.
    """
    basis = _check_basis(M, b)
    bset = frozenset(basis)
    partition: dict[tuple[int, int], frozenset[int]] = {}
    covered: set[int] = set()
    for i, j in itertools.combinations(range(len(basis)), 2):
        F = M.closure({basis[i], basis[j]}).elements - {basis[i], basis[j]}
        hit_basis = F & bset
        if hit_basis:
            return None, (
                f"cl{{{basis[i]},{basis[j]}}} contains the basis element(s) "
                f"{sorted(hit_basis)}"
            )
        overlap = F & covered
        if overlap:
            return None, (
                f"F-set of ({basis[i]},{basis[j]}) overlaps an earlier F-set "
                f"in {sorted(overlap)}"
            )
        covered |= F
        partition[(i, j)] = F
    missing = set(range(M.size)) - bset - covered
    if missing:
        return None, f"elements {sorted(missing)} lie in no F-set"
    corank = {
        j: M.closure(bset - {basis[j]}).elements for j in range(len(basis))
    }
    return CremonaData(M, basis, partition, corank), None


def enumerate_cremona_bases(M: Matroid, *, max_elements: int = 40) -> list[CremonaData]:
    """All Cremona bases in ascending order of their sorted element tuples.

    Backtracking over independent sets: a branch dies as soon as a chosen
    pair's closure remainder touches the partial basis or an earlier
    F-set.  Guarded by a ground-set budget (explicit failure, never a
    silent truncation).
    """
    if M.size > max_elements:
        raise BudgetExceeded(
            f"Cremona enumeration over {M.size} elements exceeds the budget "
            f"of {max_elements}; raise max_elements to override"
        )
    if M.size and not M.is_simple():
        raise InputError("Cremona bases are defined for simple matroids")
    r = M.full_rank()
    results: list[CremonaData] = []
    if r == 0:
        return results

    def extend(partial: list[int], covered: frozenset[int]):
        depth = len(partial)
        if depth == r:
            if covered | set(partial) == set(range(M.size)):
                data = cremona_check(M, tuple(partial))
                if data is None:
                    raise InvariantError(
                        "incremental pruning accepted a non-Cremona basis"
                    )
                results.append(data)
            return
        start = partial[-1] + 1 if partial else 0
        for e in range(start, M.size):
            if e in covered:
                continue
            if M.rank(partial + [e]) != depth + 1:
                continue
            new_cover = covered
            ok = True
            for b_i in partial:
                F = M.closure({b_i, e}).elements - {b_i, e}
                if F & set(partial) or e in F:
                    ok = False
                    break
                if F & new_cover:
                    ok = False
                    break
                new_cover = new_cover | F
            if ok:
                extend(partial + [e], new_cover)

    extend([], frozenset())
    return results


# ---------------------------------------------------------------------------
# the Cremona map


def crem_map(data: CremonaData) -> IntegerLinearMap:
    """The lattice map of a Cremona basis: v_{b_j} to v_{B_j}, others fixed.

    Validates independently that the all-ones line is preserved (the image
    of 1 must be a positive multiple of 1) and that the quotient matrix is
    unimodular; a failure of either means a non-Cremona input slipped
    through and is an invariant violation.
    """
    M = data.matroid
    assignment = {
        data.basis[j]: data.corank_flats[j] for j in range(len(data.basis))
    }
    linmap = indicator_map(M, assignment)
    c = linmap.one_multiple()
    if c is None or c < 1:
        raise InvariantError(
            "Cremona map does not preserve the all-ones line; the basis "
            "does not induce a Cremona automorphism"
        )
    det = linmap.quotient_determinant()
    if abs(det) != 1:
        raise InvariantError(
            f"Cremona map quotient determinant is {det}, not a lattice isomorphism"
        )
    return linmap


# ---------------------------------------------------------------------------
# support graphs


@dataclass(frozen=True)
class SupportGraph:
    """The b-support multigraph of a subset S.

    Vertices are the basis elements touched by S; every element of S
    outside the basis contributes one edge between the ends of its F-set
    pair, labeled by that element.
    """

    basis: tuple[int, ...]
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (b_i, b_j, label element)
    isolated: tuple[int, ...]  # vertices from S & basis with no incident edge

    def components(self) -> list[tuple[frozenset[int], tuple[tuple[int, int, int], ...]]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _lab in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        out = []
        for root in sorted(groups, key=lambda r: min(groups[r])):
            vs = frozenset(groups[root])
            es = tuple(e for e in self.edges if e[0] in vs or e[1] in vs)
            out.append((vs, es))
        return out

    @property
    def is_simple_graph(self) -> bool:
        seen = set()
        for a, b, _lab in self.edges:
            key = frozenset((a, b))
            if key in seen:
                return False
            seen.add(key)
        return True

    @staticmethod
    def star_center(vertices: frozenset[int], edges: Sequence[tuple[int, int, int]],
                    candidates: frozenset[int] | None = None) -> int | None:
        """A vertex covering every edge (restricted to candidates if given)."""
        pool = vertices if candidates is None else (vertices & candidates)
        for c in sorted(pool):
            if all(a == c or b == c for a, b, _lab in edges):
                return c
        return None


def support_graph(data: CremonaData, S: Iterable[int]) -> SupportGraph:
    M = data.matroid
    subset = M._check_subset(S)
    bset = data.basis_set()
    pairs = data.element_pairs()
    vertices: set[int] = set(subset & bset)
    edges = []
    for e in sorted(subset - bset):
        i, j = pairs[e]
        bi, bj = data.basis[i], data.basis[j]
        vertices.add(bi)
        vertices.add(bj)
        edges.append((min(bi, bj), max(bi, bj), e))
    touched = {a for a, b, _e in edges} | {b for a, b, _e in edges}
    isolated = tuple(sorted((subset & bset) - touched))
    return SupportGraph(data.basis, tuple(sorted(vertices)), tuple(edges), isolated)


def flat_support_kind(data: CremonaData, F: Iterable[int]) -> str:
    """Classify a flat by its basis support: "basis", "non-basis", or "mixed".

    A basis flat meets the basis in its whole support; a non-basis flat
    avoids the basis entirely.
    """
    M = data.matroid
    subset = M._check_subset(F)
    graph = support_graph(data, subset)
    inter = subset & data.basis_set()
    if not inter:
        return "non-basis"
    if inter == set(graph.vertices):
        return "basis"
    return "mixed"


# ---------------------------------------------------------------------------
# two-basis structure


@dataclass(frozen=True)
class ComponentReport:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    center: int | None
    simple: bool
    star: bool


@dataclass(frozen=True)
class TwoBasisReport:
    basis: tuple[int, ...]
    other: tuple[int, ...]
    intersection: tuple[int, ...]
    components: tuple[ComponentReport, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)


def two_basis_report(M: Matroid, d1: CremonaData, d2: CremonaData) -> TwoBasisReport:
    """Verify the structure of G_b(b*) for two Cremona bases of one matroid.

    Checks, and raises an invariant violation with a counterexample when
    any clause fails:

    * every component of the support graph of b* w.r.t. b contains exactly
      one vertex of b*, lies in a simple star with that vertex as center;
    * the number of components equals |b ∩ b*|;
    * whenever b_i, b_j sit in different components and F_ij is nonempty,
      both belong to b ∩ b*.
    """
    if d1.matroid is not M or d2.matroid is not M:
        raise InputError("both Cremona bases must belong to the given matroid")
    b = d1.basis_set()
    bstar = d2.basis_set()
    inter = b & bstar
    graph = support_graph(d1, bstar)
    comps = graph.components()
    reports = []
    for vs, es in comps:
        centers = vs & bstar
        if len(centers) != 1:
            raise InvariantError(
                f"component {sorted(vs)} of the support graph meets the second "
                f"basis in {sorted(centers)}, expected exactly one element"
            )
        center = next(iter(centers))
        simple = SupportGraph(d1.basis, tuple(sorted(vs)), es, ()).is_simple_graph
        star = all(a == center or bb == center for a, bb, _lab in es)
        if not simple:
            raise InvariantError(
                f"component {sorted(vs)} is not simple: parallel edges {es}"
            )
        if not star:
            raise InvariantError(
                f"component {sorted(vs)} is not a star centered at {center}: {es}"
            )
        if center not in inter:
            raise InvariantError(
                f"component center {center} is not in the basis intersection"
            )
        reports.append(ComponentReport(tuple(sorted(vs)), es, center, simple, star))
    if len(comps) != len(inter):
        raise InvariantError(
            f"support graph has {len(comps)} components but the basis "
            f"intersection has {len(inter)} elements"
        )
    comp_of = {}
    for idx, (vs, _es) in enumerate(comps):
        for v in vs:
            comp_of[v] = idx
    for i, j in itertools.combinations(range(len(d1.basis)), 2):
        bi, bj = d1.basis[i], d1.basis[j]
        if not d1.pair_flat(i, j):
            continue
        ci, cj = comp_of.get(bi), comp_of.get(bj)
        if ci is not None and cj is not None and ci != cj:
            if bi not in inter or bj not in inter:
                raise InvariantError(
                    f"nonempty F-set between {bi} and {bj} crossing components, "
                    f"but they are not both in the basis intersection"
                )
    return TwoBasisReport(d1.basis, d2.basis, tuple(sorted(inter)), tuple(reports))


def _star_edge_label(data: CremonaData, other: CremonaData, c: int) -> int:
    """The label of the unique support-graph edge at a non-center vertex c."""
    graph = support_graph(data, other.basis_set())
    labels = [lab for a, b, lab in graph.edges if c in (a, b)]
    if len(labels) != 1:
        raise InvariantError(
            f"basis element {c} has {len(labels)} support edges, expected one"
        )
    return labels[0]


def build_involution(M: Matroid, d1: CremonaData, d2: CremonaData) -> ElementBijection:
    """The involutive automorphism swapping two Cremona bases.

    Fixes b ∩ b* and everything outside b ∪ b*; swaps each c in b \\ b*
    with its star edge label in G_b(b*), and each c in b* \\ b with its
    star edge label in G_{b*}(b).  Verified to be an involution mapping b
    onto b* and (for ground sets of at most 15 elements) a matroid
    automorphism by the full flat census.
    """
    two_basis_report(M, d1, d2)
    two_basis_report(M, d2, d1)
    b = d1.basis_set()
    bstar = d2.basis_set()
    forward = list(range(M.size))
    for c in sorted(b - bstar):
        forward[c] = _star_edge_label(d1, d2, c)
    for c in sorted(bstar - b):
        forward[c] = _star_edge_label(d2, d1, c)
    if sorted(forward) != list(range(M.size)):
        raise InvariantError("constructed map is not a permutation")
    phi = ElementBijection(tuple(forward))
    for e in range(M.size):
        if phi(phi(e)) != e:
            raise InvariantError(f"constructed map is not an involution at {e}")
    if frozenset(phi(e) for e in b) != bstar:
        raise InvariantError("constructed map does not carry b onto b*")
    if M.size <= 15:
        for k in range(1, M.full_rank()):
            flats = {F.elements for F in M.flats_of_rank(k)}
            mapped = {frozenset(phi(e) for e in F) for F in flats}
            if mapped != flats:
                raise InvariantError(
                    f"constructed map does not preserve rank-{k} flats"
                )
    return phi


# ---------------------------------------------------------------------------
# realization


@dataclass(frozen=True)
class Realization:
    """A field realization produced from two Cremona bases sharing one element."""

    field: Field
    vectors: tuple[tuple, ...]
    matroid: Matroid
    sigma: ElementBijection
    reindexed_basis: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    kappa: dict[int, object]

    @property
    def class_count(self) -> int:
        return len(self.classes)


def _nonzero_field_element(field: Field, t: int):
    """The t-th element (0-based) of a canonical enumeration of nonzero values."""
    if field.kind == "Fp":
        if t + 1 >= field.size:
            raise InputError("ran out of nonzero field elements")
        return field.coerce(t + 1)
    return field.coerce(t + 1)


def realize(M: Matroid, d1: CremonaData, d2: CremonaData,
            field_spec: str | Field) -> Realization:
    """Vector realization of M from two Cremona bases meeting in one element.

    With b ∩ b* = {b_0} (reindexed to position 0), the non-basis elements
    split into E_+ (inside F-sets avoiding b_0, each a singleton) and E_0
    (inside the F-sets at b_0).  Elements of E_0 are grouped by the flat
    E_+ ∨ {e}; with N classes and an injective map κ of the classes into
    the nonzero field elements, the assignment

        b_i ↦ v_i,  e ∈ F_0i ↦ v_0 − κ(e) v_i,  e ∈ F_ij ↦ v_i − v_j

    realizes M over every field with at least N + 1 elements.  The
    isomorphism is verified against the full flats-of-rank census before
    returning; a failure there is an invariant violation.
    """
    field = field_spec if isinstance(field_spec, Field) else Field.from_spec(field_spec)
    shared = sorted(d1.basis_set() & d2.basis_set())
    if len(shared) != 1:
        raise InputError(
            f"realization needs |b ∩ b*| = 1, got {len(shared)} shared elements"
        )
    b0 = shared[0]
    ordered = [b0] + [e for e in d1.basis if e != b0]
    pos = {e: i for i, e in enumerate(ordered)}
    orig_pos = {e: i for i, e in enumerate(d1.basis)}

    def fset(e1: int, e2: int) -> frozenset[int]:
        return d1.pair_flat(orig_pos[e1], orig_pos[e2])

    d = len(ordered) - 1
    e_plus: set[int] = set()
    e_zero: set[int] = set()
    pair_at: dict[int, tuple[int, int]] = {}
    for i in range(1, d + 1):
        for e in fset(ordered[0], ordered[i]):
            e_zero.add(e)
            pair_at[e] = (0, i)
    for i, j in itertools.combinations(range(1, d + 1), 2):
        F = fset(ordered[i], ordered[j])
        if len(F) > 1:
            raise InvariantError(
                f"F-set of ({ordered[i]},{ordered[j]}) has {len(F)} elements; "
                "the structure theorem forces singletons away from the "
                "shared basis element"
            )
        for e in F:
            e_plus.add(e)
            pair_at[e] = (i, j)

    class_key: dict[int, frozenset[int]] = {}
    for e in sorted(e_zero):
        class_key[e] = M.closure(e_plus | {e}).elements
    grouped: dict[frozenset[int], list[int]] = {}
    for e in sorted(e_zero):
        grouped.setdefault(class_key[e], []).append(e)
    classes = tuple(sorted((tuple(v) for v in grouped.values()), key=lambda c: c[0]))
    N = len(classes)
    if field.size is not None and field.size < N + 1:
        raise InputError(
            f"field {field.spec} has {field.size} elements but the realization "
            f"needs at least N + 1 = {N + 1}"
        )
    kappa: dict[int, object] = {}
    for t, cls in enumerate(classes):
        value = _nonzero_field_element(field, t)
        for e in cls:
            kappa[e] = value

    zero, one = field.zero(), field.one()
    dim = d + 1
    vectors: list[tuple] = [()] * M.size
    for i, e in enumerate(ordered):
        vec = [zero] * dim
        vec[i] = one
        vectors[e] = tuple(vec)
    for e, (i, j) in pair_at.items():
        vec = [zero] * dim
        if i == 0:
            vec[0] = one
            vec[j] = zero - kappa[e]
        else:
            vec[i] = one
            vec[j] = zero - one
        vectors[e] = tuple(vec)
    if len({v for v in vectors}) != M.size:
        raise InvariantError("realization produced coinciding vectors")

    realized = Matroid(VectorBackend(field, vectors), list(M.ground.labels))
    if realized.full_rank() != M.full_rank():
        raise InvariantError("realization has the wrong rank")
    for k in range(1, M.full_rank()):
        ours = {F.elements for F in M.flats_of_rank(k)}
        theirs = {F.elements for F in realized.flats_of_rank(k)}
        if ours != theirs:
            raise InvariantError(
                f"realization disagrees with the matroid on rank-{k} flats"
            )
    sigma = ElementBijection(tuple(range(M.size)))
    return Realization(
        field=field,
        vectors=tuple(vectors),
        matroid=realized,
        sigma=sigma,
        reindexed_basis=tuple(ordered),
        classes=classes,
        kappa=kappa,
    )
