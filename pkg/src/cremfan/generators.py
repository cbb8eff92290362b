"""Named matroid constructors.

Covers the finite irreducible reflection-arrangement matroids (types A, B,
D, E, F, H) from explicit positive-root coordinates, graphic matroids,
uniform matroids, the Fano plane, rank-3 Dowling matroids, and the bundled
rank-3 braid-arrangement fixture with its documented element labeling.

Element orders are part of the public contract (serialization and CLI
element references depend on them) and are documented per family in
:func:`positive_roots`.
"""

from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable, Sequence

from .errors import InputError, InvariantError
from .field import Field, QuadSqrt5, primitive_int_vector, primitive_quad_vector, sign
from .matroid import (
    CircuitBackend,
    ElementBijection,
    LineBackend,
    Matroid,
    VectorBackend,
)

Vector = tuple

_FAMILY_RANKS = {"A": (1, None), "B": (2, None), "D": (3, None),
                 "E": (6, 8), "F": (4, 4), "H": (3, 4)}

ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "H": lambda n: {3: 15, 4: 60}[n],
}


# ---------------------------------------------------------------------------
# vector utilities


def inner(u: Sequence, v: Sequence):
    """Standard inner product over exact entries."""
    if len(u) != len(v):
        raise InputError("inner product of vectors of different lengths")
    total = None
    for x, y in zip(u, v):
        term = x * y
        total = term if total is None else total + term
    return 0 if total is None else total


def reflect(root: Sequence, v: Sequence) -> Vector:
    """Reflection of v in the hyperplane orthogonal to root.

    reflect(r, v) = v - 2 (<r, v> / <r, r>) r, exactly.
    """
    rr = inner(root, root)
    if sign(rr) == 0:
        raise InputError("cannot reflect in a zero root")
    rv = inner(root, v)
    coef = _exact_div(2 * rv, rr)
    return tuple(x - coef * r for x, r in zip(v, root))


def _exact_div(num, den):
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    if isinstance(den, int):
        den = Fraction(den)
    return num / den


def sign_normalize(vec: Sequence) -> Vector:
    """The vector or its negative, whichever has a positive leading entry."""
    for x in vec:
        s = sign(x)
        if s > 0:
            return tuple(vec)
        if s < 0:
            return tuple(-y for y in vec)
    raise InputError("cannot sign-normalize the zero vector")


def _canonical_key(vec: Sequence, field: Field) -> tuple:
    """Scale-and-sign invariant key: primitive integer form, leading entry > 0."""
    v = sign_normalize(vec)
    if field.kind == "Qsqrt5":
        return primitive_quad_vector([field.coerce(x) for x in v])
    if field.kind == "Q":
        return primitive_int_vector([field.coerce(x) for x in v])
    raise InputError("canonical vector keys need an ordered field")


# ---------------------------------------------------------------------------
# positive-root coordinates


def positive_roots(family: str, n: int) -> tuple[Field, list[Vector], list[str]]:
    """Positive-root coordinates, labels, and their field for one type.

    Element orders (all 1-based coordinate names ``x1, x2, ...``):

    * A_n: ``x_i - x_j`` for pairs (i, j), i < j <= n+1, in lexicographic
      pair order; ambient dimension n+1.
    * B_n: ``x_1 .. x_n`` first, then per pair (i, j) in lexicographic
      order ``x_i + x_j`` followed by ``x_i - x_j``.
    * D_n: per pair (i, j) in lexicographic order ``x_i + x_j`` then
      ``x_i - x_j``.
    * F_4: ``x_1 .. x_4``; the 12 pair roots as in B_4; then the 8 vectors
      ``x_1 + e2 x_2 + e3 x_3 + e4 x_4`` (signs e in {+1, -1}, doubled
      half-roots) ordered lexicographically with + before -.
    * E_8: the 56 pair roots as in D_8; then the 64 doubled half-roots
      ``x_1 + e2 x_2 + ... + e8 x_8`` with product of signs +1, ordered
      lexicographically with + before -.
    * E_7 / E_6: the E_8 elements orthogonal to ``x_7 + x_8`` (E_7), and
      additionally to ``x_6 - x_7`` (E_6), in E_8 order.
    * H_3 / H_4: icosahedral coordinates over Q(sqrt 5), uniformly scaled
      by 4 so every entry lies in Z[sqrt 5] and all roots share one length.
      H_3: the coordinate vectors (4,0,0), (0,4,0), (0,0,4) plus the sign
      choices of the even cyclic shifts of (2, 1+w, -1+w), w = sqrt 5.
      H_4: the coordinate vectors, the sign choices of (2,2,2,2), and the
      sign choices of the even permutations of (0, 2, -1+w, 1+w).  Each
      list is sign-normalized (leading entry positive), deduplicated, and
      sorted ascending in the lexicographic order of the real embedding;
      labels are positional: ``r1, r2, ...``.
    """
    family = family.upper()
    if family not in _FAMILY_RANKS:
        raise InputError(f"unknown family {family!r}")
    lo, hi = _FAMILY_RANKS[family]
    if n < lo or (hi is not None and n > hi):
        raise InputError(f"{family}_{n} is not in the finite classification list")
    if family == "A":
        return _roots_a(n)
    if family == "B":
        return _roots_b(n)
    if family == "D":
        return _roots_d(n)
    if family == "F":
        return _roots_f4()
    if family == "E":
        return _roots_e(n)
    return _roots_h(n)


def _unit(dim: int, i: int, value: int = 1) -> Vector:
    v = [0] * dim
    v[i] = value
    return tuple(v)


def _pair_roots(dim: int, n: int) -> tuple[list[Vector], list[str]]:
    vecs, labels = [], []
    for i, j in itertools.combinations(range(n), 2):
        plus = [0] * dim
        plus[i], plus[j] = 1, 1
        minus = [0] * dim
        minus[i], minus[j] = 1, -1
        vecs += [tuple(plus), tuple(minus)]
        labels += [f"x{i + 1}+x{j + 1}", f"x{i + 1}-x{j + 1}"]
    return vecs, labels


def _roots_a(n: int):
    dim = n + 1
    vecs, labels = [], []
    for i, j in itertools.combinations(range(dim), 2):
        v = [0] * dim
        v[i], v[j] = 1, -1
        vecs.append(tuple(v))
        labels.append(f"x{i + 1}-x{j + 1}")
    return Field.from_spec("Q"), vecs, labels


def _roots_b(n: int):
    vecs = [_unit(n, i) for i in range(n)]
    labels = [f"x{i + 1}" for i in range(n)]
    pv, pl = _pair_roots(n, n)
    return Field.from_spec("Q"), vecs + pv, labels + pl


def _roots_d(n: int):
    pv, pl = _pair_roots(n, n)
    return Field.from_spec("Q"), pv, pl


def _eps_label(epsilons: Sequence[int]) -> str:
    # epsilons[0] is the fixed +1 on x1
    parts = ["x1"]
    for k, e in enumerate(epsilons[1:], start=2):
        parts.append(("+" if e > 0 else "-") + f"x{k}")
    return "".join(parts)


def _roots_f4():
    vecs = [_unit(4, i) for i in range(4)]
    labels = [f"x{i + 1}" for i in range(4)]
    pv, pl = _pair_roots(4, 4)
    vecs += pv
    labels += pl
    for eps in itertools.product((1, -1), repeat=3):
        epsilons = (1,) + eps
        vecs.append(tuple(epsilons))
        labels.append(_eps_label(epsilons))
    return Field.from_spec("Q"), vecs, labels


def _roots_e(n: int):
    pv, pl = _pair_roots(8, 8)
    vecs = list(pv)
    labels = list(pl)
    for eps in itertools.product((1, -1), repeat=7):
        prod = 1
        for e in eps:
            prod *= e
        if prod != 1:
            continue
        epsilons = (1,) + eps
        vecs.append(epsilons)
        labels.append(_eps_label(epsilons))
    if n == 8:
        return Field.from_spec("Q"), vecs, labels
    checks = [tuple([0] * 6 + [1, 1])]  # x7 + x8
    if n == 6:
        checks.append(tuple([0] * 5 + [1, -1, 0]))  # x6 - x7
    keep_v, keep_l = [], []
    for v, lab in zip(vecs, labels):
        if all(inner(v, c) == 0 for c in checks):
            keep_v.append(v)
            keep_l.append(lab)
    return Field.from_spec("Q"), keep_v, keep_l


def _quad(a: int, b: int = 0) -> QuadSqrt5:
    return QuadSqrt5(a, b)


def _roots_h(n: int):
    field = Field.from_spec("Qsqrt5")
    zero, two, four = _quad(0), _quad(2), _quad(4)
    one_plus = _quad(1, 1)    # 1 + w
    one_minus = _quad(-1, 1)  # -1 + w
    raw: list[tuple] = []
    if n == 3:
        for i in range(3):
            vec = [zero] * 3
            vec[i] = four
            raw.append(tuple(vec))
        base = (two, one_plus, one_minus)
        shifts = [(0, 1, 2), (2, 0, 1), (1, 2, 0)]  # even cyclic shifts
        for s in shifts:
            pattern = tuple(base[s[k]] for k in range(3))
            for eps in itertools.product((1, -1), repeat=3):
                raw.append(tuple(e * x for e, x in zip(eps, pattern)))
    else:
        for i in range(4):
            vec = [zero] * 4
            vec[i] = four
            raw.append(tuple(vec))
        for eps in itertools.product((1, -1), repeat=4):
            raw.append(tuple(_quad(2 * e) for e in eps))
        base = (zero, two, one_minus, one_plus)
        for perm in itertools.permutations(range(4)):
            if _permutation_parity(perm) != 1:
                continue
            pattern = tuple(base[perm[k]] for k in range(4))
            for eps in itertools.product((1, -1), repeat=4):
                raw.append(tuple(e * x for e, x in zip(eps, pattern)))
    seen: set[tuple] = set()
    for v in raw:
        seen.add(sign_normalize(v))
    vecs = sorted(seen)  # lexicographic in the real embedding's total order
    labels = [f"r{k + 1}" for k in range(len(vecs))]
    return field, vecs, labels


def _permutation_parity(perm: Sequence[int]) -> int:
    parity = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


# ---------------------------------------------------------------------------
# named matroids


def coxeter_matroid(spec: str | tuple[str, int]) -> Matroid:
    """Arrangement matroid of a finite irreducible reflection type.

    Accepts "A3", "E8", ("H", 4), etc.  The result is a vector matroid
    whose backend exposes the positive-root coordinates.
    """
    if isinstance(spec, tuple):
        family, n = spec
    else:
        m = re.fullmatch(r"([ABDEFHabdefh])(\d+)", spec.strip())
        if m is None:
            raise InputError(f"bad Coxeter type {spec!r}")
        family, n = m.group(1), int(m.group(2))
    family = family.upper()
    field, vecs, labels = positive_roots(family, n)
    expected = ROOT_COUNTS[family](n)
    if len(vecs) != expected:
        raise InvariantError(
            f"{family}_{n}: generated {len(vecs)} roots, expected {expected}"
        )
    keys = {_canonical_key(v, field) for v in vecs}
    if len(keys) != expected:
        raise InvariantError(f"{family}_{n}: parallel roots in the generated set")
    M = Matroid(VectorBackend(field, vecs), labels)
    if M.full_rank() != n:
        raise InvariantError(
            f"{family}_{n}: rank {M.full_rank()} differs from the type rank {n}"
        )
    M.name = f"{family}{n}"
    return M


def graphic_matroid(edges: Sequence[tuple], labels: Sequence[str] | None = None) -> Matroid:
    """Cycle matroid of a simple graph, via the vectors x_u - x_v over Q."""
    verts = sorted({u for e in edges for u in e}, key=repr)
    vmap = {u: i for i, u in enumerate(verts)}
    seen = set()
    vectors = []
    auto_labels = []
    for e in edges:
        if len(e) != 2:
            raise InputError(f"edge {e!r} is not a vertex pair")
        u, v = e
        if u == v:
            raise InputError(f"self-loop at {u!r} is not allowed")
        key = frozenset((vmap[u], vmap[v]))
        if key in seen:
            raise InputError(f"duplicate (parallel) edge {e!r} is not allowed")
        seen.add(key)
        vec = [0] * len(verts)
        vec[vmap[u]], vec[vmap[v]] = 1, -1
        vectors.append(vec)
        auto_labels.append(f"{u}-{v}")
    M = Matroid(VectorBackend(Field.from_spec("Q"), vectors),
                labels if labels is not None else auto_labels)
    M.name = "graphic"
    return M


def complete_graph_matroid(n: int) -> Matroid:
    if n < 1:
        raise InputError("complete graph needs at least one vertex")
    return graphic_matroid(list(itertools.combinations(range(n), 2)))


def uniform(r: int, m: int) -> Matroid:
    """Uniform matroid U_{r,m} through its circuit list."""
    if r < 0 or m < 0 or r > m:
        raise InputError(f"uniform matroid U_{{{r},{m}}} is not defined")
    circuits = [] if r == m else list(itertools.combinations(range(m), r + 1))
    M = Matroid(CircuitBackend(m, circuits))
    M.name = f"U_{r}_{m}"
    return M


FANO_LINES = (
    frozenset({0, 1, 3}),
    frozenset({0, 2, 5}),
    frozenset({0, 4, 6}),
    frozenset({1, 2, 4}),
    frozenset({1, 5, 6}),
    frozenset({2, 3, 6}),
    frozenset({3, 4, 5}),
)


def fano() -> Matroid:
    """The Fano plane on labels 1..7 (0-based line indices in FANO_LINES)."""
    M = Matroid(LineBackend(7, FANO_LINES), [str(i + 1) for i in range(7)])
    M.name = "fano"
    return M


def fano_selfduality() -> tuple[Matroid, "IntegerLinearMap"]:
    """The Fano plane with its point-line duality as an indicator map.

    The map sends each point's indicator vector to the indicator vector of
    a line, realizing the classical self-duality of the plane on the
    quotient modulo the all-ones vector.  Its quotient determinant is -8,
    so it is a fan symmetry that is not a lattice isomorphism.
    """
    from .cremona import indicator_map

    M = fano()
    assignment = {
        0: frozenset({1, 2, 4}),
        1: frozenset({0, 2, 5}),
        2: frozenset({0, 1, 3}),
        3: frozenset({2, 3, 6}),
        4: frozenset({0, 4, 6}),
        5: frozenset({1, 5, 6}),
        6: frozenset({3, 4, 5}),
    }
    return M, indicator_map(M, assignment)


# ---------------------------------------------------------------------------
# Dowling matroids of rank 3


def group_table(name: str) -> dict[tuple[str, str], str]:
    """Multiplication table of a small named abelian group."""
    cyclic = re.fullmatch(r"[Zz](\d+)", name.strip())
    if cyclic:
        k = int(cyclic.group(1))
        if k < 1:
            raise InputError("cyclic group order must be positive")
        els = [str(i) for i in range(k)]
        return {(a, b): str((int(a) + int(b)) % k) for a in els for b in els}
    if name.strip().lower() in {"z2xz2", "v4", "klein"}:
        els = ["00", "01", "10", "11"]
        return {
            (a, b): f"{int(a[0]) ^ int(b[0])}{int(a[1]) ^ int(b[1])}"
            for a in els
            for b in els
        }
    raise InputError(f"unknown group {name!r}")


def _validate_group(table: dict[tuple[str, str], str]) -> list[str]:
    elements = sorted({g for pair in table for g in pair} | set(table.values()))
    for a in elements:
        for b in elements:
            if (a, b) not in table:
                raise InputError(f"group table is missing the product {a!r}*{b!r}")
            if table[(a, b)] not in elements:
                raise InputError("group table is not closed")
    for a in elements:
        for b in elements:
            for c in elements:
                if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                    raise InputError("group table is not associative")
    identity = None
    for e in elements:
        if all(table[(e, a)] == a and table[(a, e)] == a for a in elements):
            identity = e
            break
    if identity is None:
        raise InputError("group table has no identity")
    for a in elements:
        if not any(table[(a, b)] == identity for b in elements):
            raise InputError(f"group element {a!r} has no inverse")
    return elements


def dowling_rank3(table: dict[tuple[str, str], str] | str) -> Matroid:
    """Rank-3 Dowling matroid of a finite group, as a line backend.

    Elements: joints p1, p2, p3, then a^g_ij for (i, j) in (1,2), (1,3),
    (2,3) and g in sorted group order.  Lines: coordinate lines
    {p_i, p_j} + all a_ij, and transversal lines {a12^g, a23^h, a13^(g h)}.
    """
    if isinstance(table, str):
        table = group_table(table)
    elements = _validate_group(table)
    order = len(elements)
    labels = ["p1", "p2", "p3"]
    index: dict[tuple[str, str], int] = {}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        for g in elements:
            index[(f"{i}{j}", g)] = len(labels)
            labels.append(f"a{i}{j}:{g}")
    joints = {"1": 0, "2": 1, "3": 2}
    lines = []
    for i, j in ((1, 2), (1, 3), (2, 3)):
        lines.append(
            {joints[str(i)], joints[str(j)]} | {index[(f"{i}{j}", g)] for g in elements}
        )
    for g in elements:
        for h in elements:
            lines.append(
                {
                    index[("12", g)],
                    index[("23", h)],
                    index[("13", table[(g, h)])],
                }
            )
    M = Matroid(LineBackend(3 + 3 * order, lines), labels)
    M.name = f"dowling3:{order}"
    return M


# ---------------------------------------------------------------------------
# bundled fixture


def a3_arrangement() -> Matroid:
    """The bundled rank-3 braid arrangement with the documented labeling 1..6."""
    from . import serialize

    text = resources.files("cremfan").joinpath("data/a3_arrangement.json").read_text()
    return serialize.matroid_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# linear actions on generated matroids


def element_permutation(M: Matroid, linear_map: Callable[[Vector], Vector]) -> ElementBijection:
    """The element bijection induced by a linear map on coordinates.

    The map must permute the element set up to nonzero scalings, as
    reflections of an arrangement do; anything else is an invariant
    violation.
    """
    backend = M.backend
    if not isinstance(backend, VectorBackend):
        raise InputError("element_permutation needs a vector-backed matroid")
    field = backend.field
    lookup = getattr(M, "_key_lookup", None)
    if lookup is None:
        lookup = {
            _canonical_key(tuple(vec), field): i
            for i, vec in enumerate(backend.vectors)
        }
        M._key_lookup = lookup
    forward = []
    for vec in backend.vectors:
        image = linear_map(tuple(vec))
        idx = lookup.get(_canonical_key(image, field))
        if idx is None:
            raise InvariantError("linear map does not preserve the element set")
        forward.append(idx)
    if len(set(forward)) != len(forward):
        raise InvariantError("linear map is not injective on the element set")
    return ElementBijection(tuple(forward))


def reflection_permutation(M: Matroid, root: Sequence) -> ElementBijection:
    """Element permutation induced by the reflection in a root."""
    return element_permutation(M, lambda v: reflect(root, v))


def coordinate_swap(i: int, j: int) -> Callable[[Vector], Vector]:
    def fn(v: Vector) -> Vector:
        w = list(v)
        w[i], w[j] = w[j], w[i]
        return tuple(w)

    return fn


def coordinate_sign_flip(i: int) -> Callable[[Vector], Vector]:
    def fn(v: Vector) -> Vector:
        w = list(v)
        w[i] = -w[i]
        return tuple(w)

    return fn


def compose_linear(*maps: Callable[[Vector], Vector]) -> Callable[[Vector], Vector]:
    """Composition, applied right to left like function composition."""

    def fn(v: Vector) -> Vector:
        for g in reversed(maps):
            v = g(v)
        return v

    return fn


def orbit(generators: Sequence, seed, *, max_size: int = 1_000_000) -> set:
    """Closure of {seed} under the given generators.

    Generators may be ElementBijections (seed: element index or frozenset
    of indices, acted on elementwise) or callables on coordinate vectors
    (seed: tuple).
    """
    def act(g, x):
        if isinstance(g, ElementBijection):
            if isinstance(x, frozenset):
                return frozenset(g(e) for e in x)
            return g(x)
        return g(x)

    if isinstance(seed, (set, frozenset)):
        seed = frozenset(seed)
    found = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = act(g, x)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
                    if len(found) > max_size:
                        raise InputError("orbit exceeded max_size")
        frontier = nxt
    return found


# ---------------------------------------------------------------------------
# CLI-facing spec strings


def from_spec_string(spec: str) -> Matroid:
    """Build a matroid from a generator spec string.

    Formats: "A3".."H4" (Coxeter types), "K5" (complete graph), "U:2,3"
    (uniform), "fano", "dowling:<group>(Z1, Z2, ..., Z2xZ2)", and
    "a3-arrangement" (the bundled fixture).
    """
    s = spec.strip()
    if s == "fano":
        return fano()
    if s == "a3-arrangement":
        return a3_arrangement()
    m = re.fullmatch(r"[Kk](\d+)", s)
    if m:
        return complete_graph_matroid(int(m.group(1)))
    m = re.fullmatch(r"[Uu]:(\d+),(\d+)", s)
    if m:
        return uniform(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"dowling:(.+)", s)
    if m:
        return dowling_rank3(m.group(1))
    if re.fullmatch(r"[ABDEFHabdefh]\d+", s):
        return coxeter_matroid(s)
    raise InputError(f"unknown generator spec {spec!r}")
