"""Equivalence relations on zero-divisors and the induced vertex partitions.

Three relations matter here, always on the vertex set Z(R)*:

  associate     a ~ b  iff a = ub and b = av for units u, v
  neighborhood  a == b iff N(a) = N(b) in Gamma(R)
  annihilator   a ~m b iff ann(a) = ann(b), ann(x) = {y : xy = 0 or yx = 0}

Every partition stores classes as sorted vertex-index lists, ordered by
representative (the smallest member), with the cell kind needed by the
join machinery: an associate class induces a complete subgraph exactly
when its representative squares to zero, and is edgeless otherwise;
neighborhood classes are always edgeless.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import numth
from .graph import ZeroDivisorGraph, build_zdg
from .rings import GF, MatRing, ProductRing, Ring, RingError, Zn, construct_field, is_reduced


class RelationAgreementError(RingError):
    """A proven relation between the partitions failed on an actual ring."""


@dataclass
class VertexClass:
    representative: int  # vertex index of the smallest member
    members: list[int]  # sorted vertex indices
    size: int
    kind: str | None  # 'complete' | 'null' | None (annihilator partition)
    regularity: int  # degree inside the cell: size-1 if complete else 0

    @staticmethod
    def make(members, kind):
        members = sorted(members)
        reg = len(members) - 1 if kind == "complete" else 0
        return VertexClass(members[0], members, len(members), kind, reg)


@dataclass
class ClassPartition:
    relation: str  # 'associate' | 'neighborhood' | 'annihilator'
    classes: list[VertexClass]

    def index_sets(self) -> set[frozenset]:
        return {frozenset(c.members) for c in self.classes}

    def member_sets(self, vertices) -> set[frozenset]:
        return {frozenset(vertices[i] for i in c.members) for c in self.classes}

    def to_json(self, graph: ZeroDivisorGraph) -> dict:
        ring = graph.ring
        return {
            "relation": self.relation,
            "classes": [
                {
                    "rep": ring.label(graph.vertices[c.representative]),
                    "size": c.size,
                    "kind": c.kind,
                    "members": [ring.label(graph.vertices[i]) for i in c.members],
                }
                for c in self.classes
            ],
        }


def _finish(relation, blocks_with_kind) -> ClassPartition:
    classes = [VertexClass.make(members, kind) for members, kind in blocks_with_kind]
    classes.sort(key=lambda c: c.representative)
    return ClassPartition(relation, classes)


def partitions_equal(p: ClassPartition, q: ClassPartition) -> bool:
    return p.index_sets() == q.index_sets()


def _associate_kind(ring, rep) -> str:
    return "complete" if ring.mul(rep, rep) == ring.zero else "null"


def classes_associate(ring: Ring, element_cap: int | None = None) -> ClassPartition:
    """Associate classes by direct unit orbiting.

    The class of a is {ua : u a unit} meet {av : v a unit}; for a
    commutative ring the two orbits coincide and one suffices.
    """
    zd = ring.zero_divisors(element_cap)
    units = ring.units(element_cap)
    index = {a: i for i, a in enumerate(zd)}
    mul = ring.mul
    seen = set()
    blocks = []
    for i, a in enumerate(zd):
        if i in seen:
            continue
        left = {mul(u, a) for u in units}
        if ring.commutative:
            orbit = left
        else:
            orbit = left & {mul(a, u) for u in units}
        members = sorted(index[b] for b in orbit)
        seen.update(members)
        blocks.append((members, _associate_kind(ring, a)))
    return _finish("associate", blocks)


def classes_associate_zn(n: int) -> ClassPartition:
    """Associate classes of Z_n: one class per nontrivial divisor d of n,
    holding the phi(n/d) vertices x with gcd(x, n) = d; complete iff n | d^2.
    """
    ring = Zn(n)
    zd = ring.zero_divisors()
    index = {a: i for i, a in enumerate(zd)}
    blocks = []
    for d in numth.nontrivial_divisors(n):
        members = [index[x] for x in zd if gcd(x, n) == d]
        kind = "complete" if (d * d) % n == 0 else "null"
        blocks.append((members, kind))
    return _finish("associate", blocks)


def matrix_class_records(n: int, q: int, element_cap: int | None = None):
    """Associate classes of M_n(F_q) keyed by (row space, column space).

    Returns (ring, records); each record is a dict with the RREF bases,
    rank, member indices and a squares-to-zero flag.  The key determines
    the class: B ~ A exactly when B = UA = AV for invertible U, V, which
    preserves and is determined by the pair of spaces.
    """
    pk = numth.prime_power(q)
    if pk is None:
        raise RingError(f"{q} is not a prime power")
    ring = MatRing(n, construct_field(*pk))
    zd = ring.zero_divisors(element_cap)
    groups: dict[tuple, list[int]] = {}
    for i, a in enumerate(zd):
        key = (ring.row_space(a), ring.column_space(a))
        groups.setdefault(key, []).append(i)
    records = []
    for key, members in groups.items():
        rep = zd[members[0]]
        records.append(
            {
                "row_space": key[0],
                "column_space": key[1],
                "rank": len(key[0]),
                "members": sorted(members),
                "squares_to_zero": ring.mul(rep, rep) == ring.zero,
            }
        )
    records.sort(key=lambda r: r["members"][0])
    return ring, records


def classes_associate_matrix(n: int, q: int, element_cap: int | None = None) -> ClassPartition:
    _, records = matrix_class_records(n, q, element_cap)
    blocks = [
        (r["members"], "complete" if r["squares_to_zero"] else "null") for r in records
    ]
    return _finish("associate", blocks)


def classes_neighborhood(graph: ZeroDivisorGraph) -> ClassPartition:
    """Partition by equal open neighborhoods.

    With a zero diagonal, N(a) = N(b) is exactly row equality: equality off
    positions {a, b} plus the forced non-adjacency of a and b (a in N(b)
    would put b's row apart from a's at position b).  Grouping by raw row
    bytes therefore implements the masked comparison; the pairwise masked
    comparator in _neighborhood_classes_masked exists as a cross-check.
    """
    groups: dict[bytes, list[int]] = {}
    for i in range(graph.order):
        groups.setdefault(graph.adjacency[i].tobytes(), []).append(i)
    blocks = [(members, "null") for members in groups.values()]
    return _finish("neighborhood", blocks)


def _neighborhood_classes_masked(graph: ZeroDivisorGraph) -> ClassPartition:
    """Quadratic comparator: rows equal off {a, b} and a, b non-adjacent."""
    m = graph.order
    adj = graph.adjacency
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if adj[i, j]:
                continue
            mask = np.ones(m, dtype=bool)
            mask[i] = mask[j] = False
            if np.array_equal(adj[i][mask], adj[j][mask]):
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    blocks = [(members, "null") for members in groups.values()]
    return _finish("neighborhood", blocks)


def annihilator_keys(graph: ZeroDivisorGraph) -> list[bytes]:
    """Per-vertex ann(a) as a row of bits: the adjacency row with the
    diagonal position set when a^2 = 0 (a lies in its own annihilator)."""
    ring = graph.ring
    zero = ring.zero
    keys = []
    for i, a in enumerate(graph.vertices):
        row = graph.adjacency[i].copy()
        row[i] = ring.mul(a, a) == zero
        keys.append(row.tobytes())
    return keys


def classes_annihilator(ring: Ring, element_cap: int | None = None) -> ClassPartition:
    graph = build_zdg(ring, element_cap=element_cap)
    groups: dict[bytes, list[int]] = {}
    for i, key in enumerate(annihilator_keys(graph)):
        groups.setdefault(key, []).append(i)
    blocks = [(members, None) for members in groups.values()]
    return _finish("annihilator", blocks)


def _factor_blocks(factor: Ring, element_cap=None):
    """Blocks of one product component: {0}, the units, and each associate
    class of its zero-divisors.  Every element lands in exactly one block."""
    blocks = [[factor.zero]]
    zd = factor.zero_divisors(element_cap)
    if zd:
        part = classes_associate(factor, element_cap)
        for c in part.classes:
            blocks.append([zd[i] for i in c.members])
    units = factor.units(element_cap)
    blocks.append(units)
    return blocks  # all-zero block first, units last


def classes_product(ring: ProductRing, element_cap: int | None = None) -> ClassPartition:
    """Associate classes of a direct product: componentwise choices of
    (zero | unit | per-factor class), excluding all-zero and all-unit."""
    if not isinstance(ring, ProductRing):
        raise RingError("classes_product needs a direct product ring")
    zd = ring.zero_divisors(element_cap)
    index = {a: i for i, a in enumerate(zd)}
    factor_blocks = [_factor_blocks(f, element_cap) for f in ring.factors]
    blocks = []
    import itertools

    for choice in itertools.product(*[range(len(bs)) for bs in factor_blocks]):
        if all(c == 0 for c in choice):
            continue  # the zero element
        if all(c == len(bs) - 1 for c, bs in zip(choice, factor_blocks)):
            continue  # the units
        members = []
        for combo in itertools.product(*[bs[c] for c, bs in zip(choice, factor_blocks)]):
            members.append(index[combo])
        rep = zd[min(members)]
        blocks.append((members, _associate_kind(ring, rep)))
    return _finish("associate", blocks)


def classes_for(ring: Ring, relation: str = "associate", element_cap: int | None = None) -> ClassPartition:
    """Dispatch to the right partition constructor for (ring, relation)."""
    if relation == "associate":
        if isinstance(ring, Zn):
            return classes_associate_zn(ring.n)
        if isinstance(ring, MatRing):
            return classes_associate_matrix(ring.n, ring.field.q, element_cap)
        if isinstance(ring, ProductRing):
            return classes_product(ring, element_cap)
        return classes_associate(ring, element_cap)
    if relation == "neighborhood":
        return classes_neighborhood(build_zdg(ring, element_cap=element_cap))
    if relation == "annihilator":
        return classes_annihilator(ring, element_cap)
    raise RingError(f"unknown relation '{relation}'")


# ---------------------------------------------------------------------------
# structural agreements between the three relations


def _commutative_hypothesis(ring, element_cap):
    """A unit u with (1-u)^2 != 0."""
    one, zero = ring.one, ring.zero
    for u in ring.units(element_cap):
        d = ring.sub(one, u)
        if ring.mul(d, d) != zero:
            return True
    return False


def _noncommutative_hypothesis(ring, element_cap):
    """Units u, v with u + v = 1."""
    one = ring.one
    unit_set = set(ring.units(element_cap))
    return any(ring.sub(one, u) in unit_set for u in unit_set)


def check_relation_agreements(ring: Ring, element_cap: int | None = None) -> dict:
    """Verify the proven relationships between ~, == and ~m on one ring.

    Raises RelationAgreementError on any applicable failure (that means an
    implementation bug, not bad input); returns a per-check report.
    """
    graph = build_zdg(ring, element_cap=element_cap)
    assoc = classes_for(ring, "associate", element_cap)
    neigh = classes_neighborhood(graph)
    annih = classes_annihilator(ring, element_cap)
    reduced = is_reduced(ring, element_cap)
    checks = []
    failures = []

    def record(name, applicable, holds, detail=""):
        checks.append({"name": name, "applicable": applicable, "holds": holds, "detail": detail})
        if applicable and not holds:
            failures.append(name)

    record(
        "reduced-ring neighborhood equals annihilator",
        reduced,
        partitions_equal(neigh, annih) if reduced else True,
    )

    if ring.commutative:
        hyp = _commutative_hypothesis(ring, element_cap)
        hyp_name = "unit u with (1-u)^2 != 0"
    else:
        hyp = _noncommutative_hypothesis(ring, element_cap)
        hyp_name = "units u, v with u + v = 1"
    split_ok = True
    if hyp:
        neigh_by_vertex = {}
        for c in neigh.classes:
            for i in c.members:
                neigh_by_vertex[i] = frozenset(c.members)
        annih_by_vertex = {}
        for c in annih.classes:
            for i in c.members:
                annih_by_vertex[i] = frozenset(c.members)
        zero = ring.zero
        for i, a in enumerate(graph.vertices):
            if ring.mul(a, a) == zero:
                if neigh_by_vertex[i] != frozenset({i}):
                    split_ok = False
            elif neigh_by_vertex[i] != annih_by_vertex[i]:
                split_ok = False
    record(f"neighborhood classes split by squares ({hyp_name})", hyp, split_ok)

    if isinstance(ring, Zn):
        record(
            "Z_n associate classes are gcd classes",
            True,
            partitions_equal(classes_associate(ring, element_cap), classes_associate_zn(ring.n)),
        )

    semisimple_like = isinstance(ring, MatRing) or (
        isinstance(ring, ProductRing)
        and all(isinstance(f, (GF, MatRing)) or (isinstance(f, Zn) and numth.is_prime(f.n)) for f in ring.factors)
    )
    record(
        "semisimple associate equals annihilator",
        semisimple_like,
        partitions_equal(assoc, annih) if semisimple_like else True,
    )

    refinement = all(
        any(set(a.members) <= set(m.members) for m in annih.classes) for a in assoc.classes
    )
    record("associate refines annihilator", True, refinement)

    if failures:
        raise RelationAgreementError(
            f"relation agreement failed on {ring.spec_string()}: {', '.join(failures)}"
        )
    return {"ring": ring.spec_string(), "reduced": reduced, "checks": checks}
