"""Join decompositions of zero-divisor graphs and spectrum assembly.

The compressed graph of Gamma(R) under ~ (or under equal neighborhoods)
is a graph H on the classes; Gamma(R) is the generalized join over H of
the induced class subgraphs, each complete or edgeless.  The adjacency
and Laplacian spectra then split into values inherited from the cells
and the eigenvalues of two small quotient matrices:

    C_A[i][i] = r_i             C_A[i][j] = +sqrt(n_i n_j) on H-edges
    C_N[i][i] = N_i             C_N[i][j] = -sqrt(n_i n_j) on H-edges

with n_i the cell size, r_i its inner regularity and N_i the total size
of its H-neighborhood.  A complete cell contributes -1 (adjacency) and
N_i + n_i (Laplacian), each n_i - 1 times; a null cell contributes 0 and
N_i.  Everything is verified against a dense eigensolver oracle.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import numth
from .classes import ClassPartition, classes_for
from .counts import gl_order, zn_profile
from .eig import jacobi_eigen, jacobi_eigen_system
from .graph import ZeroDivisorGraph, build_zdg
from .rings import (
    GF,
    MatRing,
    ProductRing,
    Ring,
    RingError,
    Zn,
    gf_nullspace,
    gf_span_contains,
)

DEFAULT_TOL = 1e-7
CLUSTER_GAP = 1e-6
RECONSTRUCTION_LIMIT = 2000
CLOSED_CELL_CAP = 4096


class DecompositionError(Exception):
    """The partition does not induce a generalized join of the graph."""


class LiftError(Exception):
    pass


class LiftInapplicableError(LiftError):
    """The duplication formula's hypotheses do not hold for this input."""


class LiftVerificationError(LiftError):
    """The formula produced a value the explicit matrix disagrees with."""


class ShiftLemmaError(Exception):
    pass


@dataclass
class Cell:
    size: int  # n_i
    regularity: int  # r_i: size-1 for complete cells, 0 for null cells
    kind: str  # 'complete' | 'null'
    label: str
    members: list[int] | None  # original vertex indices; None on closed routes


@dataclass
class JoinDecomposition:
    relation: str
    cells: list[Cell]
    h_adjacency: np.ndarray  # boolean, no self-loops
    neighbor_weights: list[int]  # N_i = sum of n_j over H-neighbors
    source: str  # 'graph' | 'closed'

    @property
    def class_count(self) -> int:
        return len(self.cells)

    @property
    def order(self) -> int:
        return sum(c.size for c in self.cells)


@dataclass
class QuotientMatrix:
    flavor: str  # 'adjacency' | 'laplacian'
    entries: np.ndarray

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass
class SpectrumMultiset:
    values: list[float]  # ascending
    provenance: list[str]  # aligned tags: 'cell-inherited' | 'quotient' | 'brute'

    def __post_init__(self):
        assert len(self.values) == len(self.provenance)
        assert all(math.isfinite(v) for v in self.values)
        assert all(a <= b for a, b in zip(self.values, self.values[1:]))

    @staticmethod
    def from_pairs(pairs) -> "SpectrumMultiset":
        pairs = sorted(pairs, key=lambda t: t[0])
        return SpectrumMultiset([p[0] for p in pairs], [p[1] for p in pairs])

    def clusters(self, gap: float = CLUSTER_GAP) -> list[dict]:
        """Group near-equal sorted values for presentation only."""
        out = []
        run: list[float] = []
        for v in self.values:
            if run and v - run[-1] > gap:
                out.append({"value": sum(run) / len(run), "multiplicity": len(run)})
                run = []
            run.append(v)
        if run:
            out.append({"value": sum(run) / len(run), "multiplicity": len(run)})
        return out


@dataclass
class MultisetMatch:
    matched: bool
    max_deviation: float
    length_mismatch: bool = False


def _values_of(spectrum) -> list[float]:
    if isinstance(spectrum, SpectrumMultiset):
        return spectrum.values
    return [float(v) for v in spectrum]


def multiset_equal(s1, s2, tol: float = DEFAULT_TOL) -> MultisetMatch:
    """Compare two spectra as sorted multisets within an absolute tolerance."""
    a = sorted(_values_of(s1))
    b = sorted(_values_of(s2))
    if len(a) != len(b):
        return MultisetMatch(False, math.inf, length_mismatch=True)
    if not a:
        return MultisetMatch(True, 0.0)
    dev = max(abs(x - y) for x, y in zip(a, b))
    return MultisetMatch(dev <= tol, dev)


# ---------------------------------------------------------------------------
# decomposition


def decompose(
    graph: ZeroDivisorGraph,
    partition: ClassPartition,
    reconstruction_limit: int = RECONSTRUCTION_LIMIT,
) -> JoinDecomposition:
    """Turn a vertex partition into a generalized-join decomposition.

    Each part must induce a complete or an edgeless subgraph, and
    adjacency between two parts must be all-or-nothing; both facts are
    re-verified here rather than trusted.  For graphs of at most
    reconstruction_limit vertices the blow-up of the result is compared
    with the original adjacency matrix entry for entry.
    """
    adj = graph.adjacency
    covered = sorted(i for c in partition.classes for i in c.members)
    if covered != list(range(graph.order)):
        raise DecompositionError("partition does not cover the vertex set exactly")

    cells = []
    for c in partition.classes:
        members = c.members
        n_i = len(members)
        sub = adj[np.ix_(members, members)]
        off_diag = sub[~np.eye(n_i, dtype=bool)]
        if off_diag.size and off_diag.all():
            observed = "complete"
        elif not off_diag.any():
            observed = "null"
        else:
            raise DecompositionError(
                f"class of {graph.ring.label(graph.vertices[c.representative])} "
                "induces neither a complete nor an edgeless subgraph"
            )
        kind = c.kind
        if kind is None or n_i == 1:
            # singletons are both complete and edgeless; keep the claimed
            # kind when the partition supplies one, it does not affect
            # assembly (r_i = 0 either way)
            kind = c.kind or observed
        elif kind != observed:
            raise DecompositionError(
                f"claimed {kind} cell is actually {observed} "
                f"(representative {graph.ring.label(graph.vertices[c.representative])})"
            )
        cells.append(
            Cell(
                size=n_i,
                regularity=n_i - 1 if kind == "complete" else 0,
                kind=kind,
                label=graph.ring.label(graph.vertices[c.representative]),
                members=list(members),
            )
        )

    m = len(cells)
    h = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            block = adj[np.ix_(cells[i].members, cells[j].members)]
            if block.all():
                h[i, j] = h[j, i] = True
            elif block.any():
                raise DecompositionError(
                    f"adjacency between the classes of {cells[i].label} and "
                    f"{cells[j].label} is not constant"
                )
    weights = [int(sum(cells[j].size for j in range(m) if h[i, j])) for i in range(m)]
    dec = JoinDecomposition(partition.relation, cells, h, weights, source="graph")

    if graph.order <= reconstruction_limit:
        if not np.array_equal(blow_up(dec), adj):
            raise DecompositionError("blow-up does not reproduce the adjacency matrix")
    return dec


def blow_up(dec: JoinDecomposition) -> np.ndarray:
    """Reconstruct the full adjacency matrix from the decomposition.

    Cells built from a graph carry their original vertex indices and the
    result is laid out on those; closed-form cells are laid out in cell
    order."""
    total = dec.order
    out = np.zeros((total, total), dtype=bool)
    if all(c.members is not None for c in dec.cells):
        spans = [c.members for c in dec.cells]
    else:
        spans = []
        start = 0
        for c in dec.cells:
            spans.append(list(range(start, start + c.size)))
            start += c.size
    for i, c in enumerate(dec.cells):
        if c.kind == "complete" and c.size > 1:
            block = ~np.eye(c.size, dtype=bool)
            out[np.ix_(spans[i], spans[i])] = block
        for j in range(i + 1, dec.class_count):
            if dec.h_adjacency[i, j]:
                out[np.ix_(spans[i], spans[j])] = True
                out[np.ix_(spans[j], spans[i])] = True
    return out


def quotient_adjacency(dec: JoinDecomposition) -> QuotientMatrix:
    m = dec.class_count
    c = np.zeros((m, m))
    for i in range(m):
        c[i, i] = dec.cells[i].regularity
        for j in range(i + 1, m):
            if dec.h_adjacency[i, j]:
                c[i, j] = c[j, i] = math.sqrt(dec.cells[i].size * dec.cells[j].size)
    return QuotientMatrix("adjacency", c)


def quotient_laplacian(dec: JoinDecomposition) -> QuotientMatrix:
    m = dec.class_count
    c = np.zeros((m, m))
    for i in range(m):
        c[i, i] = dec.neighbor_weights[i]
        for j in range(i + 1, m):
            if dec.h_adjacency[i, j]:
                c[i, j] = c[j, i] = -math.sqrt(dec.cells[i].size * dec.cells[j].size)
    return QuotientMatrix("laplacian", c)


def assemble_adjacency_spectrum(dec: JoinDecomposition) -> SpectrumMultiset:
    """Cell-inherited values (-1 per complete cell, 0 per null cell, each
    n_i - 1 times) together with the eigenvalues of C_A."""
    pairs = []
    for cell in dec.cells:
        inherited = -1.0 if cell.kind == "complete" else 0.0
        pairs.extend((inherited, "cell-inherited") for _ in range(cell.size - 1))
    if dec.class_count:
        for v in jacobi_eigen(quotient_adjacency(dec).entries):
            pairs.append((v, "quotient"))
    spectrum = SpectrumMultiset.from_pairs(pairs)
    assert len(spectrum.values) == dec.order
    return spectrum


def assemble_laplacian_spectrum(dec: JoinDecomposition) -> SpectrumMultiset:
    """Cell-inherited values (N_i + n_i per complete cell, N_i per null
    cell, each n_i - 1 times) together with the eigenvalues of C_N."""
    pairs = []
    for cell, big_n in zip(dec.cells, dec.neighbor_weights):
        inherited = float(big_n + cell.size) if cell.kind == "complete" else float(big_n)
        pairs.extend((inherited, "cell-inherited") for _ in range(cell.size - 1))
    if dec.class_count:
        for v in jacobi_eigen(quotient_laplacian(dec).entries):
            pairs.append((v, "quotient"))
    spectrum = SpectrumMultiset.from_pairs(pairs)
    assert len(spectrum.values) == dec.order
    return spectrum


def assemble_spectrum(dec: JoinDecomposition, flavor: str) -> SpectrumMultiset:
    if flavor == "adjacency":
        return assemble_adjacency_spectrum(dec)
    if flavor == "laplacian":
        return assemble_laplacian_spectrum(dec)
    raise ValueError(f"unknown flavor '{flavor}'")


# ---------------------------------------------------------------------------
# the oracle


def adjacency_matrix(graph: ZeroDivisorGraph) -> np.ndarray:
    return graph.adjacency.astype(np.float64)


def laplacian_matrix(graph: ZeroDivisorGraph) -> np.ndarray:
    a = adjacency_matrix(graph)
    return np.diag(a.sum(axis=1)) - a


def brute_spectrum(graph: ZeroDivisorGraph, flavor: str) -> SpectrumMultiset:
    """Direct dense eigendecomposition of A or D - A."""
    if flavor == "adjacency":
        m = adjacency_matrix(graph)
    elif flavor == "laplacian":
        m = laplacian_matrix(graph)
    else:
        raise ValueError(f"unknown flavor '{flavor}'")
    values = jacobi_eigen(m)
    return SpectrumMultiset(values, ["brute"] * len(values))


# ---------------------------------------------------------------------------
# closed-form decompositions (no element enumeration)


def decomposition_from_zn_profile(n: int) -> JoinDecomposition:
    """Join decomposition of Gamma(Z_n) straight from the divisor lattice."""
    profile = zn_profile(n)
    cells = [
        Cell(
            size=e.size,
            regularity=e.size - 1 if e.kind == "complete" else 0,
            kind=e.kind,
            label=f"[{e.d}]",
            members=None,
        )
        for e in profile.entries
    ]
    m = len(cells)
    index = {e.d: i for i, e in enumerate(profile.entries)}
    h = np.zeros((m, m), dtype=bool)
    for i, e in enumerate(profile.entries):
        for d_prime in e.neighbors:
            h[i, index[d_prime]] = True
    assert np.array_equal(h, h.T)
    weights = [e.big_n for e in profile.entries]
    return JoinDecomposition("associate", cells, h, weights, source="closed")


@dataclass(frozen=True)
class _FactorClass:
    """One associate class inside a single factor M_n(F_q) (fields are the
    n = 1 case): the zero class, the unit class, or a proper class keyed
    by its (row space, column space) pair of RREF bases."""

    tag: str  # 'zero' | 'unit' | 'proper'
    rank: int
    size: int
    label: str
    row_space: tuple = ()
    col_space: tuple = ()
    kernel: tuple = ()  # RREF basis of the right kernel, proper classes only
    sq_zero: bool = False


def _left_kills(field, width, x: _FactorClass, y: _FactorClass) -> bool:
    """Does x * y = 0 hold for this component, at class level?"""
    if x.tag == "zero" or y.tag == "zero":
        return True
    if x.tag == "unit" or y.tag == "unit":
        return False
    return gf_span_contains(field, x.kernel, y.col_space, width)


def _all_subspaces(field, n: int, r: int):
    """Canonical RREF bases of every r-dimensional subspace of F_q^n,
    generated by pivot-column choice plus free entries."""
    if r == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), r):
        free = [
            (i, j)
            for i, p in enumerate(pivots)
            for j in range(p + 1, n)
            if j not in pivots
        ]
        for values in itertools.product(range(field.q), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(row) for row in rows)


def _matrix_factor_classes(field, n: int) -> list[_FactorClass]:
    out = [_FactorClass("zero", 0, 1, "0")]
    for r in range(1, n):
        size = gl_order(r, field.q)
        row_spaces = list(_all_subspaces(field, n, r))
        col_spaces = row_spaces
        for ri, row in enumerate(row_spaces):
            kernel = gf_nullspace(field, row, n)
            for ci, col in enumerate(col_spaces):
                out.append(
                    _FactorClass(
                        "proper",
                        r,
                        size,
                        f"r{r}.{ri}.{ci}",
                        row_space=row,
                        col_space=col,
                        kernel=kernel,
                        sq_zero=gf_span_contains(field, kernel, col, n),
                    )
                )
    out.append(_FactorClass("unit", n, gl_order(n, field.q), "u"))
    return out


def _field_factor_classes(q: int) -> list[_FactorClass]:
    return [
        _FactorClass("zero", 0, 1, "0"),
        _FactorClass("unit", 1, q - 1, "u"),
    ]


def _semisimple_factors(ring: Ring):
    """Normalize a semisimple ring into (field, n) component descriptors;
    rejects anything with nilpotents."""
    if isinstance(ring, ProductRing):
        parts = ring.factors
    else:
        parts = (ring,)
    out = []
    for part in parts:
        if isinstance(part, MatRing):
            out.append((part.field, part.n))
        elif isinstance(part, GF):
            out.append((part, 1))
        elif isinstance(part, Zn) and numth.is_prime(part.n):
            out.append((part, 1))
        else:
            raise RingError(
                f"{part.spec_string()} is not a matrix ring over a field; "
                "closed-form class data only covers semisimple rings"
            )
    return out


def decomposition_semisimple_closed(
    ring: Ring, cell_cap: int = CLOSED_CELL_CAP
) -> JoinDecomposition:
    """Join decomposition of a semisimple ring from componentwise class
    descriptors: sizes by the GL-order products, kinds by the square-zero
    test on (row space, column space) pairs, compressed adjacency by
    kernel containment.  No ring elements are enumerated."""
    factors = _semisimple_factors(ring)
    per_factor = []
    for field, n in factors:
        if n == 1:
            per_factor.append(_field_factor_classes(field.q if isinstance(field, GF) else field.n))
        else:
            per_factor.append(_matrix_factor_classes(field, n))

    combos = []
    for combo in itertools.product(*per_factor):
        if all(f.tag == "zero" for f in combo):
            continue
        if all(f.tag == "unit" for f in combo):
            continue
        combos.append(combo)
    if len(combos) > cell_cap:
        raise RingError(
            f"{len(combos)} classes exceed the closed-route cap of {cell_cap}"
        )

    cells = []
    for combo in combos:
        size = 1
        for f in combo:
            size *= f.size
        complete = all(f.tag == "zero" or (f.tag == "proper" and f.sq_zero) for f in combo)
        label = "(" + ",".join(f.label for f in combo) + ")" if len(combo) > 1 else combo[0].label
        cells.append(
            Cell(
                size=size,
                regularity=size - 1 if complete else 0,
                kind="complete" if complete else "null",
                label=label,
                members=None,
            )
        )

    m = len(combos)
    h = np.zeros((m, m), dtype=bool)
    widths = [n for _, n in factors]
    fields = [field for field, _ in factors]
    for i in range(m):
        for j in range(i + 1, m):
            left = all(
                _left_kills(fields[k], widths[k], combos[i][k], combos[j][k])
                for k in range(len(factors))
            )
            right = left or all(
                _left_kills(fields[k], widths[k], combos[j][k], combos[i][k])
                for k in range(len(factors))
            )
            h[i, j] = h[j, i] = left or right
    weights = [int(sum(cells[j].size for j in range(m) if h[i, j])) for i in range(m)]
    return JoinDecomposition("associate", cells, h, weights, source="closed")


# ---------------------------------------------------------------------------
# ring-level entry points


def ring_join_decomposition(
    ring: Ring,
    relation: str = "associate",
    method: str = "auto",
    element_cap: int | None = None,
    vertex_cap: int | None = None,
) -> JoinDecomposition:
    """Decompose Gamma(ring) by the requested relation.

    method 'graph' enumerates the ring and verifies the join structure;
    'closed' derives cells from the divisor lattice (Z_n) or component
    ranks (semisimple rings) without enumeration; 'auto' prefers the
    graph route while it fits under the caps."""
    if method not in ("auto", "graph", "closed"):
        raise ValueError(f"unknown method '{method}'")
    if method == "closed":
        if relation != "associate":
            raise RingError("closed-form decompositions exist for the associate relation only")
        if isinstance(ring, Zn) and not numth.is_prime(ring.n):
            return decomposition_from_zn_profile(ring.n)
        return decomposition_semisimple_closed(ring)
    try:
        graph = build_zdg(ring, vertex_cap=vertex_cap, element_cap=element_cap)
    except RingError:
        if method == "graph":
            raise
        return ring_join_decomposition(ring, relation, "closed")
    partition = classes_for(ring, relation, element_cap)
    return decompose(graph, partition)


def spectrum_pair(dec: JoinDecomposition) -> tuple[SpectrumMultiset, SpectrumMultiset]:
    return assemble_adjacency_spectrum(dec), assemble_laplacian_spectrum(dec)


def spectrum_zn(
    n: int, relation: str = "associate", method: str = "auto"
) -> tuple[SpectrumMultiset, SpectrumMultiset]:
    """Adjacency and Laplacian spectra of Gamma(Z_n) via the join."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return spectrum_pair(ring_join_decomposition(Zn(n), relation, method))


def spectrum_semisimple(
    ring: Ring, relation: str = "associate", method: str = "auto"
) -> tuple[SpectrumMultiset, SpectrumMultiset]:
    """Adjacency and Laplacian spectra of Gamma(R) for a product of
    matrix rings over fields (fields themselves included)."""
    _semisimple_factors(ring)  # raises for non-semisimple input
    return spectrum_pair(ring_join_decomposition(ring, relation, method))


@dataclass
class VerifyOutcome:
    ring_spec: str
    order: int
    relation: str
    results: dict[str, MultisetMatch]

    @property
    def matched(self) -> bool:
        return all(r.matched for r in self.results.values())

    @property
    def max_deviation(self) -> float:
        devs = [r.max_deviation for r in self.results.values()]
        return max(devs) if devs else 0.0


def verify_ring(
    ring: Ring,
    relation: str = "associate",
    tol: float = DEFAULT_TOL,
    flavors=("adjacency", "laplacian"),
    element_cap: int | None = None,
    vertex_cap: int | None = None,
) -> VerifyOutcome:
    """Assemble spectra through the join and compare with the dense oracle."""
    graph = build_zdg(ring, vertex_cap=vertex_cap, element_cap=element_cap)
    partition = classes_for(ring, relation, element_cap)
    dec = decompose(graph, partition)
    results = {}
    for flavor in flavors:
        assembled = assemble_spectrum(dec, flavor)
        oracle = brute_spectrum(graph, flavor)
        results[flavor] = multiset_equal(assembled, oracle, tol)
    return VerifyOutcome(ring.spec_string(), graph.order, relation, results)


# ---------------------------------------------------------------------------
# small matrix lemmas


def fiedler_combine(alpha, u, beta, v, rho: float) -> list[float]:
    """Spectrum of [[A, rho*u*v^T], [rho*v*u^T, B]] given the spectra of A
    and B: alpha[0] and beta[0] must be the eigenvalues belonging to the
    unit eigenvectors u of A and v of B.  The result keeps alpha[1:] and
    beta[1:] and replaces alpha[0], beta[0] by the eigenvalues of
    [[alpha[0], rho], [rho, beta[0]]]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    for name, w in (("u", u), ("v", v)):
        norm = float(np.linalg.norm(w))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"{name} is not unit-norm (|{name}| = {norm!r})")
    alpha = [float(x) for x in alpha]
    beta = [float(x) for x in beta]
    corner = np.array([[alpha[0], rho], [rho, beta[0]]])
    return sorted(alpha[1:] + beta[1:] + jacobi_eigen(corner))


def fiedler_check(a, b, u, v, rho: float, tol: float = 1e-8) -> MultisetMatch:
    """Build the combined matrix explicitly and compare its spectrum with
    fiedler_combine.  u and v must be unit eigenvectors of a and b."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    alpha_1 = float(u @ a @ u)
    beta_1 = float(v @ b @ v)
    for name, (mat, vec, val) in {
        "u": (a, u, alpha_1),
        "v": (b, v, beta_1),
    }.items():
        if np.max(np.abs(mat @ vec - val * vec)) > tol:
            raise ValueError(f"{name} is not an eigenvector of its matrix within {tol}")

    def spectrum_without(mat, val):
        values = jacobi_eigen(mat)
        values.pop(min(range(len(values)), key=lambda i: abs(values[i] - val)))
        return values

    alpha = [alpha_1] + spectrum_without(a, alpha_1)
    beta = [beta_1] + spectrum_without(b, beta_1)
    predicted = fiedler_combine(alpha, u, beta, v, rho)

    top = np.hstack([a, rho * np.outer(u, v)])
    bottom = np.hstack([rho * np.outer(v, u), b])
    combined = np.vstack([top, bottom])
    return multiset_equal(predicted, jacobi_eigen(combined), tol)


@dataclass
class ShiftReport:
    pairs: list[tuple[float, float]]  # (eigenvalue of DAD, matched diagonal of B)
    matched: bool
    max_deviation: float


def check_shift_lemma(b_diag, a, d_diag, tol: float = 1e-8) -> ShiftReport:
    """Verify sigma(B + DAD) = sigma(B) + sigma(DAD) for diagonal B, D and
    symmetric A with AB = BA.

    Commutation makes B and DAD simultaneously diagonalizable: every
    eigenvector w of DAD must already be an eigenvector of B, so each
    eigenvalue mu of DAD picks up the diagonal value beta carried by w,
    and the spectrum of the sum is the multiset of mu + beta."""
    b_diag = np.asarray(b_diag, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    d_diag = np.asarray(d_diag, dtype=np.float64)
    commutator = a * b_diag[None, :] - b_diag[:, None] * a
    if np.any(commutator != 0.0):
        raise ShiftLemmaError("A and B do not commute")
    dad = d_diag[:, None] * a * d_diag[None, :]
    mus, vecs = jacobi_eigen_system(dad)
    pairs = []
    for idx in range(len(mus)):
        w = vecs[:, idx]
        beta = float(w @ (b_diag * w))
        residual = float(np.max(np.abs(b_diag * w - beta * w)))
        if residual > tol:
            raise ShiftLemmaError(
                f"eigenvector {idx} of DAD is not an eigenvector of B "
                f"(residual {residual:.3e})"
            )
        pairs.append((float(mus[idx]), beta))
    summed = [mu + beta for mu, beta in pairs]
    direct = jacobi_eigen(np.diag(b_diag) + dad)
    match = multiset_equal(summed, direct, tol)
    return ShiftReport(pairs, match.matched, match.max_deviation)


@dataclass
class LiftResult:
    mu: float
    vector: np.ndarray
    matrix: np.ndarray
    residual: float


def duplicate_lift(b, j: int, m: int, lam: float, v, tol: float = 1e-8) -> LiftResult:
    """Track an eigenpair through duplicating index j of a matrix m times.

    Given B with eigenpair (lam, v), the matrix A = B[ix, ix] for the
    index list ix that repeats j m times has the eigenvalue

        mu = lam + (sum_i B[i, j] / sum_i v[i]) * (m - 1) * v[j]

    with eigenvector w = v[ix].  When v[j] = 0 the shift vanishes and
    mu = lam without touching the quotient.  The pair is verified on the
    explicitly built A; a residual above tol raises, reporting both the
    formula value and the Rayleigh quotient of w."""
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise LiftError("B must be a square matrix")
    n = b.shape[0]
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (n,):
        raise LiftError("eigenvector length must match the matrix order")
    if not 0 <= j < n:
        raise LiftError(f"index {j} out of range for order {n}")
    if m < 1:
        raise LiftError("multiplicity must be at least 1")
    base_residual = float(np.max(np.abs(b @ v - lam * v))) if n else 0.0
    if base_residual > tol:
        raise LiftError(
            f"(lambda, v) is not an eigenpair of B (residual {base_residual:.3e})"
        )
    if m == 1:
        return LiftResult(float(lam), v.copy(), b.copy(), base_residual)

    if abs(v[j]) < 1e-12:
        mu = float(lam)
    else:
        v_sum = float(v.sum())
        if abs(v_sum) < 1e-12:
            raise LiftInapplicableError(
                "formula inapplicable: eigenvector entries sum to zero "
                "while the duplicated entry is nonzero"
            )
        col_sum = float(b[:, j].sum())
        mu = float(lam) + (col_sum / v_sum) * (m - 1) * float(v[j])

    ix = list(range(j)) + [j] * m + list(range(j + 1, n))
    a = b[np.ix_(ix, ix)]
    w = v[ix]
    residual = float(np.max(np.abs(a @ w - mu * w)))
    if residual > tol:
        rayleigh = float(w @ a @ w) / float(w @ w)
        raise LiftVerificationError(
            f"lifted pair fails verification: formula mu = {mu!r}, "
            f"Rayleigh quotient {rayleigh!r}, residual {residual:.3e}"
        )
    return LiftResult(mu, w, a, residual)


# ---------------------------------------------------------------------------
# the reciprocal-pairing report


def boolean_pairing_report(values, tol: float = CLUSTER_GAP) -> dict:
    """Try to match the nonzero values into {lambda, -1/lambda} pairs.

    Works greedily from the largest magnitude down; reports the pairs,
    any leftovers, and the count of (near-)zero values.  This is a
    reporting check only: callers warn on failure instead of asserting."""
    values = [float(v) for v in _values_of(values)]
    zeros = [v for v in values if abs(v) <= tol]
    remaining = sorted((v for v in values if abs(v) > tol), key=abs, reverse=True)
    paired = []
    unpaired = []
    while remaining:
        lam = remaining.pop(0)
        target = -1.0 / lam
        best = None
        for idx, candidate in enumerate(remaining):
            if abs(candidate - target) <= tol:
                best = idx
                break
        if best is None:
            unpaired.append(lam)
        else:
            paired.append((lam, remaining.pop(best)))
    return {
        "paired": paired,
        "unpaired": unpaired,
        "zero_count": len(zeros),
        "matched": not unpaired,
    }
