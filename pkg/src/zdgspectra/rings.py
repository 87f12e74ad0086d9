"""Finite rings: Z_n, GF(p^k), full matrix rings over GF, and direct products.

Ring elements are plain hashable payloads: residues and field elements are
ints, matrices are row-major tuples of tuples of field ints, product
elements are tuples of component payloads.  Each ring object supplies exact
arithmetic, unit detection, zero-divisor enumeration and canonical labels
for its own payloads.  Element order is always lexicographic on the payload,
so index 0 is the zero element and enumeration is reproducible.

Field elements are encoded as integers in [0, p^k): the value
sum(c_i * p^i) stands for the coefficient vector (c_0, ..., c_{k-1}) of a
polynomial in x.  The modulus is the lexicographically smallest monic
irreducible of degree k, coefficients compared from the constant term up,
which makes GF(4) use x^2+x+1 and GF(9) use x^2+1.

The ring-spec grammar (whitespace is ignored, products flatten left to
right):

    ring := "Zn(" int ")" | "GF(" int ")" | "M(" int "," ring ")" | ring "x" ring
"""
from __future__ import annotations

import itertools
from math import gcd

from . import numth

DEFAULT_ELEMENT_CAP = 20000
FIELD_TABLE_MAX_ORDER = 512


class RingError(Exception):
    """Base class for ring construction and arithmetic errors."""


class RingSpecError(RingError):
    """Malformed ring-spec text; carries the offending position."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class EnumerationCapError(RingError):
    """Raised when enumerating a ring would exceed the element cap."""


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p (little-endian coefficient tuples)


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m, over F_p."""
    a = list(a)
    dm = len(m) - 1
    while len(_poly_trim(tuple(a))) - 1 >= dm:
        a = list(_poly_trim(tuple(a)))
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i in range(dm + 1):
            a[shift + i] = (a[shift + i] - lead * m[i]) % p
    return _poly_trim(tuple(a))


def _poly_is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..k//2."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for cs in itertools.product(range(p), repeat=d):
            if not _poly_mod(poly, cs + (1,), p):
                return False
    return True


def _smallest_irreducible(p, k):
    # Lexicographic scan over (c_0, ..., c_{k-1}); leading coefficient is 1.
    for cs in itertools.product(range(p), repeat=k):
        poly = cs + (1,)
        if _poly_is_irreducible(poly, p):
            return poly
    raise RingError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


# ---------------------------------------------------------------------------


class Ring:
    """Common behavior: cached enumeration, unit/zero-divisor splits."""

    kind = "?"
    commutative = True
    cardinality = 0

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.spec_string()

    def spec_string(self) -> str:
        raise NotImplementedError

    # arithmetic on payloads
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def label(self, a) -> str:
        raise NotImplementedError

    def _enumerate(self):
        raise NotImplementedError

    def elements(self, cap: int | None = None) -> list:
        """All elements in canonical (lexicographic) order, zero first."""
        cap = DEFAULT_ELEMENT_CAP if cap is None else cap
        if self.cardinality > cap:
            raise EnumerationCapError(
                f"{self.spec_string()} has {self.cardinality} elements, over the cap {cap}"
            )
        cached = getattr(self, "_elements", None)
        if cached is None:
            cached = self._enumerate()
            self._elements = cached
        return cached

    def units(self, cap: int | None = None) -> list:
        cached = getattr(self, "_units", None)
        if cached is None:
            self._split(cap)
            cached = self._units
        return cached

    def zero_divisors(self, cap: int | None = None) -> list:
        """Nonzero non-units, in element order.

        In a finite ring every nonzero element is a unit or a (one-sided)
        zero divisor, so no annihilator search is needed here; tests check
        the definition directly.
        """
        cached = getattr(self, "_zero_divisors", None)
        if cached is None:
            self._split(cap)
            cached = self._zero_divisors
        return cached

    def _split(self, cap):
        units, zds = [], []
        for a in self.elements(cap):
            if a == self.zero:
                continue
            (units if self.is_unit(a) else zds).append(a)
        self._units = units
        self._zero_divisors = zds


class Zn(Ring):
    """The ring of integers modulo n."""

    kind = "Zn"
    commutative = True

    def __init__(self, n: int):
        if n < 2:
            raise RingError("Zn modulus must be at least 2")
        self.n = n
        self.cardinality = n
        self.zero = 0
        self.one = 1 % n

    def key(self):
        return ("Zn", self.n)

    def spec_string(self):
        return f"Zn({self.n})"

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def is_unit(self, a):
        return gcd(a, self.n) == 1

    def label(self, a):
        return str(a)

    def _enumerate(self):
        return list(range(self.n))


class GF(Ring):
    """The finite field with p^k elements.

    Multiplication and inverses go through lookup tables for orders up to
    FIELD_TABLE_MAX_ORDER; larger fields fall back to on-the-fly polynomial
    arithmetic modulo the stored irreducible.
    """

    kind = "GF"
    commutative = True

    def __init__(self, p: int, k: int = 1):
        if not numth.is_prime(p):
            raise RingError(f"{p} is not prime")
        if k < 1:
            raise RingError("field extension degree must be at least 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.cardinality = self.q
        self.zero = 0
        self.one = 1
        self.modulus = _smallest_irreducible(p, k)
        self._tabled = self.q <= FIELD_TABLE_MAX_ORDER
        if self._tabled:
            self._build_tables()

    def key(self):
        return ("GF", self.p, self.k)

    def spec_string(self):
        return f"GF({self.q})"

    def _digits(self, a):
        cs, p = [], self.p
        for _ in range(self.k):
            a, r = divmod(a, p)
            cs.append(r)
        return tuple(cs)

    def _undigits(self, cs):
        v = 0
        for c in reversed(cs):
            v = v * self.p + c
        return v

    def _raw_add(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._undigits(tuple((x + y) % self.p for x, y in zip(da, db)))

    def _raw_mul(self, a, b):
        prod = _poly_mul(_poly_trim(self._digits(a)), _poly_trim(self._digits(b)), self.p)
        rem = _poly_mod(prod, self.modulus, self.p)
        return self._undigits(rem + (0,) * (self.k - len(rem)))

    def _build_tables(self):
        q = self.q
        self._add_t = [[self._raw_add(a, b) for b in range(q)] for a in range(q)]
        self._mul_t = [[self._raw_mul(a, b) for b in range(q)] for a in range(q)]
        self._neg_t = [self._raw_mul(a, self._undigits(((self.p - 1),) + (0,) * (self.k - 1))) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul_t[a]
            for b in range(1, q):
                if row[b] == 1:
                    inv[a] = b
                    break
        self._inv_t = inv
        for a in range(1, q):
            if self._mul_t[a][inv[a]] != 1:  # construction sanity check
                raise RingError(f"inverse table broken at {a} in {self.spec_string()}")

    def add(self, a, b):
        if self._tabled:
            return self._add_t[a][b]
        return self._raw_add(a, b)

    def neg(self, a):
        if self._tabled:
            return self._neg_t[a]
        cs = self._digits(a)
        return self._undigits(tuple((-c) % self.p for c in cs))

    def mul(self, a, b):
        if self._tabled:
            return self._mul_t[a][b]
        return self._raw_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise RingError("0 has no inverse")
        if self._tabled:
            return self._inv_t[a]
        out, e, base = 1, self.q - 2, a
        while e:
            if e & 1:
                out = self._raw_mul(out, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return out

    def is_unit(self, a):
        return a != 0

    def label(self, a):
        if self.k == 1:
            return str(a)
        cs = self._digits(a)
        terms = []
        for d in range(self.k - 1, -1, -1):
            c = cs[d]
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                xs = "x" if d == 1 else f"x^{d}"
                terms.append(xs if c == 1 else f"{c}{xs}")
        return "+".join(terms) if terms else "0"

    def _enumerate(self):
        return list(range(self.q))


def construct_field(p: int, k: int = 1) -> GF:
    """GF(p^k) with the canonical (smallest) irreducible modulus."""
    return GF(p, k)


# ---------------------------------------------------------------------------
# linear algebra over GF, on row-major tuple matrices


def gf_rref(field, rows, width):
    """Reduced row echelon form; returns the tuple of nonzero rows.

    The result is the canonical basis of the row space: pivots are 1,
    pivot columns are cleared above and below, rows ordered by pivot.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    rank = 0
    for col in range(width):
        piv = None
        for i in range(rank, nrows):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = field.inv(work[rank][col])
        work[rank] = [field.mul(inv, v) for v in work[rank]]
        for i in range(nrows):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == nrows:
            break
    return tuple(tuple(r) for r in work[:rank])


def gf_rank(field, rows, width):
    return len(gf_rref(field, rows, width))


def gf_nullspace(field, rows, width):
    """Canonical basis (RREF rows) of {v : M v^T = 0} for the row list M."""
    rr = gf_rref(field, rows, width)
    pivots = []
    for row in rr:
        for j in range(width):
            if row[j] != 0:
                pivots.append(j)
                break
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(rr[i][f])
        basis.append(tuple(v))
    return gf_rref(field, basis, width)


def gf_span_contains(field, basis_rref, other_rows, width):
    """True if span(other_rows) is inside the space with the given RREF basis."""
    stacked = gf_rref(field, tuple(basis_rref) + tuple(other_rows), width)
    return stacked == tuple(basis_rref)


class MatRing(Ring):
    """Full n x n matrix ring over a GF field.

    Payloads are row-major tuples of tuples of field ints; lexicographic
    payload order makes the zero matrix element 0 and keeps enumeration
    deterministic.
    """

    kind = "M"

    def __init__(self, n: int, field: GF):
        if n < 1:
            raise RingError("matrix size must be at least 1")
        if not isinstance(field, GF):
            raise RingError("matrix entries must come from a GF field")
        self.n = n
        self.field = field
        self.cardinality = field.q ** (n * n)
        self.commutative = n == 1
        self.zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        self.one = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def key(self):
        return ("M", self.n, self.field.key())

    def spec_string(self):
        return f"M({self.n},{self.field.spec_string()})"

    def add(self, a, b):
        F = self.field
        return tuple(tuple(F.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def neg(self, a):
        F = self.field
        return tuple(tuple(F.neg(x) for x in row) for row in a)

    def mul(self, a, b):
        F, n = self.field, self.n
        bt = tuple(zip(*b))  # columns of b
        out = []
        for row in a:
            orow = []
            for col in bt:
                acc = 0
                for x, y in zip(row, col):
                    if x and y:
                        acc = F.add(acc, F.mul(x, y))
                orow.append(acc)
            out.append(tuple(orow))
        return tuple(out)

    def det(self, a):
        F, n = self.field, self.n
        work = [list(row) for row in a]
        det = 1
        for col in range(n):
            piv = None
            for i in range(col, n):
                if work[i][col] != 0:
                    piv = i
                    break
            if piv is None:
                return 0
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                det = F.neg(det)
            det = F.mul(det, work[col][col])
            inv = F.inv(work[col][col])
            for i in range(col + 1, n):
                if work[i][col] != 0:
                    f = F.mul(work[i][col], inv)
                    work[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(work[i], work[col])]
        return det

    def rank(self, a):
        return gf_rank(self.field, a, self.n)

    def row_space(self, a):
        return gf_rref(self.field, a, self.n)

    def column_space(self, a):
        return gf_rref(self.field, tuple(zip(*a)), self.n)

    def is_unit(self, a):
        return self.det(a) != 0

    def label(self, a):
        F = self.field
        rows = ",".join("[" + ",".join(F.label(x) for x in row) + "]" for row in a)
        return "[" + rows + "]"

    def _enumerate(self):
        n, elems = self.n, list(range(self.field.q))
        out = []
        for flat in itertools.product(elems, repeat=n * n):
            out.append(tuple(flat[i * n : (i + 1) * n] for i in range(n)))
        return out


class ProductRing(Ring):
    """Direct product of component rings, elementwise operations on tuples."""

    kind = "x"

    def __init__(self, factors):
        factors = list(factors)
        if len(factors) < 2:
            raise RingError("a product ring needs at least two factors")
        self.factors = factors
        card = 1
        for f in factors:
            card *= f.cardinality
        self.cardinality = card
        self.commutative = all(f.commutative for f in factors)
        self.zero = tuple(f.zero for f in factors)
        self.one = tuple(f.one for f in factors)

    def key(self):
        return ("x",) + tuple(f.key() for f in self.factors)

    def spec_string(self):
        return "x".join(f.spec_string() for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def is_unit(self, a):
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def label(self, a):
        return "(" + ",".join(f.label(x) for f, x in zip(self.factors, a)) + ")"

    def _enumerate(self):
        lists = [f.elements(cap=self.cardinality) for f in self.factors]
        return list(itertools.product(*lists))


def is_reduced(ring: Ring, cap: int | None = None) -> bool:
    """True when the ring has no nonzero element squaring to zero."""
    zero = ring.zero
    return not any(a != zero and ring.mul(a, a) == zero for a in ring.elements(cap))


# ---------------------------------------------------------------------------
# ring-spec parser


class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise RingSpecError(message, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1

    def parse_int(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos]), start

    def parse_name(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start : self.pos], start

    def parse_atom(self):
        name, start = self.parse_name()
        if name == "Zn":
            self.expect("(")
            n, npos = self.parse_int()
            self.expect(")")
            if n < 2:
                self.error("Zn modulus must be at least 2", npos)
            return Zn(n)
        if name == "GF":
            self.expect("(")
            q, qpos = self.parse_int()
            self.expect(")")
            pk = numth.prime_power(q)
            if pk is None:
                self.error(f"{q} is not a prime power", qpos)
            return GF(*pk)
        if name == "M":
            self.expect("(")
            n, npos = self.parse_int()
            self.expect(",")
            inner_pos = self.pos
            inner = self.parse_atom()
            self.expect(")")
            if n < 1:
                self.error("matrix size must be at least 1", npos)
            if not isinstance(inner, GF):
                self.error("matrix entries must come from a GF field", inner_pos)
            return MatRing(n, inner)
        self.error("expected Zn(...), GF(...) or M(...)", start)

    def parse(self):
        factors = [self.parse_atom()]
        while self.peek() == "x":
            self.pos += 1
            factors.append(self.parse_atom())
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        if len(factors) == 1:
            return factors[0]
        return ProductRing(factors)


def parse_ring_spec(text: str) -> Ring:
    """Parse a ring-spec string; raises RingSpecError with a position."""
    if not text or not text.strip():
        raise RingSpecError("empty ring spec", 0)
    return _SpecParser(text).parse()
