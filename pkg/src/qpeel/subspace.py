"""Canonical subspace arithmetic over GF(q).

A subspace of V(n,q) is stored as its reduced row-echelon basis, which is a
unique representative: equality, hashing, ordering and enumeration all derive
from it.  GF(2) row reduction runs on int bitmasks (bit j = column j); other
fields use tuple rows and the lookup tables from :mod:`qpeel.gf`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, List, Sequence, Tuple

from .gf import SUPPORTED_Q, field

MAX_N = 16
DEFAULT_ENUM_BUDGET = 20_000_000


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured output cap."""


def enumeration_budget() -> int:
    raw = os.environ.get("QPEEL_BUDGET")
    if raw is None:
        return DEFAULT_ENUM_BUDGET
    return int(raw)


@dataclass(frozen=True)
class Ambient:
    """The space V(n,q) that subspaces live in."""

    n: int
    q: int

    def __post_init__(self):
        if self.q not in SUPPORTED_Q:
            raise ValueError(f"unsupported field order {self.q}")
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"ambient dimension {self.n} out of range 1..{MAX_N}")

    @property
    def field(self):
        return field(self.q)

    def __repr__(self):
        return f"V({self.n},{self.q})"


# ---------------------------------------------------------------------------
# row reduction


def _rref_q2(masks: List[int]) -> Tuple[int, ...]:
    """RREF of GF(2) rows given as bitmasks; returns pivot-sorted nonzero rows."""
    basis: List[int] = []  # kept reduced, sorted by pivot
    for v in masks:
        for b in basis:
            low = b & -b
            if v & low:
                v ^= b
        if v:
            low = v & -v
            basis = [(b ^ v if b & low else b) for b in basis]
            basis.append(v)
            basis.sort(key=lambda m: m & -m)
    return tuple(basis)


def _rref_gen(rows: Sequence[Sequence[int]], n: int, fld) -> List[List[int]]:
    add, mul, neg, inv = fld.add, fld.mul, fld.neg, fld.inv
    work = [list(r) for r in rows]
    pivot_row = 0
    for col in range(n):
        pr = None
        for r in range(pivot_row, len(work)):
            if work[r][col]:
                pr = r
                break
        if pr is None:
            continue
        work[pivot_row], work[pr] = work[pr], work[pivot_row]
        row = work[pivot_row]
        s = inv[row[col]]
        if s != 1:
            work[pivot_row] = row = [mul[s][x] for x in row]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                c = neg[work[r][col]]
                other = work[r]
                work[r] = [add[x][mul[c][y]] for x, y in zip(other, row)]
        pivot_row += 1
        if pivot_row == len(work):
            break
    return [r for r in work if any(r)]


def _mask_to_row(mask: int, n: int) -> Tuple[int, ...]:
    return tuple((mask >> j) & 1 for j in range(n))


def _row_to_mask(row: Sequence[int]) -> int:
    m = 0
    for j, v in enumerate(row):
        if v:
            m |= 1 << j
    return m


# ---------------------------------------------------------------------------
# Subspace


class Subspace:
    """A subspace in RREF canonical form.  Immutable and hashable."""

    __slots__ = ("ambient", "rows", "pivots", "_vectors", "_units", "_subs", "_hash")

    def __init__(self, ambient: Ambient, rows: Tuple[Tuple[int, ...], ...],
                 pivots: Tuple[int, ...], _trusted: bool = False):
        if not _trusted:
            raise TypeError("use canonicalize() to build Subspace values")
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots
        self._vectors = None
        self._units = None
        self._subs = None
        self._hash = hash((ambient.n, ambient.q, rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def sort_key(self):
        """Canonical total order: (dim, pivot columns, flattened entries)."""
        return (len(self.rows), self.pivots, self.rows)

    def __eq__(self, other):
        return (self is other) or (isinstance(other, Subspace)
                                   and self.ambient == other.ambient
                                   and self.rows == other.rows)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Subspace({self.ambient!r}, dim={self.dim}, rows={self.rows})"

    # -- cached point data ---------------------------------------------------

    @property
    def vectors(self) -> frozenset:
        """All nonzero vectors of the subspace, packed as base-q integers.

        For q=2 the packed value is the row bitmask itself.  Cardinality is
        q^dim - 1, so set intersections give intersection dimensions directly.
        """
        if self._vectors is None:
            n, q = self.ambient.n, self.ambient.q
            if q == 2:
                vecs = {0}
                for r in self.rows:
                    m = _row_to_mask(r)
                    vecs |= {v ^ m for v in vecs}
            else:
                fld = self.ambient.field
                add = fld.add
                mul = fld.mul
                weights = tuple(q**j for j in range(n))
                vecs = {(0,) * n}
                for r in self.rows:
                    scaled = [tuple(mul[lam][x] for x in r) for lam in range(1, q)]
                    new = set(vecs)
                    for s in scaled:
                        new |= {tuple(add[a][b] for a, b in zip(v, s)) for v in vecs}
                    vecs = new
                vecs = {sum(w * x for w, x in zip(weights, v)) for v in vecs}
            vecs.discard(0)
            self._vectors = frozenset(vecs)
        return self._vectors

    @property
    def units(self) -> frozenset:
        """Packed canonical representatives of the 1-subspaces inside self."""
        if self._units is None:
            q = self.ambient.q
            if q == 2:
                self._units = self.vectors
            else:
                n = self.ambient.n
                fld = self.ambient.field
                mul = fld.mul
                weights = tuple(q**j for j in range(n))
                out = set()
                for packed in self.vectors:
                    v = [(packed // q**j) % q for j in range(n)]
                    lead = next(x for x in v if x)
                    if lead != 1:
                        s = fld.inv[lead]
                        v = [mul[s][x] for x in v]
                    out.add(sum(w * x for w, x in zip(weights, v)))
                self._units = frozenset(out)
        return self._units

    def subspaces(self, j: int) -> Tuple["Subspace", ...]:
        """All j-dimensional subspaces of self, in ambient coordinates."""
        if not 0 <= j <= self.dim:
            raise ValueError(f"subspace dimension {j} out of range 0..{self.dim}")
        if self._subs is None:
            self._subs = {}
        got = self._subs.get(j)
        if got is None:
            got = tuple(sorted(enumerate_subspaces_of(self, j)))
            self._subs[j] = got
        return got


def canonicalize(rows: Iterable[Sequence[int]], ambient: Ambient) -> Subspace:
    """Canonical subspace spanning the given rows; zero rows are dropped."""
    n, q = ambient.n, ambient.q
    checked = []
    for r in rows:
        r = tuple(r)
        if len(r) != n:
            raise ValueError(f"row length {len(r)} != ambient dimension {n}")
        for x in r:
            if not 0 <= x < q:
                raise ValueError(f"entry {x} out of field range 0..{q - 1}")
        checked.append(r)
    if q == 2:
        red = _rref_q2([_row_to_mask(r) for r in checked])
        out = tuple(_mask_to_row(m, n) for m in red)
    else:
        out = tuple(tuple(r) for r in _rref_gen(checked, n, ambient.field))
    pivots = tuple(next(j for j, x in enumerate(r) if x) for r in out)
    return Subspace(ambient, out, pivots, _trusted=True)


def zero_subspace(ambient: Ambient) -> Subspace:
    return Subspace(ambient, (), (), _trusted=True)


def full_subspace(ambient: Ambient) -> Subspace:
    n = ambient.n
    rows = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    return Subspace(ambient, rows, tuple(range(n)), _trusted=True)


def span_of_units(ambient: Ambient, cols: Sequence[int]) -> Subspace:
    """Span of the standard unit vectors e_j for j in cols."""
    return canonicalize([tuple(1 if j == c else 0 for j in range(ambient.n))
                         for c in cols], ambient)


# ---------------------------------------------------------------------------
# lattice operations


def _rank(rows_a, rows_b, ambient: Ambient) -> int:
    if ambient.q == 2:
        masks = [_row_to_mask(r) for r in rows_a] + [_row_to_mask(r) for r in rows_b]
        return len(_rref_q2(masks))
    return len(_rref_gen(list(rows_a) + list(rows_b), ambient.n, ambient.field))


def _check_same_ambient(a: Subspace, b: Subspace):
    if a.ambient != b.ambient:
        raise ValueError(f"ambient mismatch: {a.ambient!r} vs {b.ambient!r}")


_VEC_LIMIT = 1 << 13  # above this many vectors per side, fall back to rank


def dim_meet(a: Subspace, b: Subspace) -> int:
    """dim(A ∩ B), via dim A + dim B - dim(A+B)."""
    _check_same_ambient(a, b)
    q = a.ambient.q
    if q**a.dim <= _VEC_LIMIT and q**b.dim <= _VEC_LIMIT:
        common = len(a.vectors & b.vectors) + 1
        d = 0
        while q**d < common:
            d += 1
        return d
    return a.dim + b.dim - _rank(a.rows, b.rows, a.ambient)


def join(a: Subspace, b: Subspace) -> Subspace:
    """The sum A + B."""
    _check_same_ambient(a, b)
    return canonicalize(list(a.rows) + list(b.rows), a.ambient)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """The intersection A ∩ B as a subspace."""
    _check_same_ambient(a, b)
    amb = a.ambient
    q, n = amb.q, amb.n
    if q**a.dim <= _VEC_LIMIT and q**b.dim <= _VEC_LIMIT:
        common = a.vectors & b.vectors
        if q == 2:
            rows = [_mask_to_row(v, n) for v in common]
        else:
            rows = [tuple((v // q**j) % q for j in range(n)) for v in common]
        return canonicalize(rows, amb)
    # rank fallback: solve for coefficient kernel of stacked basis
    raise NotImplementedError("intersection basis above vector budget")


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff B is a subspace of A."""
    _check_same_ambient(a, b)
    if b.dim > a.dim:
        return False
    q = a.ambient.q
    if q**a.dim <= _VEC_LIMIT:
        return b.vectors <= a.vectors
    return _rank(a.rows, b.rows, a.ambient) == a.dim


# ---------------------------------------------------------------------------
# enumeration


def _free_cells(pivots: Tuple[int, ...], n: int) -> List[Tuple[int, int]]:
    pset = set(pivots)
    return [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n)
            if c not in pset]


def grassmannian_size(n: int, k: int, q: int) -> int:
    # local copy of the Gaussian coefficient to avoid a module cycle
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(1, k + 1):
        num *= q**(n - i + 1) - 1
        den *= q**i - 1
    return num // den


def enumerate_grassmannian(ambient: Ambient, k: int,
                           cap: int | None = None) -> Iterator[Subspace]:
    """Yield every k-subspace of the ambient space exactly once.

    Order is canonical: lexicographic on pivot-column sets, then
    lexicographic on the free entries read in row-major order.
    """
    n, q = ambient.n, ambient.q
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range 0..{n}")
    total = grassmannian_size(n, k, q)
    limit = enumeration_budget() if cap is None else cap
    if total > limit:
        raise BudgetExceeded(
            f"Grassmannian of size {total} exceeds enumeration budget {limit}")
    if k == 0:
        yield zero_subspace(ambient)
        return
    for pivots in combinations(range(n), k):
        base = [[0] * n for _ in range(k)]
        for r, p in enumerate(pivots):
            base[r][p] = 1
        cells = _free_cells(pivots, n)
        if not cells:
            yield Subspace(ambient, tuple(tuple(r) for r in base), pivots,
                           _trusted=True)
            continue
        for assignment in product(range(q), repeat=len(cells)):
            for (r, c), v in zip(cells, assignment):
                base[r][c] = v
            yield Subspace(ambient, tuple(tuple(r) for r in base), pivots,
                           _trusted=True)


def enumerate_subspaces_of(s: Subspace, j: int) -> List[Subspace]:
    """All j-subspaces of S, expressed in ambient coordinates, canonical order."""
    if not 0 <= j <= s.dim:
        raise ValueError(f"j={j} out of range 0..{s.dim}")
    amb = s.ambient
    if j == 0:
        return [zero_subspace(amb)]
    if j == s.dim:
        return [s]
    q, d = amb.q, s.dim
    local = Ambient(d, q)
    out = []
    if q == 2:
        row_masks = [_row_to_mask(r) for r in s.rows]
        n = amb.n
        for t in enumerate_grassmannian(local, j):
            rows = []
            for lr in t.rows:
                m = 0
                for i, c in enumerate(lr):
                    if c:
                        m ^= row_masks[i]
                rows.append(_mask_to_row(m, n))
            out.append(canonicalize(rows, amb))
    else:
        fld = amb.field
        add, mul = fld.add, fld.mul
        for t in enumerate_grassmannian(local, j):
            rows = []
            for lr in t.rows:
                v = [0] * amb.n
                for i, c in enumerate(lr):
                    if c:
                        row = s.rows[i]
                        v = [add[x][mul[c][y]] for x, y in zip(v, row)]
                rows.append(tuple(v))
            out.append(canonicalize(rows, amb))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# quotients


def _invert(matrix: List[List[int]], n: int, fld) -> List[List[int]]:
    add, mul, neg, inv = fld.add, fld.mul, fld.neg, fld.inv
    work = [list(row) + [1 if i == j else 0 for j in range(n)]
            for i, row in enumerate(matrix)]
    for col in range(n):
        pr = next(r for r in range(col, n) if work[r][col])
        work[col], work[pr] = work[pr], work[col]
        row = work[col]
        s = inv[row[col]]
        if s != 1:
            work[col] = row = [mul[s][x] for x in row]
        for r in range(n):
            if r != col and work[r][col]:
                c = neg[work[r][col]]
                work[r] = [add[x][mul[c][y]] for x, y in zip(work[r], row)]
    return [row[n:] for row in work]


class QuotientMap:
    """The quotient map V -> V/X with a deterministic lift.

    The lift completes X's basis with standard unit vectors at X's non-pivot
    columns, so pushing a subspace S ⊇ X down and pulling back reproduces S.
    """

    __slots__ = ("modulus", "codomain", "_basis", "_binv", "_basis_masks",
                 "_binv_masks")

    def __init__(self, x: Subspace):
        amb = x.ambient
        n = amb.n
        d = x.dim
        if d >= n:
            raise ValueError("quotient by the full space has no ambient codomain")
        rest = [j for j in range(n) if j not in x.pivots]
        basis = [list(r) for r in x.rows]
        for j in rest:
            basis.append([1 if c == j else 0 for c in range(n)])
        self.modulus = x
        self.codomain = Ambient(n - d, amb.q)
        self._basis = basis
        self._binv = _invert(basis, n, amb.field)
        if amb.q == 2:
            self._basis_masks = [_row_to_mask(r) for r in basis]
            self._binv_masks = [_row_to_mask(r) for r in self._binv]
        else:
            self._basis_masks = self._binv_masks = None

    def _coords(self, vec: Sequence[int]) -> List[int]:
        # row vector times the inverse basis matrix
        fld = self.modulus.ambient.field
        add, mul = fld.add, fld.mul
        n = self.modulus.ambient.n
        out = [0] * n
        for j, v in enumerate(vec):
            if v:
                row = self._binv[j]
                out = [add[x][mul[v][y]] for x, y in zip(out, row)]
        return out

    def push(self, s: Subspace) -> Subspace:
        """Image S/X of a subspace S ⊇ X."""
        if not contains(s, self.modulus):
            raise ValueError("push requires S to contain the modulus X")
        d = self.modulus.dim
        if self._binv_masks is not None:
            nd = self.codomain.n
            binv = self._binv_masks
            rows = []
            for r in s.rows:
                m = 0
                for j, v in enumerate(r):
                    if v:
                        m ^= binv[j]
                rows.append(_mask_to_row(m >> d, nd))
        else:
            rows = [tuple(self._coords(r)[d:]) for r in s.rows]
        return canonicalize(rows, self.codomain)

    def pull(self, t: Subspace) -> Subspace:
        """The unique S ⊇ X with push(S) = T."""
        if t.ambient != self.codomain:
            raise ValueError("pull argument must live in the codomain ambient")
        amb = self.modulus.ambient
        d = self.modulus.dim
        rows = list(self.modulus.rows)
        if self._basis_masks is not None:
            n = amb.n
            bm = self._basis_masks
            for tr in t.rows:
                m = 0
                for i, c in enumerate(tr):
                    if c:
                        m ^= bm[d + i]
                rows.append(_mask_to_row(m, n))
        else:
            fld = amb.field
            add, mul = fld.add, fld.mul
            for tr in t.rows:
                v = [0] * amb.n
                for i, c in enumerate(tr):
                    if c:
                        row = self._basis[d + i]
                        v = [add[x][mul[c][y]] for x, y in zip(v, row)]
                rows.append(tuple(v))
        return canonicalize(rows, amb)


def quotient_map(x: Subspace) -> QuotientMap:
    return QuotientMap(x)
