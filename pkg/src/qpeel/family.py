"""Families of subspaces: localization, intersection predicates, diversity."""

from __future__ import annotations

import json
from typing import Dict, Iterable, List, Optional, Tuple

from .subspace import (Ambient, QuotientMap, Subspace, canonicalize, contains,
                       dim_meet, quotient_map, zero_subspace)


class SubspaceFamily:
    """Deduplicated, canonically ordered collection of subspaces.

    Members may have mixed dimensions; the peeling procedure produces such
    families.  Immutable.
    """

    __slots__ = ("ambient", "members", "_member_set")

    def __init__(self, ambient: Ambient, members: Iterable[Subspace]):
        seen = set()
        out = []
        for m in members:
            if m.ambient != ambient:
                raise ValueError("family member in wrong ambient space")
            if m not in seen:
                seen.add(m)
                out.append(m)
        out.sort()
        self.ambient = ambient
        self.members = tuple(out)
        self._member_set = frozenset(out)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s: Subspace):
        return s in self._member_set

    def __eq__(self, other):
        return (isinstance(other, SubspaceFamily)
                and self.ambient == other.ambient
                and self._member_set == other._member_set)

    def __hash__(self):
        return hash((self.ambient, self._member_set))

    def __repr__(self):
        return f"SubspaceFamily({self.ambient!r}, {len(self.members)} members)"

    def union(self, other: "SubspaceFamily") -> "SubspaceFamily":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return SubspaceFamily(self.ambient, self.members + other.members)

    def difference(self, other: "SubspaceFamily") -> "SubspaceFamily":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return SubspaceFamily(self.ambient,
                              (m for m in self.members if m not in other._member_set))

    def restrict_dims(self, lo: int, hi: int) -> "SubspaceFamily":
        """Members with lo <= dim <= hi."""
        return SubspaceFamily(self.ambient,
                              (m for m in self.members if lo <= m.dim <= hi))

    def dims(self) -> Tuple[int, ...]:
        return tuple(sorted({m.dim for m in self.members}))


def family(ambient: Ambient, members: Iterable[Subspace]) -> SubspaceFamily:
    return SubspaceFamily(ambient, members)


# ---------------------------------------------------------------------------
# localization


def localize(c: SubspaceFamily, x: Subspace) -> SubspaceFamily:
    """C[X]: the members of C containing X."""
    if c.ambient != x.ambient:
        raise ValueError("ambient mismatch")
    if x.dim == 0:
        return c
    xv = x.vectors
    return SubspaceFamily(c.ambient,
                          (m for m in c.members if m.dim >= x.dim and xv <= m.vectors))


def localize_many(c: SubspaceFamily, xs: SubspaceFamily) -> SubspaceFamily:
    """C[{X}]: union of C[X] over X in the family xs, deduplicated."""
    if c.ambient != xs.ambient:
        raise ValueError("ambient mismatch")
    picked = []
    for m in c.members:
        mv = m.vectors
        for x in xs.members:
            if x.dim == 0 or (x.dim <= m.dim and x.vectors <= mv):
                picked.append(m)
                break
    return SubspaceFamily(c.ambient, picked)


def quotient_localize(c: SubspaceFamily, x: Subspace) -> SubspaceFamily:
    """C(X): the members containing X, pushed to the quotient V/X."""
    if x.dim == 0:
        return c
    qm = quotient_map(x)
    loc = localize(c, x)
    return SubspaceFamily(qm.codomain, (qm.push(m) for m in loc.members))


# ---------------------------------------------------------------------------
# intersection predicates


def _meets(a: Subspace, b: Subspace, threshold: int) -> bool:
    # dim(a ∩ b) >= t iff the intersection has at least q^t - 1 nonzero vectors
    if threshold <= 0:
        return True
    q = a.ambient.q
    need = q**threshold - 1
    if q**a.dim <= 8192 and q**b.dim <= 8192:
        return len(a.vectors & b.vectors) >= need
    return dim_meet(a, b) >= threshold


def is_t_intersecting(c: SubspaceFamily, t: int,
                      return_witness: bool = False):
    """True iff every pair of distinct members meets in dimension >= t.

    With return_witness=True returns (bool, pair-or-None); the pair is the
    first violating pair in canonical order.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    ms = c.members
    verdict, witness = True, None
    for idx, a in enumerate(ms):
        for b in ms[idx + 1:]:
            if not _meets(a, b, t):
                verdict, witness = False, (a, b)
                break
        if not verdict:
            break
    if return_witness:
        return verdict, witness
    return verdict


def is_cross_t_intersecting(a: SubspaceFamily, b: SubspaceFamily, t: int,
                            return_witness: bool = False):
    """True iff dim(F ∩ G) >= t for all F in a, G in b."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    verdict, witness = True, None
    for f in a.members:
        for g in b.members:
            if not _meets(f, g, t):
                verdict, witness = False, (f, g)
                break
        if not verdict:
            break
    if return_witness:
        return verdict, witness
    return verdict


# ---------------------------------------------------------------------------
# degrees and diversity


def degree_max(c: SubspaceFamily, d: int) -> Tuple[Subspace, int]:
    """A d-subspace contained in the most members, with that count.

    Ties break to the canonically least subspace.  Candidates outside every
    member have count 0; they only matter in the degenerate case where no
    member has dimension >= d.
    """
    if len(c) == 0:
        raise ValueError("degree_max of an empty family")
    if d < 1:
        raise ValueError("degree_max requires d >= 1")
    counts: Dict[Subspace, int] = {}
    if d == 1:
        unit_counts: Dict[int, int] = {}
        for m in c.members:
            for u in m.units:
                unit_counts[u] = unit_counts.get(u, 0) + 1
        if unit_counts:
            amb = c.ambient
            n, q = amb.n, amb.q
            best_packed, best = None, 0
            for packed, cnt in unit_counts.items():
                if cnt > best:
                    best_packed, best = packed, cnt
            # break count ties canonically
            tied = [p for p, cnt in unit_counts.items() if cnt == best]
            subs = [canonicalize([tuple((p // q**j) % q for j in range(n))], amb)
                    for p in tied]
            return min(subs), best
    else:
        for m in c.members:
            if m.dim >= d:
                for x in m.subspaces(d):
                    counts[x] = counts.get(x, 0) + 1
        if counts:
            best = max(counts.values())
            return min(x for x, cnt in counts.items() if cnt == best), best
    # no member has dimension >= d: every d-subspace has count 0
    from .subspace import enumerate_grassmannian
    first = next(enumerate_grassmannian(c.ambient, d))
    return first, 0


def diversity(c: SubspaceFamily):
    """Number of members avoiding the most popular 1-subspace."""
    if len(c) == 0:
        raise ValueError("diversity of an empty family")
    _, deg = degree_max(c, 1)
    return len(c) - deg


# ---------------------------------------------------------------------------
# JSON interchange


def family_to_dict(c: SubspaceFamily) -> dict:
    return {
        "q": c.ambient.q,
        "n": c.ambient.n,
        "subspaces": [[list(row) for row in m.rows] for m in c.members],
    }


def family_from_dict(data: dict) -> SubspaceFamily:
    amb = Ambient(int(data["n"]), int(data["q"]))
    members = []
    for rows in data["subspaces"]:
        members.append(canonicalize([tuple(int(x) for x in row) for row in rows], amb))
    return SubspaceFamily(amb, members)


def dump_family(c: SubspaceFamily) -> str:
    return json.dumps(family_to_dict(c), separators=(",", ":"), sort_keys=True) + "\n"


def load_family(text: str) -> SubspaceFamily:
    return family_from_dict(json.loads(text))
