"""Subspace spreadness and the spread-restriction finder.

A family C is r-subspace-spread when every i-dimensional subspace X (for
i = 1..max_dim) satisfies |C(X)| < r^{-i} |C|; all comparisons here are done
in integers as |C(X)| * r^i < |C|.  Since pushing to the quotient is
injective, |C(X)| = |C[X]| and no quotient needs to be materialized.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from .family import SubspaceFamily, localize, quotient_localize
from .subspace import Subspace, contains, zero_subspace


def _localized_count(c: SubspaceFamily, x: Subspace) -> int:
    xv = x.vectors
    return sum(1 for m in c.members if m.dim >= x.dim and xv <= m.vectors)


def _candidate_subspaces(c: SubspaceFamily, d: int) -> List[Subspace]:
    """Distinct d-subspaces inside members of C, canonical order."""
    pool = set()
    for m in c.members:
        if m.dim >= d:
            pool.update(m.subspaces(d))
    return sorted(pool)


def is_r_spread(c: SubspaceFamily, r: int, max_dim: Optional[int] = None,
                return_witness: bool = False):
    """Check r-subspace-spreadness; on failure the witness is the first
    violating subspace in canonical (dimension, then canonical-key) order.

    Subspaces contained in no member localize to the empty family and pass
    trivially, so only subspaces of members are examined.
    """
    if len(c) == 0:
        raise ValueError("spreadness of an empty family")
    if r < 1:
        raise ValueError("spreadness parameter r must be a positive integer")
    if max_dim is None:
        max_dim = max(m.dim for m in c.members)
    size = len(c)
    verdict, witness = True, None
    for d in range(1, max_dim + 1):
        for x in _candidate_subspaces(c, d):
            if _localized_count(c, x) * r**d >= size:
                verdict, witness = False, x
                break
        if not verdict:
            break
    if return_witness:
        return verdict, witness
    return verdict


def _superspaces_in_members(c: SubspaceFamily, x: Subspace) -> List[Subspace]:
    """Subspaces Y with X ⊊ Y ⊆ M for some member M, canonical order."""
    xv = x.vectors if x.dim else None
    out = set()
    for m in c.members:
        if m.dim <= x.dim:
            continue
        if xv is not None and not xv <= m.vectors:
            continue
        for d in range(x.dim + 1, m.dim + 1):
            for y in m.subspaces(d):
                if y not in out and (xv is None or xv <= y.vectors):
                    out.add(y)
    return sorted(out)


def find_spread_restriction(c: SubspaceFamily, r: int, k: int):
    """Find an inclusion-maximal X with |C(X)| >= r^{-dim X} |C|.

    Requires |C| > r^k where k bounds the member dimensions.  Returns
    (X, certificate); the quotient family C(X) has more than one member and
    is r-subspace-spread, both recorded in the certificate.

    Maximality is reached by greedy ascent: while some strict superspace of
    X inside a member still meets the criterion, move to the canonically
    least such superspace.
    """
    if len(c) == 0:
        raise ValueError("empty family")
    if r < 1:
        raise ValueError("r must be a positive integer")
    maxdim = max(m.dim for m in c.members)
    if maxdim > k:
        raise ValueError(f"family has members of dimension {maxdim} > k={k}")
    size = len(c)
    if size <= r**k:
        raise ValueError(f"|C| = {size} does not exceed r^k = {r**k}")
    x = zero_subspace(c.ambient)
    while True:
        step = None
        for y in _superspaces_in_members(c, x):
            if _localized_count(c, y) * r**y.dim >= size:
                step = y
                break
        if step is None:
            break
        x = step
    quotient = quotient_localize(c, x)
    spread_ok, spread_witness = is_r_spread(quotient, r, return_witness=True) \
        if len(quotient) else (False, None)
    certificate = {
        "r": r,
        "k": k,
        "family_size": size,
        "x_dim": x.dim,
        "localized_size": _localized_count(c, x),
        "criterion": _localized_count(c, x) * r**x.dim >= size,
        "nontrivial": len(quotient) > 1,
        "quotient_spread": spread_ok,
    }
    return x, certificate


def no_qualifying_superspace(c: SubspaceFamily, x: Subspace, r: int) -> bool:
    """Exhaustive maximality re-check used by the test suite."""
    size = len(c)
    for y in _superspaces_in_members(c, x):
        if _localized_count(c, y) * r**y.dim >= size:
            return False
    return True
