"""Finite field arithmetic via lookup tables.

Supported orders: 2, 3, 5, 7 (prime fields) and 4, 8, 9 (built from the
Conway polynomial for the extension).  Elements are represented by indices
0..q-1; for extension fields the index is the base-p digit encoding of the
polynomial representative, so 0 is the additive and 1 the multiplicative
identity in every field.
"""

from __future__ import annotations

from functools import lru_cache

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# Conway polynomials, constant coefficient first.
_CONWAY = {
    4: (2, (1, 1, 1)),       # x^2 + x + 1 over GF(2)
    8: (2, (1, 1, 0, 1)),    # x^3 + x + 1 over GF(2)
    9: (3, (2, 2, 1)),       # x^2 + 2x + 2 over GF(3)
}


class FieldTable:
    """Total add/mul/neg/inv tables for GF(q), q a supported prime power."""

    __slots__ = ("q", "p", "add", "mul", "neg", "inv")

    def __init__(self, q: int):
        if q not in SUPPORTED_Q:
            raise ValueError(f"unsupported field order {q} (supported: {SUPPORTED_Q})")
        self.q = q
        if q in _CONWAY:
            p, poly = _CONWAY[q]
            self.p = p
            deg = len(poly) - 1
            to_digits = lambda e: tuple((e // p**i) % p for i in range(deg))
            from_digits = lambda d: sum(c * p**i for i, c in enumerate(d))
            add = []
            mul = []
            for a in range(q):
                da = to_digits(a)
                add.append(tuple(from_digits(tuple((x + y) % p for x, y in zip(da, to_digits(b))))
                                 for b in range(q)))
                row = []
                for b in range(q):
                    db = to_digits(b)
                    prod = [0] * (2 * deg - 1)
                    for i, x in enumerate(da):
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                    # reduce modulo the Conway polynomial (monic of degree deg)
                    for i in range(len(prod) - 1, deg - 1, -1):
                        c = prod[i]
                        if c:
                            prod[i] = 0
                            for j in range(deg):
                                prod[i - deg + j] = (prod[i - deg + j] - c * poly[j]) % p
                    row.append(from_digits(prod[:deg]))
                mul.append(tuple(row))
            self.add = tuple(add)
            self.mul = tuple(mul)
        else:
            self.p = q
            self.add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
            self.mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
        self.neg = tuple(next(b for b in range(q) if self.add[a][b] == 0) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if self.mul[a][b] == 1)
        self.inv = tuple(inv)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def __repr__(self):
        return f"FieldTable(q={self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> FieldTable:
    """Cached field table for GF(q)."""
    return FieldTable(q)
