"""Exact q-arithmetic: brackets, Gaussian coefficients, and inequality checks.

All scalars are Python ints or ``fractions.Fraction``; no verdict in this
module ever touches floating point.  The constants 2.8 and 3.2 that show up
in the GF(2) Gaussian-coefficient lower bounds are carried as 28/10 and
32/10.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

RELATIONS = ("<", "<=", "=")

CONTEXT_COLUMNS = ("q", "n", "k", "t", "s", "i")


def q_bracket(a: int, q: int) -> int:
    """[a] = (q^a - 1)/(q - 1), the number of 1-subspaces of an a-space."""
    if a < 0:
        raise ValueError("q_bracket requires a >= 0")
    return (q**a - 1) // (q - 1)


def gaussian(n: int, k: int, q: int) -> int:
    """Gaussian coefficient: the number of k-subspaces of V(n,q).

    Out-of-range arguments (k < 0 or k > n) give 0, matching the usual
    convention so that sum formulas need no special cases.
    """
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(1, k + 1):
        num *= q**(n - i + 1) - 1
        den *= q**i - 1
    assert num % den == 0
    return num // den


def count_meeting(n: int, k: int, m: int, ell: int, q: int) -> int:
    """Number of k-subspaces meeting a fixed m-subspace in a fixed ell-subspace."""
    if not (0 <= ell <= m <= n and ell <= k):
        raise ValueError(f"invalid parameters n={n} k={k} m={m} ell={ell}")
    return q**((k - ell) * (m - ell)) * gaussian(n - m, k - ell, q)


# ---------------------------------------------------------------------------
# reports


def fmt_exact(x) -> str:
    """Render an exact scalar as 'p' or 'p/q'."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: lhs <relation> rhs, with an exact verdict."""

    label: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    verdict: bool
    context: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "context": dict(self.context),
            "lhs": fmt_exact(self.lhs),
            "rhs": fmt_exact(self.rhs),
            "relation": self.relation,
            "verdict": self.verdict,
        }

    def csv_row(self) -> List[str]:
        row = [self.label]
        for key in CONTEXT_COLUMNS:
            v = self.context.get(key)
            row.append("" if v is None else str(v))
        row += [fmt_exact(self.lhs), fmt_exact(self.rhs), self.relation,
                "true" if self.verdict else "false"]
        return row


CSV_HEADER = ["label"] + list(CONTEXT_COLUMNS) + ["lhs", "rhs", "relation", "verdict"]


def report(label: str, lhs, relation: str, rhs, **context) -> BoundReport:
    lhs = Fraction(lhs)
    rhs = Fraction(rhs)
    if relation == "<":
        verdict = lhs < rhs
    elif relation == "<=":
        verdict = lhs <= rhs
    elif relation == "=":
        verdict = lhs == rhs
    else:
        raise ValueError(f"unknown relation {relation!r}")
    ctx = {k: v for k, v in context.items() if v is not None}
    return BoundReport(label, lhs, relation, rhs, verdict, ctx)


# ---------------------------------------------------------------------------
# section-2 checks


def pascal_check(n: int, k: int, q: int) -> Tuple[BoundReport, BoundReport]:
    """The two q-Pascal recurrences for the Gaussian coefficient."""
    if not n >= k >= 0:
        raise ValueError("pascal_check requires n >= k >= 0")
    g = gaussian(n, k, q)
    first = gaussian(n - 1, k - 1, q) + q**k * gaussian(n - 1, k, q)
    second = q**(n - k) * gaussian(n - 1, k - 1, q) + gaussian(n - 1, k, q)
    return (
        report("pascal/shallow", g, "=", first, q=q, n=n, k=k),
        report("pascal/deep", g, "=", second, q=q, n=n, k=k),
    )


def one_plus_eps(q: int) -> Fraction:
    """1 + (q+1)/(q^2 - q - 1), the sharp Gaussian upper-bound constant."""
    return 1 + Fraction(q + 1, q * q - q - 1)


def q_ratio(q: int) -> Fraction:
    return Fraction(q, q - 1)


def gauss_bounds_check(a: int, b: int, q: int) -> List[BoundReport]:
    """Elementary two-sided bounds on [a] and on the Gaussian coefficient.

    Part 1 is emitted only for a >= 1 (the bracket bound degenerates at
    a = 0).  Parts 3 and 4 are the GF(2) lower bounds with the exact
    rational constants 28/10 and 32/10; they are emitted only when their
    hypotheses hold.
    """
    if not (a >= b >= 0 and q >= 2):
        raise ValueError("gauss_bounds_check requires a >= b >= 0 and q >= 2")
    out = []
    ctx = dict(q=q, n=a, k=b)
    if a >= 1:
        br = q_bracket(a, q)
        out.append(report("gauss_bounds/part1/lower", q**(a - 1), "<=", br, **ctx))
        out.append(report("gauss_bounds/part1/upper", br, "<=",
                          (1 + Fraction(1, q - 1)) * q**(a - 1), **ctx))
    g = gaussian(a, b, q)
    power = q**(b * (a - b))
    out.append(report("gauss_bounds/part2/lower", power, "<=", g, **ctx))
    out.append(report("gauss_bounds/part2/upper", g, "<=",
                      one_plus_eps(q) * power, **ctx))
    if q == 2 and b >= 4 and a >= 2 * b - 1:
        out.append(report("gauss_bounds/part3", Fraction(28, 10) * power, "<=", g,
                          **ctx))
    if q == 2 and b >= 4 and a >= 4 * b - 1:
        out.append(report("gauss_bounds/part4", Fraction(32, 10) * power, "<=", g,
                          **ctx))
    return out


def remainder_constant(q: int, n: int, k: int, t: int, s: int) -> Fraction:
    """The constant C in the peeling-sum bound and the structural remainder.

    Two regimes: n = 2k+s+1 and n >= 2k+s+2.
    """
    if n < 2 * k + s + 1:
        raise ValueError("constant undefined for n < 2k+s+1")
    eps2 = one_plus_eps(q) ** 2
    if n == 2 * k + s + 1:
        return 2 * q_ratio(q) ** (k - t + 1) * eps2
    return q_ratio(q) ** (s + 3) * eps2


def layer_sum_term(n: int, k: int, t: int, i: int, q: int) -> int:
    """S_i = gaussian(n-i, k-i) * gaussian(i, t) * [i-t+1]^(i-t)."""
    return gaussian(n - i, k - i, q) * gaussian(i, t, q) * q_bracket(i - t + 1, q) ** (i - t)


def sum_bound(n: int, k: int, t: int, s: int, q: int) -> BoundReport:
    """The exact layer-sum bound: sum of S_i over i = s+t+1 .. k."""
    if not (n >= 2 * k + s + 1 and s + t + 1 <= k and q >= 2 and s >= 0 and t >= 1):
        raise ValueError(f"invalid parameters n={n} k={k} t={t} s={s} q={q}")
    total = sum(layer_sum_term(n, k, t, i, q) for i in range(s + t + 1, k + 1))
    rhs = remainder_constant(q, n, k, t, s) * q**(k * (n - k) - (s + t + 1) * (n - k - s - 1))
    return report("sum_bound", total, "<=", rhs, q=q, n=n, k=k, t=t, s=s)


def eqcalc1_check(n: int, k: int, t: int, s: int) -> BoundReport:
    """Exponent bookkeeping identity used inside the layer-sum proof."""
    lhs = k * (n - 2 * k + t) - (s + t + 1) * (n - k - s - 1)
    rhs = (k - (s + t + 1)) * (n - 2 * k - s - 1)
    return report("eqcalc1", lhs, "=", rhs, n=n, k=k, t=t, s=s)
