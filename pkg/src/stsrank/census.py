"""Exact counts of Steiner triple systems of order ``2^m - 1`` orthogonal to
the equidistant code ``A_m``, split by 2-rank.

``m_rank(p, j)`` is the number of systems of rank ``v - m + j``. All values
are Python ints; nothing is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from .errors import PreconditionError

# Number of Latin squares of order 8; taken as a constant, not recomputed.
GAMMA_L = 108776032459082956800
# Number of one-factorizations of K8 (checked by enumeration in onefact).
GAMMA_V = 6240
STS7_COUNT = 30
STAB_S3 = 168
FACT8 = factorial(8)
ORDERED_FACTORIZATIONS = factorial(7) * GAMMA_V


@dataclass(frozen=True)
class CensusParams:
    m: int

    def __post_init__(self):
        if self.m < 5:
            raise PreconditionError("m >= 5", f"m={self.m}")
        if (self.u * (self.u - 1)) % 6 or 8 * self.u + 7 != self.v:
            raise AssertionError("inconsistent block layout")

    @property
    def u(self) -> int:
        return (1 << (self.m - 3)) - 1

    @property
    def v(self) -> int:
        return (1 << self.m) - 1

    @property
    def k(self) -> int:
        return self.u * (self.u - 1) // 6

    @property
    def e(self) -> int:
        """Dimension ``u - m + 3`` of the complement of ``A_m`` in the block-constant space."""
        return self.u - self.m + 3


def m_total(p: CensusParams) -> int:
    """Systems of rank at most ``v - m + 3`` orthogonal to ``A_m``."""
    return STS7_COUNT * GAMMA_L ** p.k * ORDERED_FACTORIZATIONS ** p.u


def _m0(p: CensusParams) -> int:
    return 30 ** (p.u + 1) * 168 ** p.u * 2 ** (3 * p.e)


def _m1(p: CensusParams) -> int:
    u, k, e = p.u, p.k, p.e
    return 210 * 6 ** u * 840 ** u * (8 ** u * 16 ** (4 * k) - 7 ** u * 2 ** e) * 2 ** (2 * e)


def _m2(p: CensusParams) -> int:
    u, k, e = p.u, p.k, p.e
    return 210 * (
        (factorial(4) * factorial(3)) ** u * 5040 ** u * 2 ** e * 576 ** (4 * k)
        - 48 ** u * 2100 ** u * 2 ** (2 * e) * 16 ** (4 * k)
    )


def _m3_terms(p: CensusParams) -> tuple[int, int, int]:
    u, k, e = p.u, p.k, p.e
    return (
        30 * (factorial(7) * 6240) ** u * GAMMA_L ** k,
        210 * (factorial(4) * factorial(3)) ** u * 5040 ** u * 576 ** (4 * k) * 2 ** e,
        210 * 48 ** u * 2100 ** u * 16 ** (4 * k) * 2 ** (2 * e),
    )


def _m3(p: CensusParams) -> int:
    total, minus, plus = _m3_terms(p)
    return total - minus + plus


_BY_INDEX = {0: _m0, 1: _m1, 2: _m2, 3: _m3}


def m_rank(p: CensusParams, j: int) -> int:
    """Number of systems of rank ``v - m + j`` orthogonal to ``A_m``, for ``j`` in 0..3."""
    if j not in _BY_INDEX:
        raise PreconditionError("rank index", f"{j} not in 0..3")
    return _BY_INDEX[j](p)


def m1_expanded(p: CensusParams) -> int:
    """The two-term form of ``M_{v,1}`` before factoring."""
    u, k, e = p.u, p.k, p.e
    return 210 * 48 ** u * 2 ** (2 * e) * 840 ** u * 16 ** (4 * k) - 210 * 210 ** u * 168 ** u * 2 ** (3 * e)


def m2_chain(p: CensusParams) -> tuple[int, int]:
    """``M_{v,2}`` as the three-line subtraction and as the final two-term form."""
    u, k, e = p.u, p.k, p.e
    upper = 210 * 144 ** u * 5040 ** u * 2 ** e * 576 ** (4 * k)
    rank1_weighted = 210 * (48 ** u * 2100 ** u * 2 ** (2 * e) * 16 ** (4 * k) - 210 ** u * 168 ** u * 2 ** (3 * e))
    rank0_weighted = 210 * 210 ** u * 168 ** u * 2 ** (3 * e)
    chained = upper - rank1_weighted - rank0_weighted
    final = 210 * (144 ** u * 5040 ** u * 2 ** e * 576 ** (4 * k) - 48 ** u * 2100 ** u * 2 ** (2 * e) * 16 ** (4 * k))
    return chained, final


@dataclass
class IdentityCheck:
    name: str
    anchor: str
    passed: bool
    detail: str = ""


@dataclass
class IdentityReport:
    m: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.anchor for c in self.checks if not c.passed]


def identity_suite(p: CensusParams) -> IdentityReport:
    """Check every displayed arithmetic identity behind the closed forms."""
    u = p.u
    rep = IdentityReport(p.m)

    def add(name, anchor, lhs, rhs):
        rep.checks.append(IdentityCheck(name, anchor, lhs == rhs, f"{lhs} vs {rhs}"))

    add("ordered factorizations", "7!*Gamma_V = 31449600", factorial(7) * GAMMA_V, 31449600)
    add("5040 decomposition", "3*630 + 420 + 2520 + 7*30 = 5040", 3 * 630 + 420 + 2520 + 7 * 30, 5040)
    add("2100 decomposition", "3*630 + 7*30 = 2100", 3 * 630 + 7 * 30, 2100)
    add("840 decomposition", "|Orb(V1)| + 7*|Orb(V4)| = 840", 630 + 7 * 30, 840)
    add("210*168 = 840*42", "210*168 = 840*42", 210 * 168, 840 * 42)
    add(
        "binomial collapse",
        "sum_j C(u,j) (3*630)^j (7*30)^(u-j) = 2100^u",
        sum(comb(u, j) * (3 * 630) ** j * (7 * 30) ** (u - j) for j in range(u + 1)),
        2100 ** u,
    )
    add("M_{v,1} expanded = factored", "M_{v,1} two-term and factored forms", m1_expanded(p), _m1(p))
    chained, final = m2_chain(p)
    add("M_{v,2} cancellation chain", "M_{v,2} three-line subtraction", chained, final)
    add("M_{v,2} final = closed form", "M_{v,2} closed form", final, _m2(p))
    total, minus, plus = _m3_terms(p)
    add("M_{v,3} reconstructs M_v", "first line of the M_{v,3} display", _m3(p) + minus - plus, m_total(p))
    add("M_v both displayed forms", "30*(Gamma_L)^k*(7!*Gamma_V)^u", m_total(p), 30 * GAMMA_L ** p.k * 31449600 ** u)
    return rep


# Readings of the denominator "u(u-1)(u-2)...(u+1)/2" offered side by side.
def _den_factorial_half(u: int) -> int:
    return factorial(u) * (u + 1) // 2


def _den_falling(u: int) -> int:
    out = 1
    for t in range((u + 1) // 2, u + 1):
        out *= t
    return out


def _den_linear_group(u: int) -> int:
    out = 1
    i = 0
    while (1 << i) < u + 1:
        out *= u + 1 - (1 << i)
        i += 1
    return out


DENOMINATOR_RULES = {
    "factorial-half": _den_factorial_half,
    "falling": _den_falling,
    "linear-group": _den_linear_group,
}


@dataclass(frozen=True)
class DistinctCount:
    interpretation: str
    numerator: int
    denominator: int
    integral: bool

    @property
    def value(self) -> int:
        if not self.integral:
            raise PreconditionError("interpretation rejected", f"{self.interpretation} does not divide")
        return self.numerator // self.denominator


def m_distinct(p: CensusParams, interpretation: str) -> DistinctCount:
    """``v! * M_{v,3}`` over ``D(u) * (8!)^u * 168`` for a named reading of ``D``.

    ``factorial-half``: ``u! * (u+1)/2``; ``falling``: ``u (u-1) ... (u+1)/2``;
    ``linear-group``: ``prod_i (u + 1 - 2^i)``, the order of GL(m-3, 2).
    Integrality is reported, never assumed.
    """
    try:
        rule = DENOMINATOR_RULES[interpretation]
    except KeyError:
        raise PreconditionError("interpretation", f"unknown {interpretation!r}; choose from {sorted(DENOMINATOR_RULES)}") from None
    num = factorial(p.v) * _m3(p)
    den = rule(p.u) * FACT8 ** p.u * STAB_S3
    return DistinctCount(interpretation, num, den, num % den == 0)


def census_row(m: int) -> dict:
    p = CensusParams(m)
    row = {"m": m, "v": p.v, "u": p.u, "k": p.k}
    for j in range(4):
        row[f"M_{j}"] = m_rank(p, j)
    row["M_total"] = m_total(p)
    return row
