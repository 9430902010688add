from math import comb, factorial

import pytest

from stsrank import census
from stsrank.census import CensusParams, m_distinct, m_rank, m_total
from stsrank.errors import PreconditionError

# frozen from an independent evaluation of the closed forms
M5 = {
    0: 30725775360000,
    1: 3608377017288744960000,
    2: 17673326808001420923418705920000,
    3: 101507900952398629052218780823383525294080000,
}
M5_TOTAL = 101507900952416302379026782244306944000000000


def schoolbook_mul(a: str, b: str) -> str:
    """Decimal string product, digit by digit."""
    res = [0] * (len(a) + len(b))
    for i, da in enumerate(reversed(a)):
        carry = 0
        for j, db in enumerate(reversed(b)):
            cur = res[i + j] + int(da) * int(db) + carry
            res[i + j], carry = cur % 10, cur // 10
        k = i + len(b)
        while carry:
            cur = res[k] + carry
            res[k], carry = cur % 10, cur // 10
            k += 1
    return "".join(map(str, reversed(res))).lstrip("0") or "0"


def schoolbook_pow(a: str, n: int) -> str:
    out = "1"
    for _ in range(n):
        out = schoolbook_mul(out, a)
    return out


def test_params():
    p = CensusParams(5)
    assert (p.u, p.v, p.k, p.e) == (3, 31, 1, 1)
    assert CensusParams(6).k == 7
    with pytest.raises(PreconditionError):
        CensusParams(4)


def test_m5_values():
    p = CensusParams(5)
    assert {j: m_rank(p, j) for j in range(4)} == M5
    assert m_total(p) == M5_TOTAL
    with pytest.raises(PreconditionError):
        m_rank(p, 4)


@pytest.mark.parametrize("m", [5, 6])
def test_total_by_schoolbook(m):
    p = CensusParams(m)
    digits = schoolbook_mul(
        schoolbook_mul("30", schoolbook_pow(str(census.GAMMA_L), p.k)), schoolbook_pow("31449600", p.u)
    )
    assert digits == str(m_total(p))


@pytest.mark.parametrize("m", [5, 6, 7, 8])
def test_identity_suite_and_positivity(m):
    p = CensusParams(m)
    rep = census.identity_suite(p)
    assert rep.passed, rep.failed()
    values = [m_rank(p, j) for j in range(4)]
    assert all(v > 0 for v in values) and m_total(p) > 0
    # observation: the rank-3 count dominates
    assert values[3] > values[2] > values[1] > values[0]


@pytest.mark.parametrize("m", [5, 6, 7, 8])
def test_rank3_is_total_minus_rank2(m):
    p = CensusParams(m)
    assert m_rank(p, 3) == m_total(p) - m_rank(p, 2)


def test_constants():
    assert factorial(7) * census.GAMMA_V == 31449600
    u = 3
    assert sum(comb(u, j) * 1890 ** j * 210 ** (u - j) for j in range(u + 1)) == 2100 ** u


def test_m_distinct_reports_integrality():
    p = CensusParams(5)
    d = m_distinct(p, "factorial-half")
    assert d.numerator == factorial(31) * M5[3]
    assert d.denominator == factorial(3) * 2 * 40320 ** 3 * 168
    assert d.integral
    assert d.value * d.denominator == d.numerator
    for name in census.DENOMINATOR_RULES:
        assert m_distinct(p, name).denominator > 0
    with pytest.raises(PreconditionError):
        m_distinct(p, "guess")


def test_rejected_interpretation_has_no_value():
    bogus = census.DistinctCount("x", 7, 2, False)
    with pytest.raises(PreconditionError):
        bogus.value


def test_linear_group_denominator():
    assert census._den_linear_group(7) == 168
    assert census._den_linear_group(3) == 6
