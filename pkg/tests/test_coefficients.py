import json
import math
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from faadibruno import (
    BForm,
    InvalidArgument,
    Partition,
    classical_coefficient,
    closed_form,
    column_multiplier,
    enumerate_partitions,
    from_bform,
    max_coefficient,
    multinomial,
    recursion_table,
    table,
    to_bform,
)
from faadibruno.coefficients import recursion_rows, recursion_terms, table_by_length
from oracles import bell_numbers, set_partition_blocks

P = Partition
FIGURE1 = json.loads((Path(__file__).parent / "fixtures" / "figure1.json").read_text())["entries"]


def ones(n):
    return P((1,) * n)


def test_closed_form_examples():
    assert closed_form(P((4, 1, 1))) == 15
    assert closed_form(P((4, 2, 1, 1, 1, 1))) == 3150
    for n in range(1, 31):
        assert closed_form(P((n,))) == 1
        assert closed_form(ones(n)) == 1


def test_closed_form_rejects_above_cap():
    with pytest.raises(InvalidArgument):
        closed_form(P((61,)))


def test_multinomial():
    assert multinomial(6, P((4, 1, 1))) == math.factorial(6) // math.factorial(4)
    assert multinomial(6, P((4, 1, 1))) == 30
    assert multinomial(10, P((4, 2, 1, 1, 1, 1))) == 75600
    assert multinomial(7, P((7,))) == 1
    with pytest.raises(InvalidArgument):
        multinomial(5, P((4, 1, 1)))


@pytest.mark.parametrize("n", range(1, 9))
def test_closed_form_counts_set_partitions(n):
    # C(n, k) is the number of ways to split an n-set into blocks of sizes k
    blocks = set_partition_blocks(n)
    assert {k.parts: closed_form(k) for k in enumerate_partitions(n)} == blocks


def test_recursion_worked_example():
    rows = recursion_rows(6)
    assert rows[0].as_dict() == {P((1,)): 1}
    k = P((3, 1, 1, 1))
    terms = recursion_terms(k, rows[4].as_dict())
    assert [t.predecessor for t in terms] == [P((2, 1, 1, 1))] + [P((3, 1, 1))] * 3
    assert [t.weight for t in terms] == [1] + [Fraction(1, 3)] * 3
    assert terms[0].contribution == 10
    assert sum(t.contribution for t in terms[1:]) == 10
    assert rows[5].coefficient(k) == 20
    assert recursion_table(3).coefficient(P((2, 1))) == 3
    assert recursion_table(1).as_dict() == {P((1,)): 1}


def test_recursion_matches_closed_form():
    for row in recursion_rows(15):
        for e in row:
            assert e.coefficient == closed_form(e.partition)
            assert e.coefficient == classical_coefficient(to_bform(e.partition))


def test_grouped_recursion_equals_literal():
    literal = recursion_rows(12)
    grouped = recursion_rows(12, grouped=True)
    assert literal == grouped


def test_bform_examples():
    assert to_bform(P((4, 1, 1))).exponents == (2, 0, 0, 1, 0, 0)
    assert to_bform(P((3, 2, 1))).exponents == (1, 1, 1, 0, 0, 0)
    assert to_bform(ones(5)).exponents == (5, 0, 0, 0, 0)
    assert from_bform(BForm(6, (2, 0, 0, 1, 0, 0))) == P((4, 1, 1))
    assert from_bform(BForm(6, (0, 3, 0, 0, 0, 0))) == P((2, 2, 2))
    assert from_bform(BForm(4, (4, 0, 0, 0))) == ones(4)


@pytest.mark.parametrize("n", range(1, 21))
def test_bform_round_trip(n):
    for k in enumerate_partitions(n):
        b = to_bform(k)
        assert sum(i * bi for i, bi in enumerate(b.exponents, 1)) == n
        assert b.j == k.j
        assert from_bform(b) == k


@pytest.mark.parametrize("bad", [(6, (1, 0, 0, 0, 0, 0)), (3, (1, 1)), (2, (-2, 2))])
def test_bform_rejects(bad):
    with pytest.raises(InvalidArgument):
        BForm(*bad)


def test_classical_coefficient_examples():
    assert classical_coefficient(to_bform(P((4, 1, 1)))) == 15
    assert classical_coefficient(to_bform(P((4, 2, 1, 1, 1, 1)))) == 3150
    assert classical_coefficient(BForm(7, (7, 0, 0, 0, 0, 0, 0))) == 1


def test_column_multiplier_examples():
    assert column_multiplier(P((3,)), 3) == 20 == closed_form(P((3, 1, 1, 1)))
    assert column_multiplier(P((4, 2)), 0) == 15
    assert column_multiplier(P((2,)), 1) == 3 == closed_form(P((2, 1)))
    with pytest.raises(InvalidArgument):
        column_multiplier(P((3, 1)), 2)
    with pytest.raises(InvalidArgument):
        column_multiplier(P((3,)), -1)


def test_column_multiplier_exhaustive():
    for n in range(2, 11):
        for k in enumerate_partitions(n):
            if min(k.parts) < 2:
                continue
            for ell in range(7):
                assert column_multiplier(k, ell) == closed_form(k.extend_ones(ell))


def test_max_coefficient():
    best = max_coefficient(4)
    assert (best.partition, best.coefficient) == (P((2, 1, 1)), 6)
    assert max_coefficient(1).coefficient == 1
    full = table(10)
    top = max(e.coefficient for e in full)
    first = next(e for e in full if e.coefficient == top)
    assert max_coefficient(10) == first
    assert top >= 3150


def test_table_examples():
    assert [(e.partition.parts, e.coefficient) for e in table(2)] == [((2,), 1), ((1, 1), 1)]
    assert table(6).coefficient(P((2, 2, 1, 1))) == 45
    assert table(10).coefficient(P((2, 2) + (1,) * 6)) == 630
    assert len(table(10)) == 42


def test_figure1_fixture():
    assert len(FIGURE1) >= 20
    for parts, coeff in FIGURE1:
        k = P(tuple(parts))
        assert table(k.n).coefficient(k) == coeff


@pytest.mark.parametrize("n", range(1, 16))
def test_row_totals_are_bell(n):
    tbl = table(n)
    assert tbl.total() == bell_numbers(n)[n]
    assert all(e.coefficient >= 1 and e.f_order == e.partition.j for e in tbl)


def test_table_by_length():
    assert [e.coefficient for e in table_by_length(6, 3)] == [15, 60, 15]


def test_json_and_tsv():
    tbl = table_by_length(6, 3)
    data = json.loads(tbl.to_json())
    assert data == {
        "n": 6,
        "entries": [
            {"partition": [4, 1, 1], "j": 3, "coeff": "15"},
            {"partition": [3, 2, 1], "j": 3, "coeff": "60"},
            {"partition": [2, 2, 2], "j": 3, "coeff": "15"},
        ],
    }
    assert tbl.to_json() == table_by_length(6, 3).to_json()
    assert tbl.to_tsv() == "partition\tj\tcoeff\n4,1,1\t3\t15\n3,2,1\t3\t60\n2,2,2\t3\t15\n"


def test_big_coefficients_are_exact():
    # 40!/(2!^20)/20! exceeds 2**64
    k = P((2,) * 20)
    c = closed_form(k)
    assert c > 2**64
    assert c == math.factorial(40) // (2**20 * math.factorial(20))
    assert json.loads(table(40).to_json())["entries"][0]["coeff"] == "1"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=8))
def test_closed_form_equals_classical(parts):
    k = P.of(*parts)
    assert closed_form(k) == classical_coefficient(to_bform(k))
