from fractions import Fraction

from hypothesis import given, strategies as st

from ortholab.linalg import dense, dot, nullspace, rank, rref

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def naive_rref(matrix):
    """Textbook dense Gauss-Jordan over Fractions."""
    m = [list(r) for r in matrix]
    rows, cols = len(m), len(m[0]) if m else 0
    lead = 0
    out = []
    for c in range(cols):
        pivot = next((r for r in range(lead, rows) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[lead], m[pivot] = m[pivot], m[lead]
        p = m[lead][c]
        m[lead] = [v / p for v in m[lead]]
        for r in range(rows):
            if r != lead and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[lead])]
        lead += 1
    for r in range(lead):
        out.append(tuple(m[r]))
    return out


matrices = st.integers(1, 6).flatmap(
    lambda ncols: st.lists(st.lists(small, min_size=ncols, max_size=ncols), min_size=0, max_size=6).map(
        lambda rows: (rows, ncols)
    )
)


def sparse(rows):
    return [{c: v for c, v in enumerate(r) if v != 0} for r in rows]


@given(matrices)
def test_rref_matches_naive(data):
    rows, ncols = data
    ours = [dense(r, ncols) for r in rref(sparse(rows))]
    assert ours == naive_rref(rows) if rows else ours == []
    assert rank(sparse(rows)) == len(ours)


@given(matrices)
def test_nullspace_is_complementary(data):
    rows, ncols = data
    ns = nullspace(sparse(rows), ncols)
    for v in ns:
        for r in sparse(rows):
            assert dot(r, v) == 0
    assert rank(sparse(rows)) + len(ns) == ncols
    assert rank(ns) == len(ns)


def test_small_examples():
    rows = [{0: Fraction(2), 1: Fraction(4)}, {0: Fraction(1), 1: Fraction(2)}]
    assert rank(rows) == 1
    assert rref(rows) == [{0: 1, 1: 2}]
    assert nullspace(rows, 2) == [{0: -2, 1: 1}]
    assert nullspace([], 2) == [{0: 1}, {1: 1}]
