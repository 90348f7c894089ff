"""The nine acceptance criteria at their stated sizes and time budgets.

Each test prints one PASS/FAIL line; the lines are repeated in the terminal
summary under "acceptance criteria".
"""

import pytest

from ortholab import acceptance

from conftest import ACCEPTANCE_LINES

CRITERIA = [
    (1, acceptance.criterion_p_disjoint),
    (2, acceptance.criterion_polarization),
    (3, acceptance.criterion_thm26),
    (4, acceptance.criterion_lemma25),
    (5, acceptance.criterion_thm28),
    (6, acceptance.criterion_quotient),
    (7, acceptance.criterion_representation),
    (8, acceptance.criterion_pl_lattice),
    (9, acceptance.criterion_cli),
]


@pytest.mark.parametrize("number,run", CRITERIA, ids=[f"criterion{n}" for n, _ in CRITERIA])
def test_criterion(number, run):
    result = run()
    assert result.number == number
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line
