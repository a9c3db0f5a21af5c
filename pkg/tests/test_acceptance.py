"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v`` for one pass/fail line each,
or ``nvgroups selftest`` for the same checks from the command line.
"""

from nvgroups.selftest import (
    check_abelianization,
    check_complexity_descent,
    check_conversion_formula,
    check_factorization,
    check_family_soundness,
    check_normal_form_uniqueness,
    check_presentation_counts,
    check_relator_soundness,
)


def _assert_check(result):
    name, ok, detail = result
    assert ok, f"{name}: {detail}"
    print(f"PASS {name}: {detail}")


def test_presentation_counts():
    """Exact generator/relator counts for n = 2..6, each emitted in < 1 s."""
    _assert_check(check_presentation_counts())


def test_relator_soundness():
    """Every relator of both presentations verifies semantically, n = 2,3,4, < 30 s."""
    _assert_check(check_relator_soundness())


def test_family_soundness():
    """Families (1)-(18) and (M1)-(M6), indices <= 6, n <= 4, < 5 min;
    (18) vacuous at n = 2 and nonvacuous at n = 3."""
    _assert_check(check_family_soundness())


def test_normal_form_uniqueness():
    """Equal patterns normalize to identical forests: exhaustive cut words of
    length <= 4 for n <= 3, plus 10^4 random words of length <= 12; the
    normal form preserves the pattern and the cut count exactly."""
    _assert_check(check_normal_form_uniqueness())


def test_complexity_descent():
    """>= 10^3 lowering inputs: strict length-lex descent, element preserved,
    iteration reaches a normalized trunk."""
    _assert_check(check_complexity_descent())


def test_factorization():
    """>= 10^4 random elements (word length <= 15, n <= 3) round-trip through
    factor_element with the L*M*R shape constraints."""
    _assert_check(check_factorization())


def test_abelianization():
    """All elementary divisors of nV presentations are 1 at full rank for
    n = 2..5 in < 10 s; the free-abelian control is nontrivial."""
    _assert_check(check_abelianization())


def test_conversion_formula():
    """The swap-to-pi/pibar conversion verifies for all 0 <= j < p <= 8."""
    _assert_check(check_conversion_formula())
