import json

import pytest

from nvgroups.group import GroupWord, X, word_evaluate
from nvgroups.patterns import element_equal
from nvgroups.presentation import (
    Relator,
    abelianize,
    abelianize_matrix,
    family_instances,
    present_monoid_group,
    present_nV,
    present_omegaV,
    presentation_json,
    presentation_plain,
    presentation_text,
    smith_normal_form,
    verify_families,
    verify_presentation,
)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_counts_match_formulas(n):
    pm = present_monoid_group(n)
    assert len(pm.generators) == 2 * n + 2
    assert len(pm.relators) == 5 * n * n + 7 * n + 6
    pv = present_nV(n)
    assert len(pv.generators) == 2 * n + 4
    assert len(pv.relators) == 10 * n * n + 10 * n + 10


def test_frozen_counts():
    assert (len(present_monoid_group(2).generators), len(present_monoid_group(2).relators)) == (6, 40)
    assert (len(present_monoid_group(3).generators), len(present_monoid_group(3).relators)) == (8, 72)
    assert (len(present_nV(2).generators), len(present_nV(2).relators)) == (8, 70)
    assert (len(present_nV(3).generators), len(present_nV(3).relators)) == (10, 130)
    assert (len(present_nV(4).generators), len(present_nV(4).relators)) == (12, 210)


def test_n1_emits_with_warning():
    p = present_monoid_group(1)
    assert p.warnings
    q = present_nV(1)
    assert q.warnings
    assert verify_presentation(q).ok


def test_invalid_n():
    with pytest.raises(ValueError):
        present_monoid_group(0)
    with pytest.raises(ValueError):
        present_nV(-1)
    with pytest.raises(ValueError):
        present_omegaV(1)


@pytest.mark.parametrize("n", [2, 3])
def test_all_relators_verify(n):
    assert verify_presentation(present_monoid_group(n)).ok
    assert verify_presentation(present_nV(n)).ok


def test_corrupted_relator_detected():
    p = present_nV(2)
    bad = Relator("corrupt", (), (X(0, 1),), (X(1, 1),))
    corrupted = type(p)(p.kind, p.n, p.generators, p.relators + (bad,), p.warnings)
    rep = verify_presentation(corrupted)
    assert not rep.ok and len(rep.failures) == 1


def test_homomorphism_image_correspondence():
    # the image relators hold in nV exactly as their preimages hold in the monoid
    p = present_monoid_group(2)
    q = present_nV(2)
    images = [r for r in q.relators if r.family.startswith("hom(")]
    assert len(images) == len(p.relators)
    for r in images:
        assert r.family[4:-1] in ("M1", "M2", "M3", "M4", "M5a", "M5bc", "M5d", "M6")


@pytest.mark.parametrize("d_max", [2, 3])
def test_omegaV_truncation(d_max):
    p = present_omegaV(d_max)
    q = present_nV(d_max)
    assert p.relators == q.relators
    assert p.generators == q.generators
    assert p.kind == "omegaV" and p.warnings


def test_family_instances_18_vacuity():
    assert family_instances("18", 2, 6) == []
    assert len(family_instances("18", 3, 1)) > 0


def test_verify_families_small():
    rep, counts = verify_families(2, 2)
    assert rep.ok
    assert counts["18"] == 0
    rep3, counts3 = verify_families(3, 1, families=("18",))
    assert rep3.ok and counts3["18"] > 0


def test_smith_normal_form_known():
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[6, 10, 15]]) == [1]
    assert smith_normal_form([[4]]) == [4]


def test_smith_divisibility_chain_random():
    import random

    rng = random.Random(13)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        mat = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        divs = smith_normal_form(mat)
        for a, b in zip(divs, divs[1:]):
            assert b % a == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_abelianization_trivial(n):
    rep = abelianize(present_nV(n))
    assert rep.cols == 2 * n + 4
    assert rep.trivial
    assert rep.elementary_divisors == (1,) * (2 * n + 4)


def test_abelianization_control():
    rep = abelianize_matrix([[0, 0]], 2)
    assert rep.elementary_divisors == (0, 0)
    assert not rep.trivial
    rep2 = abelianize_matrix([[2, 0], [0, 1]], 2)
    assert rep2.elementary_divisors == (1, 2)
    assert not rep2.trivial


def test_baker_abbreviation_expansion_is_sound():
    # the expansion used by abelianize evaluates to the baker's map itself
    from nvgroups.presentation import baker_expansion
    from nvgroups.group import C, generator_element

    for n in (2, 3):
        for m in (0, 1, 2):
            for d in range(2, n + 1):
                word = GroupWord(n, baker_expansion(m, d, 1))
                assert element_equal(word_evaluate(word), generator_element(C(m, d), n))


def test_output_formats():
    p = present_nV(2)
    text = presentation_text(p)
    assert "8 generators, 70 relators" in text
    blob = presentation_json(p)
    assert len(blob["generators"]) == 8 and len(blob["relators"]) == 70
    json.dumps(blob)  # serializable
    plain = presentation_plain(p)
    assert plain.splitlines()[0].startswith("generators: X0_1")
    assert sum(1 for line in plain.splitlines() if line.startswith("relator: ")) == 70


def test_monoid_relator_text_shows_inverses():
    p = present_monoid_group(2)
    text = presentation_text(p)
    assert "s1.1^-1" in text
