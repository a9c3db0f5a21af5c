import itertools
import random

import pytest

from nvgroups.monoid import (
    Cut,
    LabeledForest,
    Leaf,
    MonoidWord,
    Node,
    Swap,
    apply_relation,
    divided_dimensions,
    forest_from_json,
    forest_pattern,
    forest_to_json,
    forest_to_word,
    format_monoid_word,
    fully_divided,
    interior_vertices,
    is_normalized,
    monoid_relation_instance,
    normalize_word,
    parse_monoid_word,
    permutation_of_word,
    pull_up_dimension,
    swap_word_for_permutation,
    word_length,
    word_to_forest,
    word_to_pattern,
    words_equal,
)
from nvgroups.patterns import pattern_base

RULES = ("M1", "M2", "M3", "M4", "M5a", "M5b", "M5c", "M5d", "M6")


def w(text, n=None):
    return parse_monoid_word(text, n)


# --- words and patterns -------------------------------------------------------


def test_word_length():
    assert word_length(w("", 2)) == 0
    assert word_length(w("s0.1 sig0 s1.2")) == 2


def test_word_to_pattern_m2():
    assert word_to_pattern(MonoidWord(2, (Swap(0), Swap(0))), 2) == pattern_base(2, 2)


def test_word_to_pattern_m6_sides():
    lhs, rhs = monoid_relation_instance("M6", 2, i=0, d=1, dp=2)
    assert word_to_pattern(lhs, 1) == word_to_pattern(rhs, 1)


def test_word_to_pattern_staircase():
    p = word_to_pattern(w("s0.1 s0.1 s0.1"), 1)
    assert [b.intervals[0].bits() for b in p.bricks] == ["000", "001", "01", "1"]


def test_word_to_pattern_growth():
    p = word_to_pattern(w("s2.1", 2))
    assert p.cubes == 3 and len(p.bricks) == 4


def test_word_to_pattern_fixed_k_errors():
    with pytest.raises(IndexError):
        word_to_pattern(w("s2.1", 2), 1)


# --- forests -------------------------------------------------------------------


def test_word_to_forest_examples():
    f = word_to_forest(w("", 2))
    assert f.trees == (Leaf(0),)
    f = word_to_forest(w("s0.1 s1.2"))
    assert f.trees == (Node(1, Leaf(0), Node(2, Leaf(1), Leaf(2))),)
    f2 = word_to_forest(w("s0.1 sig0"))
    assert f2.trees == (Node(1, Leaf(1), Leaf(0)),)


def test_forest_pattern_matches_word():
    for text in ("s0.1 s1.2 s0.2", "s0.2 s1.1 s0.1 sig1", "s1.1 s0.2", "sig0 s0.1"):
        word = w(text, 2)
        assert forest_pattern(word_to_forest(word)) == word_to_pattern(word)


def test_forest_to_word_examples():
    single = LabeledForest(2, (Node(2, Leaf(0), Leaf(1)),))
    assert format_monoid_word(forest_to_word(single)) == "s0.2"
    f = word_to_forest(w("s0.1 s1.2"))
    assert format_monoid_word(forest_to_word(f)) == "s0.1 s1.2"


def test_forest_to_word_all_orders():
    f = word_to_forest(w("s0.1 s1.2 s0.2"))
    verts = interior_vertices(f)
    count = 0
    for perm in itertools.permutations(verts):
        try:
            out = forest_to_word(f, perm)
        except ValueError:
            continue
        count += 1
        assert word_to_forest(out) == f
    assert count > 1  # several ancestry-respecting orders exist


def test_forest_to_word_rejects_bad_order():
    f = word_to_forest(w("s0.1 s0.1"))
    verts = interior_vertices(f)
    with pytest.raises(ValueError):
        forest_to_word(f, tuple(reversed(verts)))


def test_forest_json_round_trip():
    f = word_to_forest(w("s0.1 s1.2 sig1"))
    assert forest_from_json(forest_to_json(f)) == f


# --- fully divided / normalized -------------------------------------------------


def test_fully_divided_leaf():
    assert not fully_divided(Leaf(0), 1)


def test_fully_divided_root_label():
    t = Node(2, Leaf(0), Leaf(1))
    assert fully_divided(t, 2) and not fully_divided(t, 1)


def test_fully_divided_recursion():
    t = Node(1, Node(2, Leaf(0), Leaf(1)), Node(2, Leaf(2), Leaf(3)))
    assert fully_divided(t, 1) and fully_divided(t, 2)
    assert divided_dimensions(t) == frozenset({1, 2})


def test_is_normalized():
    all_ones = word_to_forest(w("s0.1 s1.1 s0.1"))
    assert is_normalized(all_ones)
    bad = LabeledForest(2, (Node(2, Node(1, Leaf(0), Leaf(1)), Node(1, Leaf(2), Leaf(3))),))
    assert not is_normalized(bad)
    good = LabeledForest(2, (Node(1, Node(2, Leaf(0), Leaf(1)), Node(2, Leaf(2), Leaf(3))),))
    assert is_normalized(good)


# --- pull up / normalize ---------------------------------------------------------


def test_pull_up_already_first():
    word = w("s0.1 s1.2")
    out = pull_up_dimension(word, 0, 1)
    assert out.letters[0] == Cut(0, 1)
    assert words_equal(word, out)


def test_pull_up_base_case():
    word = w("s0.2 s1.1 s0.1")
    out = pull_up_dimension(word, 0, 1)
    assert out.letters[0] == Cut(0, 1)
    assert words_equal(word, out)
    assert word_length(out) == word_length(word)


def test_pull_up_requires_divided():
    with pytest.raises(ValueError):
        pull_up_dimension(w("s0.2 s1.1"), 0, 1)


def test_pull_up_random_length_preserved():
    rng = random.Random(2)
    found = 0
    while found < 25:
        word = random_word(rng.randint(2, 3), rng.randint(2, 8), rng)
        forest = word_to_forest(word)
        dims = divided_dimensions(forest.trees[0])
        if not dims:
            continue
        d = rng.choice(sorted(dims))
        out = pull_up_dimension(word, 0, d)
        assert out.letters[0] == Cut(0, d)
        assert words_equal(word, out)
        assert word_length(out) == word_length(word)
        found += 1


def test_normalize_frozen_example():
    assert format_monoid_word(normalize_word(w("s0.2 s1.1 s0.1"))) == "s0.1 s1.2 s0.2 sig1"


def test_normalize_already_normalized():
    word = w("s0.1 s1.2 s0.2")
    assert normalize_word(word) == word


def test_normalize_unique_exhaustive_small():
    # all cut-only words on one cube up to length 5 (n <= 2) and 4 (n = 3):
    # equal patterns must yield identical normalized words
    for n, max_len in ((1, 5), (2, 5), (3, 4)):
        for length in range(max_len + 1):
            seen = {}
            for letters in _cut_words(n, length):
                word = MonoidWord(n, letters)
                nf = normalize_word(word)
                key = word_to_pattern(word, 1)
                assert seen.setdefault(key, nf) == nf
                assert word_to_pattern(nf, 1) == key


def _cut_words(n, length, prefix=(), leaves=1):
    if length == 0:
        yield prefix
        return
    for i in range(leaves):
        for d in range(1, n + 1):
            yield from _cut_words(n, length - 1, prefix + (Cut(i, d),), leaves + 1)


def test_normalize_shape_and_soundness():
    rng = random.Random(31)
    for _ in range(120):
        word = random_word(rng.randint(1, 3), rng.randint(0, 9), rng, swaps=True)
        out = normalize_word(word)
        cuts = [l for l in out.letters if isinstance(l, Cut)]
        swaps = [l for l in out.letters if isinstance(l, Swap)]
        assert tuple(cuts) + tuple(swaps) == out.letters  # cuts-then-swaps shape
        assert words_equal(word, out)
        assert word_length(out) == word_length(word)
        assert is_normalized(word_to_forest(MonoidWord(out.dim, tuple(cuts))))


# --- relation system --------------------------------------------------------------


def random_word(n, length, rng, swaps=True):
    letters = []
    leaves = 1
    for _ in range(length):
        if swaps and leaves >= 2 and rng.random() < 0.35:
            letters.append(Swap(rng.randrange(leaves - 1)))
        else:
            letters.append(Cut(rng.randrange(leaves), rng.randint(1, n)))
            leaves += 1
    return MonoidWord(n, tuple(letters))


def test_apply_relation_m2_deletes():
    out = apply_relation(MonoidWord(2, (Swap(0), Swap(0))), "M2", 0)
    assert out.letters == ()


def test_apply_relation_m5b():
    out = apply_relation(MonoidWord(2, (Swap(0), Cut(0, 2))), "M5b", 0)
    assert out.letters == (Cut(1, 2), Swap(0), Swap(1))


def test_apply_relation_no_match():
    with pytest.raises(ValueError):
        apply_relation(MonoidWord(2, (Cut(0, 1),)), "M2", 0)


def test_relation_instances_preserve_pattern():
    rng = random.Random(8)
    cases = {
        "M1": dict(i=0, j=2, d=1, dp=2),
        "M2": dict(i=1),
        "M3": dict(i=0, j=3),
        "M4": dict(i=1),
        "M5a": dict(i=0, j=2, d=2),
        "M5b": dict(i=1, d=1),
        "M5c": dict(j=0, d=2),
        "M5d": dict(i=3, j=0, d=1),
        "M6": dict(i=1, d=2, dp=1),
    }
    for rule, params in cases.items():
        lhs, rhs = monoid_relation_instance(rule, 2, **params)
        assert words_equal(lhs, rhs), rule


def test_apply_relation_embedded_instances():
    # plant relation instances inside random context and rewrite them there
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(2, 3)
        rule = rng.choice(RULES)
        params = random_params(rule, n, rng)
        lhs, rhs = monoid_relation_instance(rule, n, **params)
        prefix = random_word(n, rng.randint(0, 3), rng)
        word = MonoidWord(n, prefix.letters + lhs.letters)
        out = apply_relation(word, rule, len(prefix.letters), forward=True)
        assert out.letters == prefix.letters + rhs.letters
        assert words_equal(word, out)
        if rule != "M2":
            back = apply_relation(out, rule, len(prefix.letters), forward=False)
            assert words_equal(back, word)


def random_params(rule, n, rng):
    if rule == "M1":
        j = rng.randint(1, 3)
        return dict(i=rng.randint(0, j - 1), j=j, d=rng.randint(1, n), dp=rng.randint(1, n))
    if rule in ("M2", "M4"):
        return dict(i=rng.randint(0, 3))
    if rule == "M3":
        i = rng.randint(0, 3)
        return dict(i=i, j=i + rng.randint(2, 3))
    if rule == "M5a":
        j = rng.randint(1, 3)
        return dict(i=rng.randint(0, j - 1), j=j, d=rng.randint(1, n))
    if rule == "M5b":
        return dict(i=rng.randint(0, 3), d=rng.randint(1, n))
    if rule == "M5c":
        return dict(j=rng.randint(0, 3), d=rng.randint(1, n))
    if rule == "M5d":
        j = rng.randint(0, 2)
        return dict(i=j + rng.randint(2, 3), j=j, d=rng.randint(1, n))
    d = rng.randint(1, n)
    dp = rng.choice([x for x in range(1, n + 1) if x != d])
    return dict(i=rng.randint(0, 2), d=d, dp=dp)


# --- swap words --------------------------------------------------------------------


def test_swap_word_canonical():
    tau = permutation_of_word((Swap(0), Swap(1), Swap(0)), 3)
    word = swap_word_for_permutation(tau)
    assert permutation_of_word(word, 3) == tau
    assert len(word) == 3  # reduced: three inversions


def test_swap_word_lex_least_brute_force():
    def brute_lex_least(tau):
        # shortest words first, lexicographically within a length
        n = len(tau)
        for length in range(n * (n - 1) // 2 + 1):
            for word in itertools.product(range(n - 1), repeat=length):
                if permutation_of_word(tuple(Swap(i) for i in word), n) == tau:
                    return word
        raise AssertionError("unreachable")

    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(2, 4)
        tau = list(range(n))
        rng.shuffle(tau)
        tau = tuple(tau)
        ours = tuple(s.index for s in swap_word_for_permutation(tau))
        assert ours == brute_lex_least(tau)


def test_words_equal_trims_trailing_cubes():
    assert words_equal(w("s0.1", 2), w("s0.1 sig2 sig2", 2))


# --- grammar ------------------------------------------------------------------------


def test_grammar_round_trip():
    text = "s0.1 s1.2 sig1"
    assert format_monoid_word(parse_monoid_word(text)) == text


def test_grammar_errors():
    with pytest.raises(ValueError):
        parse_monoid_word("s0,1")
    with pytest.raises(ValueError):
        parse_monoid_word("x0.1")
