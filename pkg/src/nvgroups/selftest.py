"""Acceptance checks, shared by the ``selftest`` CLI command and the test suite.

Each check returns (name, ok, detail).  They are written against fixed
tolerances: counting identities are exact, semantic equalities are exact, and
the timed checks enforce the stated runtime budgets.
"""

from __future__ import annotations

import random
import time
from typing import Iterator

from .monoid import (
    Cut,
    MonoidWord,
    Swap,
    apply_relation,
    divided_dimensions,
    is_normalized,
    normalize_word,
    tree_is_normalized,
    word_length,
    word_to_forest,
    word_to_pattern,
)
from .patterns import Element, element_equal
from .group import (
    C,
    GroupLetter,
    GroupWord,
    Pi,
    PiBar,
    X,
    complexity,
    factor_element,
    lower_trunk_complexity,
    lower_until_normalized,
    sigma_to_letter,
    spine_paths,
    subtree,
    tree_from_trunk_word,
    word_evaluate,
)
from .group import lmr_shape_ok
from .presentation import (
    abelianize,
    abelianize_matrix,
    present_monoid_group,
    present_nV,
    verify_families,
    verify_presentation,
)

Check = tuple[str, bool, str]


def check_presentation_counts() -> Check:
    t0 = time.monotonic()
    worst = 0.0
    for n in range(2, 7):
        t1 = time.monotonic()
        pm = present_monoid_group(n)
        pv = present_nV(n)
        worst = max(worst, time.monotonic() - t1)
        if (len(pm.generators), len(pm.relators)) != (2 * n + 2, 5 * n * n + 7 * n + 6):
            return ("presentation counts", False, f"monoid group count wrong at n={n}")
        if (len(pv.generators), len(pv.relators)) != (2 * n + 4, 10 * n * n + 10 * n + 10):
            return ("presentation counts", False, f"nV count wrong at n={n}")
    if worst >= 1.0:
        return ("presentation counts", False, f"emission took {worst:.2f}s >= 1s")
    return (
        "presentation counts",
        True,
        f"n=2..6 match 2n+2 / 5n^2+7n+6 and 2n+4 / 10n^2+10n+10 "
        f"(worst emission {worst * 1000:.0f} ms, total {time.monotonic() - t0:.2f}s)",
    )


def check_relator_soundness() -> Check:
    t0 = time.monotonic()
    total = 0
    for n in (2, 3, 4):
        for pres in (present_monoid_group(n), present_nV(n)):
            rep = verify_presentation(pres)
            total += rep.checked
            if not rep.ok:
                return ("relator soundness", False, f"failures at n={n}: {rep.failures[:3]}")
    elapsed = time.monotonic() - t0
    if elapsed >= 30.0:
        return ("relator soundness", False, f"took {elapsed:.1f}s >= 30s")
    return ("relator soundness", True, f"{total} relators verified for n=2,3,4 in {elapsed:.1f}s")


def check_family_soundness() -> Check:
    t0 = time.monotonic()
    total = 0
    for n in (1, 2, 3, 4):
        rep, counts = verify_families(n, 6)
        total += rep.checked
        if not rep.ok:
            return ("family soundness", False, f"failures at n={n}: {rep.failures[:3]}")
        if n == 2 and counts["18"] != 0:
            return ("family soundness", False, "family (18) not vacuous at n=2")
        if n == 3 and counts["18"] == 0:
            return ("family soundness", False, "family (18) vacuous at n=3")
    elapsed = time.monotonic() - t0
    if elapsed >= 300.0:
        return ("family soundness", False, f"took {elapsed:.1f}s >= 5min")
    return (
        "family soundness",
        True,
        f"{total} instances of (1)-(18), (M1)-(M6) verified, indices <= 6, n <= 4, {elapsed:.1f}s",
    )


def _all_cut_words(n: int, length: int) -> Iterator[tuple[Cut, ...]]:
    """Every cut-only word of the given length acting on one cube."""

    def rec(prefix: tuple[Cut, ...], leaves: int, left: int) -> Iterator[tuple[Cut, ...]]:
        if left == 0:
            yield prefix
            return
        for i in range(leaves):
            for d in range(1, n + 1):
                yield from rec(prefix + (Cut(i, d),), leaves + 1, left - 1)

    yield from rec((), 1, length)


def _random_mixed_word(n: int, length: int, rng: random.Random) -> MonoidWord:
    letters = []
    leaves = 1
    for _ in range(length):
        if leaves >= 2 and rng.random() < 0.35:
            letters.append(Swap(rng.randrange(leaves - 1)))
        else:
            letters.append(Cut(rng.randrange(leaves), rng.randint(1, n)))
            leaves += 1
    return MonoidWord(n, tuple(letters))


def _random_rewrites(w: MonoidWord, rng: random.Random, tries: int = 12) -> MonoidWord:
    rules = ("M1", "M2", "M3", "M4", "M5a", "M5b", "M5c", "M5d", "M6")
    for _ in range(tries):
        if not w.letters:
            break
        try:
            w = apply_relation(w, rng.choice(rules), rng.randrange(len(w.letters)), rng.random() < 0.7)
        except ValueError:
            continue
    return w


def check_normal_form_uniqueness(random_count: int = 10_000, seed: int = 20260808) -> Check:
    # Exhaustive: all cut-only words of length <= 4 over n <= 3, grouped by pattern.
    for n in (1, 2, 3):
        for length in range(5):
            groups: dict = {}
            for letters in _all_cut_words(n, length):
                w = MonoidWord(n, letters)
                nf = normalize_word(w)
                if word_to_pattern(nf, 1) != word_to_pattern(w, 1):
                    return ("normal-form uniqueness", False, f"pattern changed: {letters}")
                if word_length(nf) != word_length(w):
                    return ("normal-form uniqueness", False, f"length changed: {letters}")
                key = word_to_pattern(w, 1)
                forest = word_to_forest(nf)
                if not is_normalized(word_to_forest(MonoidWord(n, tuple(l for l in nf.letters if isinstance(l, Cut))))):
                    return ("normal-form uniqueness", False, f"not normalized: {letters}")
                if groups.setdefault(key, forest) != forest:
                    return ("normal-form uniqueness", False, f"distinct forests for one pattern: {letters}")
    # Randomized: rewrite-equivalent pairs normalize identically.
    rng = random.Random(seed)
    for trial in range(random_count):
        n = rng.randint(1, 3)
        w = _random_mixed_word(n, rng.randint(1, 12), rng)
        v = _random_rewrites(w, rng)
        nw, nv = normalize_word(w), normalize_word(v)
        if nw != nv:
            return ("normal-form uniqueness", False, f"rewrite pair diverged (trial {trial})")
        if word_to_pattern(nw) != word_to_pattern(w) or word_length(nw) != word_length(w):
            return ("normal-form uniqueness", False, f"normalize not sound (trial {trial})")
    return (
        "normal-form uniqueness",
        True,
        f"exhaustive length <= 4, n <= 3 plus {random_count} random words of length <= 12",
    )


def _random_trunk_input(n: int, rng: random.Random) -> GroupWord:
    """Random C..C X..X word, off-trunk parts left as generated."""
    letters: list[GroupLetter] = []
    idx = -1
    for _ in range(rng.randint(0, 3)):
        idx += rng.randint(1, 2)
        letters.append(C(idx, rng.randint(2, n)))
    k = idx + 1
    for _ in range(rng.randint(0, 5)):
        q = rng.randint(0, k + 1)
        letters.append(X(q, rng.randint(1, n)))
        k += (q + 1 - k + 1) if q >= k else 1
    return GroupWord(n, tuple(letters))


def _descent_case(n: int, rng: random.Random) -> GroupWord | None:
    w = _random_trunk_input(n, rng)
    t = tree_from_trunk_word(w.letters)
    paths = spine_paths(t)
    for p in paths:
        node = subtree(t, p)
        if not tree_is_normalized(node.right):
            return None
    for p in paths:
        node = subtree(t, p)
        if min(divided_dimensions(node)) < node.label:
            return w
    return None


def check_complexity_descent(case_count: int = 1000, seed: int = 77) -> Check:
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < case_count:
        attempts += 1
        if attempts > 200 * case_count:
            return ("complexity descent", False, "input generator starved")
        w = _descent_case(rng.randint(2, 3), rng)
        if w is None:
            continue
        before = complexity(tree_from_trunk_word(w.letters))
        out = lower_trunk_complexity(w)
        cut = next((i for i, l in enumerate(out.letters) if l.kind in ("pi", "pibar")), len(out.letters))
        after = complexity(tree_from_trunk_word(out.letters[:cut]))
        if not after < before:
            return ("complexity descent", False, f"complexity did not drop: {w.letters}")
        if not element_equal(word_evaluate(w), word_evaluate(out)):
            return ("complexity descent", False, f"element changed: {w.letters}")
        final, steps = lower_until_normalized(w)
        if not element_equal(word_evaluate(w), word_evaluate(final)):
            return ("complexity descent", False, f"iteration changed element: {w.letters}")
        fcut = next((i for i, l in enumerate(final.letters) if l.kind in ("pi", "pibar")), len(final.letters))
        ftree = tree_from_trunk_word(final.letters[:fcut])
        for p in spine_paths(ftree):
            node = subtree(ftree, p)
            if min(divided_dimensions(node)) < node.label:
                return ("complexity descent", False, "iteration left a non-normalized trunk vertex")
        done += 1
    return ("complexity descent", True, f"{done} lowering inputs: strict descent, element preserved, iteration terminates")


def _random_group_word(n: int, length: int, rng: random.Random) -> GroupWord:
    letters = []
    for _ in range(length):
        kind = rng.choice(("X", "pi", "pibar") + (("C",) if n >= 2 else ()))
        i = rng.randint(0, 4)
        if kind == "X":
            letters.append(X(i, rng.randint(1, n), rng.choice((1, -1))))
        elif kind == "C":
            letters.append(C(i, rng.randint(2, n), rng.choice((1, -1))))
        elif kind == "pi":
            letters.append(Pi(i))
        else:
            letters.append(PiBar(i))
    return GroupWord(n, tuple(letters))


def check_factorization(case_count: int = 10_000, seed: int = 4242) -> Check:
    rng = random.Random(seed)
    for trial in range(case_count):
        n = rng.randint(1, 3)
        w = _random_group_word(n, rng.randint(0, 15), rng)
        g = word_evaluate(w)
        fw = factor_element(g)
        if not lmr_shape_ok(fw):
            return ("factorization", False, f"bad shape (trial {trial}): {fw.letters}")
        if not element_equal(word_evaluate(fw), g):
            return ("factorization", False, f"round trip failed (trial {trial}): {w.letters}")
    return ("factorization", True, f"{case_count} random elements (length <= 15, n <= 3) round-trip in LMR shape")


def check_abelianization() -> Check:
    t0 = time.monotonic()
    for n in (2, 3, 4, 5):
        rep = abelianize(present_nV(n))
        if not rep.trivial:
            return ("abelianization", False, f"nV({n}) not trivial: {rep.elementary_divisors}")
    control = abelianize_matrix([[0, 0]], 2)
    if control.trivial or control.elementary_divisors != (0, 0):
        return ("abelianization", False, f"control failed: {control.elementary_divisors}")
    elapsed = time.monotonic() - t0
    if elapsed >= 10.0:
        return ("abelianization", False, f"took {elapsed:.1f}s >= 10s")
    return (
        "abelianization",
        True,
        f"nV(2..5) have all divisors 1 at full rank; free-abelian control is (0, 0); {elapsed:.2f}s",
    )


def check_conversion_formula() -> Check:
    for p in range(1, 9):
        dom = word_to_pattern(MonoidWord(3, (Cut(0, 1),) * p), 1)
        for j in range(p):
            rng_pat = word_to_pattern(MonoidWord(3, (Cut(0, 1),) * p + (Swap(j),)), 1)
            pair = Element(3, dom, rng_pat)
            single = word_evaluate(GroupWord(3, (sigma_to_letter(j, p),)))
            if not element_equal(pair, single):
                return ("conversion formula", False, f"sigma_{j} at depth {p}")
    return ("conversion formula", True, "swap-to-permutation-generator map verified for all 0 <= j < p <= 8")


def run_selftest(quick: bool = False, seed: int | None = None) -> list[Check]:
    seeded = {} if seed is None else {"seed": seed}
    return [
        check_presentation_counts(),
        check_relator_soundness(),
        check_family_soundness(),
        check_normal_form_uniqueness(random_count=500 if quick else 10_000, **seeded),
        check_complexity_descent(case_count=100 if quick else 1000, **seeded),
        check_factorization(case_count=500 if quick else 10_000, **seeded),
        check_abelianization(),
        check_conversion_formula(),
    ]
