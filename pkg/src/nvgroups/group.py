"""The group nV over the generators X, C (baker's maps), pi and pibar.

Words multiply left to right exactly as products of pattern pairs are
juxtaposed; with the pair orientation (p, q) -> domain pattern(q), range
pattern(p), this means the rightmost letter acts first on Cantor-set points.
That calibration is locked by the relation families (1)-(18), which the test
suite verifies semantically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterable, Optional, Sequence

from .monoid import (
    Cut,
    LabeledForest,
    Leaf,
    MonoidWord,
    Node,
    Swap,
    Tree,
    divided_dimensions,
    forest_pattern,
    match_permutation,
    monoid_relation_instance,
    normalize_tree,
    number_forest_canonically,
    pull_to_root,
    swap_word_for_permutation,
    tree_is_normalized,
    tree_size,
    word_to_pattern,
)
from .patterns import (
    DyadicBrick,
    DyadicInterval,
    Element,
    Pattern,
    element_compose,
    element_inverse,
    identity_element,
)

_KINDS = ("X", "C", "pi", "pibar")


@dataclass(frozen=True)
class GroupLetter:
    kind: str
    index: int
    dim: int = 0
    sign: int = 1

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown letter kind {self.kind!r}")
        if self.index < 0:
            raise ValueError("negative letter index")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kind == "X" and self.dim < 1:
            raise ValueError("X letter needs a dimension >= 1")
        if self.kind == "C" and self.dim < 2:
            raise ValueError("baker's map letters need dimension >= 2")
        if self.kind in ("pi", "pibar") and (self.dim != 0 or self.sign != 1):
            raise ValueError("pi/pibar letters are unsigned involutions")

    def inverse(self) -> "GroupLetter":
        if self.kind in ("pi", "pibar"):
            return self
        return GroupLetter(self.kind, self.index, self.dim, -self.sign)


def X(i: int, d: int, sign: int = 1) -> GroupLetter:
    return GroupLetter("X", i, d, sign)


def C(i: int, d: int, sign: int = 1) -> GroupLetter:
    return GroupLetter("C", i, d, sign)


def Pi(i: int) -> GroupLetter:
    return GroupLetter("pi", i)


def PiBar(i: int) -> GroupLetter:
    return GroupLetter("pibar", i)


@dataclass(frozen=True)
class GroupWord:
    dim: int
    letters: tuple[GroupLetter, ...]

    def __post_init__(self) -> None:
        for let in self.letters:
            if let.kind in ("X", "C") and let.dim > self.dim:
                raise ValueError(f"letter dimension {let.dim} exceeds ambient dim {self.dim}")

    def __len__(self) -> int:
        return len(self.letters)


def word_inverse(w: GroupWord) -> GroupWord:
    return GroupWord(w.dim, tuple(let.inverse() for let in reversed(w.letters)))


def generator_element(let: GroupLetter, n: int) -> Element:
    """Evaluate the defining monoid word pair of a generator on one cube."""
    return _generator_element(let, n)


@lru_cache(maxsize=4096)
def _generator_element(let: GroupLetter, n: int) -> Element:
    i = let.index
    if let.kind == "X":
        p = (Cut(0, 1),) * (i + 1) + (Cut(1, let.dim),)
        q = (Cut(0, 1),) * (i + 2)
    elif let.kind == "C":
        p = (Cut(0, 1),) * i + (Cut(0, let.dim),)
        q = (Cut(0, 1),) * (i + 1)
    elif let.kind == "pi":
        p = (Cut(0, 1),) * (i + 2) + (Swap(1),)
        q = (Cut(0, 1),) * (i + 2)
    else:
        p = (Cut(0, 1),) * (i + 1) + (Swap(0),)
        q = (Cut(0, 1),) * (i + 1)
    dom = word_to_pattern(MonoidWord(n, q), 1)
    rng = word_to_pattern(MonoidWord(n, p), 1)
    el = Element(n, dom, rng)
    return element_inverse(el) if let.sign < 0 else el


def word_evaluate(w: GroupWord) -> Element:
    el = identity_element(w.dim)
    for let in w.letters:
        el = element_compose(generator_element(let, w.dim), el)
    return el


def sigma_to_letter(j: int, p: int) -> GroupLetter:
    """The generator equal to the pair (s_{0,1}^p sigma_j, s_{0,1}^p)."""
    if not 0 <= j <= p - 1:
        raise ValueError(f"swap index {j} invalid at staircase depth {p}")
    if j == 0:
        return PiBar(p - 1)
    return Pi(p - j - 1)


def permutation_letters(tau: Sequence[int], p: int) -> tuple[GroupLetter, ...]:
    return tuple(sigma_to_letter(s.index, p) for s in swap_word_for_permutation(tuple(tau)))


# --- relation families (1)-(18) -----------------------------------------------


def relation_instance(family: str, n: int, **params: int):
    """Both sides of a numbered relation family, as words.

    Families "1".."18" return GroupWord pairs; "M1".."M6" return MonoidWord
    pairs.  Side conditions are enforced and raise ValueError.
    """
    if family.startswith("M"):
        return monoid_relation_instance(family, n, **params)

    def need(cond: bool, msg: str) -> None:
        if not cond:
            raise ValueError(f"relation ({family}): {msg}")

    def dimx(d: int) -> int:
        need(1 <= d <= n, f"dimension {d} out of range")
        return d

    def dimc(d: int) -> int:
        need(2 <= d <= n, f"baker dimension {d} out of range")
        return d

    def w(*letters: GroupLetter) -> GroupWord:
        return GroupWord(n, letters)

    g = params.get
    if family == "1":
        q, m, d, dp = g("q"), g("m"), dimx(g("d")), dimx(g("dp"))
        need(m < q, "needs m < q")
        return w(X(q, d), X(m, dp)), w(X(m, dp), X(q + 1, d))
    if family == "2":
        q, m, d = g("q"), g("m"), dimx(g("d"))
        need(m < q, "needs m < q")
        return w(Pi(q), X(m, d)), w(X(m, d), Pi(q + 1))
    if family == "3":
        q, d = g("q"), dimx(g("d"))
        return w(Pi(q), X(q, d)), w(X(q + 1, d), Pi(q), Pi(q + 1))
    if family == "4":
        q, m, d = g("q"), g("m"), dimx(g("d"))
        need(m > q + 1, "needs m > q + 1")
        return w(Pi(q), X(m, d)), w(X(m, d), Pi(q))
    if family == "5":
        q, m, d = g("q"), g("m"), dimx(g("d"))
        need(m < q, "needs m < q")
        return w(PiBar(q), X(m, d)), w(X(m, d), PiBar(q + 1))
    if family == "6":
        m = g("m")
        return w(PiBar(m), X(m, 1)), w(Pi(m), PiBar(m + 1))
    if family == "7":
        m, d, dp = g("m"), dimx(g("d")), dimx(g("dp"))
        need(d != dp, "needs d != d'")
        return (
            w(X(m, d), X(m + 1, dp), X(m, dp)),
            w(X(m, dp), X(m + 1, d), X(m, d), Pi(m + 1)),
        )
    if family == "8":
        q, m = g("q"), g("m")
        need(abs(m - q) > 2, "needs |m - q| > 2")
        return w(Pi(q), Pi(m)), w(Pi(m), Pi(q))
    if family == "9":
        m = g("m")
        return w(Pi(m), Pi(m + 1), Pi(m)), w(Pi(m + 1), Pi(m), Pi(m + 1))
    if family == "10":
        q, m = g("q"), g("m")
        need(q >= m + 2, "needs q >= m + 2")
        return w(PiBar(q), Pi(m)), w(Pi(m), PiBar(q))
    if family == "11":
        m = g("m")
        return (
            w(Pi(m), PiBar(m + 1), Pi(m)),
            w(PiBar(m + 1), Pi(m), PiBar(m + 1)),
        )
    if family == "12":
        m = g("m")
        return w(Pi(m), Pi(m)), w()
    if family == "13":
        m = g("m")
        return w(PiBar(m), PiBar(m)), w()
    if family == "14":
        m, d = g("m"), dimc(g("d"))
        return w(PiBar(m), X(m, d)), w(C(m + 1, d), Pi(m), PiBar(m + 1))
    if family == "15":
        q, m, d, dp = g("q"), g("m"), dimc(g("d")), dimx(g("dp"))
        need(m < q, "needs m < q")
        return w(C(q, d), X(m, dp)), w(X(m, dp), C(q + 1, d))
    if family == "16":
        m, d = g("m"), dimc(g("d"))
        return w(C(m, d), X(m, 1)), w(X(m, d), C(m + 2, d), Pi(m + 1))
    if family == "17":
        q, m, d = g("q"), g("m"), dimc(g("d"))
        need(m > q + 1, "needs m > q + 1")
        return w(Pi(q), C(m, d)), w(C(m, d), Pi(q))
    if family == "18":
        m, d, dp = g("m"), g("d"), g("dp")
        need(1 < dp < d <= n, "needs 1 < d' < d <= n")
        return (
            w(C(m, d), X(m, dp), C(m + 2, dp)),
            w(C(m, dp), X(m, d), C(m + 2, d), Pi(m + 1)),
        )
    raise ValueError(f"unknown relation family {family!r}")


def subscript_raise_C(r: int, d: int, n: int) -> GroupWord:
    """Word equal to C_{r,d} with every baker subscript raised past r."""
    if r < 0 or not 2 <= d <= n:
        raise ValueError("invalid parameters for subscript raising")
    return GroupWord(n, (C(r + 1, d), X(r, d), Pi(r + 1), X(r, 1, -1)))


def subscript_raise_pibar(r: int, n: int) -> GroupWord:
    """Word equal to pibar_r using pibar_{r+1}."""
    if r < 0:
        raise ValueError("invalid parameters for subscript raising")
    return GroupWord(n, (Pi(r), PiBar(r + 1), X(r, 1, -1)))


# --- trunk decomposition and complexity ----------------------------------------


def spine_paths(t: Tree) -> tuple[tuple[int, ...], ...]:
    """Paths of the interior left-edge vertices, top down."""
    out = []
    path: tuple[int, ...] = ()
    while isinstance(t, Node):
        out.append(path)
        path = path + (0,)
        t = t.left
    return tuple(out)


def subtree(t: Tree, path: tuple[int, ...]) -> Tree:
    for step in path:
        t = t.right if step else t.left
    return t


def replace_subtree(t: Tree, path: tuple[int, ...], new: Tree) -> Tree:
    if not path:
        return new
    assert isinstance(t, Node)
    if path[0]:
        return Node(t.label, t.left, replace_subtree(t.right, path[1:], new))
    return Node(t.label, replace_subtree(t.left, path[1:], new), t.right)


@dataclass(frozen=True)
class TrunkDecomposition:
    trunk_labels: tuple[int, ...]
    c_positions: tuple[tuple[int, int], ...]  # (spine position, dimension != 1)
    forest: tuple[Tree, ...]  # right subtree of each trunk caret, top down
    m: int


def trunk_decompose(t: Tree) -> TrunkDecomposition:
    paths = spine_paths(t)
    labels = []
    forest = []
    for p in paths:
        node = subtree(t, p)
        assert isinstance(node, Node)
        labels.append(node.label)
        forest.append(node.right)
    cpos = tuple((i, lab) for i, lab in enumerate(labels) if lab != 1)
    return TrunkDecomposition(tuple(labels), cpos, tuple(forest), len(paths))


def trunk_reassemble(td: TrunkDecomposition) -> Tree:
    t: Tree = Leaf(None)
    for label, right in zip(reversed(td.trunk_labels), reversed(td.forest)):
        t = Node(label, t, right)
    return t


@total_ordering
@dataclass(frozen=True)
class Complexity:
    labels: tuple[int, ...]

    def _key(self) -> tuple:
        return (len(self.labels), self.labels)

    def __lt__(self, other: "Complexity") -> bool:
        return self._key() < other._key()


def complexity(t: Tree) -> Complexity:
    """Left-spine label word, ordered length-lexicographically."""
    return Complexity(tuple(subtree(t, p).label for p in spine_paths(t)))  # type: ignore[union-attr]


# --- trunk words: tree <-> C..C X..X ------------------------------------------


def reduce_pair_tree(t: Tree) -> Tree:
    """Strip bare trailing trunk carets (label 1, both children leaves).

    The pattern pair (tree word, dim-1 staircase) is unreduced exactly there,
    so this preserves the element the tree stands for.
    """
    while isinstance(t, Node):
        paths = spine_paths(t)
        node = subtree(t, paths[-1])
        assert isinstance(node, Node)
        if node.label == 1 and isinstance(node.right, Leaf):
            t = replace_subtree(t, paths[-1], Leaf(None))
        else:
            return t
    return t


def word_from_tree(t: Tree, n: int) -> tuple[GroupLetter, ...]:
    """Letters of the trunk word L with (tree word, staircase) pair semantics.

    The C prefix carries the non-1 spine labels; X letters plant the attached
    forest, extending the trunk below the last baker's map where needed.
    Requires the tree to carry no bare trailing trunk caret (reduce first).
    """
    if isinstance(t, Leaf):
        return ()
    td = trunk_decompose(t)
    m = td.m
    if td.trunk_labels[-1] == 1 and isinstance(td.forest[-1], Leaf):
        raise ValueError("tree has a bare trailing trunk caret; reduce the pair first")
    letters = [C(i, lab) for i, lab in td.c_positions]
    ig = td.c_positions[-1][0] if td.c_positions else -1
    built = {(0,) * i for i in range(ig + 1)}
    k = ig + 1
    s = ig + 1
    for j in range(ig + 1, m):
        fj = td.forest[j]
        if isinstance(fj, Node):
            letters.append(X(k + j - s, fj.label))
            for pos in range(s, j + 1):
                built.add((0,) * pos)
            built.add((0,) * j + (1,))
            k += (j - s + 1) + 1
            s = j + 1
    for j in range(m):
        base_path = (0,) * j + (1,)
        for path in _caret_paths(td.forest[j], base_path):
            if path in built:
                continue
            leaf_idx = _frontier_leaf_index(t, built, path)
            node = subtree(t, path)
            assert isinstance(node, Node)
            letters.append(X(k - leaf_idx, node.label))
            built.add(path)
            k += 1
    return tuple(letters)


def _caret_paths(t: Tree, base: tuple[int, ...]):
    if isinstance(t, Leaf):
        return
    yield base
    yield from _caret_paths(t.right, base + (1,))
    yield from _caret_paths(t.left, base + (0,))


def _frontier_leaf_index(t: Tree, built: set, target: tuple[int, ...]) -> int:
    count = 0

    def walk(node: Tree, path: tuple[int, ...]) -> bool:
        nonlocal count
        if path == target:
            return True
        if isinstance(node, Node) and path in built:
            return walk(node.left, path + (0,)) or walk(node.right, path + (1,))
        count += 1
        return False

    if not walk(t, ()):
        raise ValueError("emission target is not on the frontier")
    return count


def tree_from_trunk_word(letters: Sequence[GroupLetter]) -> Tree:
    """Primary tree of a word shaped C..C X..X (ascending baker subscripts)."""
    cs: list[GroupLetter] = []
    xs: list[GroupLetter] = []
    for let in letters:
        if let.sign < 0 or let.kind in ("pi", "pibar"):
            raise ValueError("expected a positive word in C's followed by X's")
        if let.kind == "C":
            if xs:
                raise ValueError("baker's letters must precede all X letters")
            if cs and let.index <= cs[-1].index:
                raise ValueError("baker subscripts must be strictly ascending")
            cs.append(let)
        else:
            xs.append(let)
    t: Tree = Leaf(None)
    if cs:
        ig = cs[-1].index
        labels = {c.index: c.dim for c in cs}
        for pos in range(ig, -1, -1):
            t = Node(labels.get(pos, 1), t, Leaf(None))
        k = ig + 1
    else:
        k = 0
    for x in xs:
        q, e = x.index, x.dim
        if q >= k:
            ext = q + 1 - k
            sub: Tree = Node(1, Leaf(None), Node(e, Leaf(None), Leaf(None)))
            for _ in range(ext - 1):
                sub = Node(1, sub, Leaf(None))
            t = _replace_leftmost_leaf(t, sub)
            k += ext + 1
        else:
            t = _replace_nth_leaf(t, k - q, Node(e, Leaf(None), Leaf(None)))
            k += 1
    return t


def _replace_leftmost_leaf(t: Tree, new: Tree) -> Tree:
    if isinstance(t, Leaf):
        return new
    return Node(t.label, _replace_leftmost_leaf(t.left, new), t.right)


def _replace_nth_leaf(t: Tree, idx: int, new: Tree) -> Tree:
    counter = [0]

    def rec(node: Tree) -> Tree:
        if isinstance(node, Leaf):
            cur = counter[0]
            counter[0] += 1
            return new if cur == idx else node
        return Node(node.label, rec(node.left), rec(node.right))

    out = rec(t)
    if counter[0] <= idx:
        raise ValueError(f"leaf index {idx} out of range")
    return out


def tree_pair_element(t: Tree, n: int) -> Element:
    """The element (tree word, staircase) -- domain a dim-1 staircase."""
    p = tree_size(t)
    dom = word_to_pattern(MonoidWord(n, (Cut(0, 1),) * p), 1)
    rng = forest_pattern(number_forest_canonically(LabeledForest(n, (t,))))
    return Element(n, dom, Pattern(n, 1, rng.bricks))


def _canonical_tree_pattern(t: Tree, n: int) -> Pattern:
    return forest_pattern(number_forest_canonically(LabeledForest(n, (t,))))


# --- lowering trunk complexity --------------------------------------------------


def lower_trunk_complexity(w: GroupWord) -> GroupWord:
    """One complexity-lowering rewrite at the lowest non-normalized trunk vertex.

    Input must be shaped C..C X..X with the primary tree normalized off the
    trunk.  Returns an equal word whose primary tree has strictly smaller
    length-lex complexity, shaped C..C X..X followed by pi/pibar letters;
    returns the input unchanged when every trunk vertex is already normalized.
    """
    n = w.dim
    t = tree_from_trunk_word(w.letters)
    if isinstance(t, Leaf):
        return w
    paths = spine_paths(t)
    for p in paths:
        node = subtree(t, p)
        assert isinstance(node, Node)
        if not tree_is_normalized(node.right):
            raise ValueError("hypothesis violated: tree is not normalized off the trunk")
    r = None
    for j in range(len(paths) - 1, -1, -1):
        node = subtree(t, paths[j])
        assert isinstance(node, Node)
        if min(divided_dimensions(node)) < node.label:
            r = j
            break
    if r is None:
        return w
    node = subtree(t, paths[r])
    assert isinstance(node, Node)
    ell = node.label
    d = min(divided_dimensions(node))
    lp = pull_to_root(node.left, d)
    rp = pull_to_root(node.right, d)
    assert isinstance(lp, Node) and isinstance(rp, Node)
    switched = Node(d, Node(ell, lp.left, rp.left), Node(ell, lp.right, rp.right))
    t3 = replace_subtree(t, paths[r], switched)
    p_count = tree_size(t)
    tau = match_permutation(_canonical_tree_pattern(t3, n), _canonical_tree_pattern(t, n))
    t3r = reduce_pair_tree(t3)
    letters = word_from_tree(t3r, n) + permutation_letters(tau, p_count)
    return GroupWord(n, letters)


def _renormalize_off_trunk(t: Tree) -> Tree:
    for p in spine_paths(t):
        node = subtree(t, p)
        assert isinstance(node, Node)
        t = replace_subtree(t, p + (1,), normalize_tree(node.right))
    return t


def lower_until_normalized(w: GroupWord, max_steps: Optional[int] = None) -> tuple[GroupWord, int]:
    """Iterate off-trunk renormalization and trunk lowering to a fixed point.

    Returns (word equal to w, number of lowering steps); the result is shaped
    C..C X..X (pi|pibar)* with a fully normalized primary tree.
    """
    n = w.dim
    letters = tuple(w.letters)
    suffix: tuple[GroupLetter, ...] = ()
    steps = 0
    if max_steps is None:
        max_steps = 8 * (len(letters) + 4)
    while True:
        t = tree_from_trunk_word(letters)
        t2 = _renormalize_off_trunk(t)
        if t2 != t:
            p_count = tree_size(t)
            tau = match_permutation(
                _canonical_tree_pattern(t2, n), _canonical_tree_pattern(t, n)
            )
            suffix = permutation_letters(tau, p_count) + suffix
            letters = word_from_tree(reduce_pair_tree(t2), n)
        out = lower_trunk_complexity(GroupWord(n, letters))
        cut = next(
            (i for i, let in enumerate(out.letters) if let.kind in ("pi", "pibar")),
            len(out.letters),
        )
        if out.letters[:cut] == letters and cut == len(out.letters):
            return GroupWord(n, letters + suffix), steps
        suffix = out.letters[cut:] + suffix
        letters = out.letters[:cut]
        steps += 1
        if steps > max_steps:
            raise RuntimeError("trunk lowering failed to terminate")


# --- factorization ---------------------------------------------------------------


def tree_of_pattern(p: Pattern) -> Tree:
    """Some labeled tree realizing a one-cube pattern by halving cuts."""
    if p.cubes != 1:
        raise ValueError("tree extraction needs a single-cube pattern")

    def build(bricks: list[DyadicBrick], region: DyadicBrick) -> Tree:
        if len(bricks) == 1:
            return Leaf(None)
        for d in range(1, p.dim + 1):
            lo, hi = region.cut(d)
            left = [b for b in bricks if lo.contains(b)]
            if len(left) == len(bricks):
                continue
            right = [b for b in bricks if hi.contains(b)]
            if len(left) + len(right) == len(bricks):
                return Node(d, build(left, lo), build(right, hi))
        raise ValueError("pattern is not realizable by halving cuts")

    region = DyadicBrick(0, tuple(DyadicInterval(0, 0) for _ in range(p.dim)))
    return build(list(p.bricks), region)


def _inverse_letters(letters: Iterable[GroupLetter]) -> tuple[GroupLetter, ...]:
    return tuple(let.inverse() for let in reversed(tuple(letters)))


def factor_element(g: Element) -> GroupWord:
    """A word evaluating to g in L * M * R form.

    L is baker's maps with ascending subscripts followed by X's, M is a word
    in pi/pibar only, and R is the mirror image of an L-shaped word.
    """
    n = g.dim
    p = len(g.domain.bricks) - 1
    t_dom = normalize_tree(tree_of_pattern(g.domain))
    t_rng = normalize_tree(tree_of_pattern(g.range))
    tau_d = match_permutation(_canonical_tree_pattern(t_dom, n), g.domain)
    tau_r = match_permutation(_canonical_tree_pattern(t_rng, n), g.range)
    inv_d = [0] * len(tau_d)
    for j, v in enumerate(tau_d):
        inv_d[v] = j
    tau_mid = tuple(tau_r[inv_d[x]] for x in range(len(tau_d)))
    left = word_from_tree(reduce_pair_tree(t_rng), n)
    middle = permutation_letters(tau_mid, p)
    right = _inverse_letters(word_from_tree(reduce_pair_tree(t_dom), n))
    return GroupWord(n, left + middle + right)


def lmr_shape_ok(w: GroupWord) -> bool:
    """Check the factored shape: C..C X..X (pi|pibar)* X^-1.. C^-1.. ."""
    phase = 0  # 0: C+, 1: X+, 2: perms, 3: X-, 4: C-
    last_c = None
    for let in w.letters:
        if let.kind == "C" and let.sign == 1:
            if phase > 0:
                return False
            if last_c is not None and let.index <= last_c:
                return False
            last_c = let.index
        elif let.kind == "X" and let.sign == 1:
            if phase > 1:
                return False
            phase = 1
        elif let.kind in ("pi", "pibar"):
            if phase > 2:
                return False
            phase = 2
        elif let.kind == "X" and let.sign == -1:
            if phase > 3:
                return False
            phase = 3
        else:  # C^-1, strictly descending indices
            if phase < 4:
                last_c = None
            phase = 4
            if last_c is not None and let.index >= last_c:
                return False
            last_c = let.index
    return True


def count_bakers(w: GroupWord) -> int:
    return sum(1 for let in w.letters if let.kind == "C")


def corner_swap(n: int) -> Element:
    """The involution exchanging the origin corner brick with the far corner
    brick of the 2^n-cell halving grid, fixing every other grid brick."""
    if n < 1:
        raise ValueError("need n >= 1")
    bricks = []
    for mask in range(1 << n):
        ivs = tuple(
            DyadicInterval((mask >> (n - 1 - d)) & 1, 1) for d in range(n)
        )
        bricks.append(DyadicBrick(0, ivs))
    bricks.sort(key=lambda b: b.address_key())
    swapped = list(bricks)
    swapped[0], swapped[-1] = swapped[-1], swapped[0]
    return Element(n, Pattern(n, 1, tuple(bricks)), Pattern(n, 1, tuple(swapped)))


# --- text grammar ---------------------------------------------------------------

_GLETTER_RE = re.compile(
    r"(?:(X|C)(\d+)\.(\d+)|(pi|pibar)(\d+))(\^-1)?$"
)


def parse_group_word(text: str, dim: Optional[int] = None) -> GroupWord:
    """Grammar: X<i>.<d>, C<i>.<d>, pi<i>, pibar<i>, optional ^-1 on X/C."""
    letters: list[GroupLetter] = []
    maxdim = 1
    for pos, tok in enumerate(text.split()):
        m = _GLETTER_RE.match(tok)
        if m is None:
            raise ValueError(f"cannot parse group letter {tok!r} (token {pos})")
        if m.group(1):
            kind, i, d = m.group(1), int(m.group(2)), int(m.group(3))
            sign = -1 if m.group(6) else 1
            letters.append(GroupLetter(kind, i, d, sign))
            maxdim = max(maxdim, d)
        else:
            if m.group(6):
                raise ValueError(f"{tok!r}: pi/pibar are involutions, drop the ^-1 (token {pos})")
            letters.append(GroupLetter(m.group(4), int(m.group(5))))
    n = dim if dim is not None else max(maxdim, 2 if any(l.kind == "C" for l in letters) else 1)
    return GroupWord(n, tuple(letters))


def format_group_word(w: GroupWord) -> str:
    parts = []
    for let in w.letters:
        if let.kind in ("X", "C"):
            s = f"{let.kind}{let.index}.{let.dim}"
            if let.sign < 0:
                s += "^-1"
        else:
            s = f"{let.kind}{let.index}"
        parts.append(s)
    return " ".join(parts)
