"""The pattern monoid: words over cuts/swaps, labeled forests, normalization.

A word acts on a pattern leftmost letter first.  Cut(i, d) halves brick i
across dimension d; Swap(i) exchanges the numbers i and i+1.  The relation
system M1..M6 preserves the numbered pattern, and every pattern has a unique
normalized forest; ``normalize_word`` computes the word for it together with
a canonical swap suffix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .patterns import Pattern, pattern_base, pattern_cut, pattern_swap


@dataclass(frozen=True)
class Cut:
    index: int
    dim: int

    def __post_init__(self) -> None:
        if self.index < 0 or self.dim < 1:
            raise ValueError(f"invalid cut letter ({self.index}, {self.dim})")


@dataclass(frozen=True)
class Swap:
    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"invalid swap letter {self.index}")


MonoidLetter = Union[Cut, Swap]


@dataclass(frozen=True)
class MonoidWord:
    dim: int
    letters: tuple[MonoidLetter, ...]

    def __post_init__(self) -> None:
        for let in self.letters:
            if isinstance(let, Cut) and let.dim > self.dim:
                raise ValueError(f"cut dimension {let.dim} exceeds ambient dim {self.dim}")

    def __len__(self) -> int:
        return len(self.letters)


def word_length(w: MonoidWord) -> int:
    """Number of cut letters; invariant under the relations M1..M6."""
    return sum(1 for let in w.letters if isinstance(let, Cut))


def word_to_pattern(w: MonoidWord, k: Optional[int] = None) -> Pattern:
    """Fold the letters over base(n, k), leftmost letter first.

    With k omitted the pattern grows on demand: a letter touching brick i
    extends the cube list until brick i exists.
    """
    grow = k is None
    p = pattern_base(w.dim, 1 if grow else k)
    for let in w.letters:
        need = let.index + (2 if isinstance(let, Swap) else 1)
        if grow and need > len(p.bricks):
            p = p.grow(p.cubes + (need - len(p.bricks)))
        if isinstance(let, Cut):
            p = pattern_cut(p, let.index, let.dim)
        else:
            p = pattern_swap(p, let.index)
    return p


def cubes_needed(w: MonoidWord) -> int:
    """Smallest cube count on which the word acts."""
    k = 1
    leaves = 1
    for let in w.letters:
        need = let.index + (2 if isinstance(let, Swap) else 1)
        if need > leaves:
            k += need - leaves
            leaves = need
        if isinstance(let, Cut):
            leaves += 1
    return k


def words_equal(a: MonoidWord, b: MonoidWord) -> bool:
    """Equality in the monoid: same numbered pattern on a common cube prefix."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    k = max(cubes_needed(a), cubes_needed(b))
    return word_to_pattern(a, k) == word_to_pattern(b, k)


# --- labeled forests ---------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    num: Optional[int] = None


@dataclass(frozen=True)
class Node:
    label: int
    left: "Tree"
    right: "Tree"


Tree = Union[Leaf, Node]


@dataclass(frozen=True)
class LabeledForest:
    dim: int
    trees: tuple[Tree, ...]


def tree_leaves(t: Tree) -> Iterator[Leaf]:
    if isinstance(t, Leaf):
        yield t
    else:
        yield from tree_leaves(t.left)
        yield from tree_leaves(t.right)


def tree_size(t: Tree) -> int:
    """Number of carets."""
    if isinstance(t, Leaf):
        return 0
    return 1 + tree_size(t.left) + tree_size(t.right)


def leaf_count(t: Tree) -> int:
    return tree_size(t) + 1


def strip_numbers(t: Tree) -> Tree:
    if isinstance(t, Leaf):
        return Leaf(None)
    return Node(t.label, strip_numbers(t.left), strip_numbers(t.right))


def forest_leaf_numbers(f: LabeledForest) -> tuple[int, ...]:
    out = []
    for t in f.trees:
        out.extend(leaf.num for leaf in tree_leaves(t))
    return tuple(out)


def number_forest_canonically(f: LabeledForest) -> LabeledForest:
    """Number the leaves 0.. in left-right order."""
    counter = iter(range(sum(leaf_count(t) for t in f.trees)))

    def renum(t: Tree) -> Tree:
        if isinstance(t, Leaf):
            return Leaf(next(counter))
        return Node(t.label, renum(t.left), renum(t.right))

    return LabeledForest(f.dim, tuple(renum(t) for t in f.trees))


def word_to_forest(w: MonoidWord) -> LabeledForest:
    """Build the numbered labeled forest of a word, growing trees on demand."""
    trees: list[Tree] = [Leaf(0)]
    leaves = 1

    def grow_to(need: int) -> None:
        nonlocal leaves
        while leaves < need:
            trees.append(Leaf(leaves))
            leaves += 1

    def cut_leaf(t: Tree, i: int, d: int) -> Tree:
        if isinstance(t, Leaf):
            if t.num == i:
                return Node(d, Leaf(i), Leaf(i + 1))
            return Leaf(t.num + 1) if t.num > i else t
        return Node(t.label, cut_leaf(t.left, i, d), cut_leaf(t.right, i, d))

    def swap_leaf(t: Tree, i: int) -> Tree:
        if isinstance(t, Leaf):
            if t.num == i:
                return Leaf(i + 1)
            if t.num == i + 1:
                return Leaf(i)
            return t
        return Node(t.label, swap_leaf(t.left, i), swap_leaf(t.right, i))

    for let in w.letters:
        if isinstance(let, Cut):
            grow_to(let.index + 1)
            trees[:] = [cut_leaf(t, let.index, let.dim) for t in trees]
            leaves += 1
        else:
            grow_to(let.index + 2)
            trees[:] = [swap_leaf(t, let.index) for t in trees]
    return LabeledForest(w.dim, tuple(trees))


def forest_pattern(f: LabeledForest) -> Pattern:
    """The numbered pattern a forest stands for."""
    from .patterns import DyadicBrick, DyadicInterval

    total = sum(leaf_count(t) for t in f.trees)
    bricks: list[Optional[DyadicBrick]] = [None] * total

    def walk(t: Tree, brick) -> None:
        if isinstance(t, Leaf):
            if t.num is None:
                raise ValueError("forest is not numbered")
            bricks[t.num] = brick
            return
        lo, hi = brick.cut(t.label)
        walk(t.left, lo)
        walk(t.right, hi)

    for cube, t in enumerate(f.trees):
        walk(t, DyadicBrick(cube, tuple(DyadicInterval(0, 0) for _ in range(f.dim))))
    if any(b is None for b in bricks):
        raise ValueError("leaf numbering is not a bijection onto 0..count-1")
    return Pattern(f.dim, len(f.trees), tuple(bricks))


VertexOrder = tuple[tuple[int, tuple[int, ...]], ...]


def interior_vertices(f: LabeledForest) -> VertexOrder:
    """Canonical vertex order: trees left to right, each root, right, then left."""
    out: list[tuple[int, tuple[int, ...]]] = []

    def walk(t: Tree, ti: int, path: tuple[int, ...]) -> None:
        if isinstance(t, Leaf):
            return
        out.append((ti, path))
        walk(t.right, ti, path + (1,))
        walk(t.left, ti, path + (0,))

    for ti, t in enumerate(f.trees):
        walk(t, ti, ())
    return tuple(out)


def subtree_at(f: LabeledForest, ti: int, path: tuple[int, ...]) -> Tree:
    t = f.trees[ti]
    for step in path:
        t = t.right if step else t.left
    return t


def forest_to_word(f: LabeledForest, order: Optional[VertexOrder] = None) -> MonoidWord:
    """The unique cut word realizing the forest in the given ancestry order."""
    if order is None:
        order = interior_vertices(f)
    vertices = set(interior_vertices(f))
    if set(order) != vertices or len(order) != len(vertices):
        raise ValueError("order must list every interior vertex exactly once")
    built: set[tuple[int, tuple[int, ...]]] = set()
    letters: list[MonoidLetter] = []
    for ti, path in order:
        if path and (ti, path[:-1]) not in built:
            raise ValueError("vertex order does not respect the ancestor relation")
        letters.append(Cut(_frontier_index(f, built, ti, path), _label(f, ti, path)))
        built.add((ti, path))
    return MonoidWord(f.dim, tuple(letters))


def _label(f: LabeledForest, ti: int, path: tuple[int, ...]) -> int:
    node = subtree_at(f, ti, path)
    assert isinstance(node, Node)
    return node.label


def _frontier_index(
    f: LabeledForest, built: set, ti: int, target: tuple[int, ...]
) -> int:
    """Leaf number the target vertex occupies in the partially built forest."""
    count = 0

    def walk(t: Tree, tree_i: int, path: tuple[int, ...]) -> bool:
        nonlocal count
        if tree_i == ti and path == target:
            return True
        if isinstance(t, Node) and (tree_i, path) in built:
            return walk(t.left, tree_i, path + (0,)) or walk(t.right, tree_i, path + (1,))
        count += 1
        return False

    for tree_i, t in enumerate(f.trees):
        if walk(t, tree_i, ()):
            return count
    raise ValueError("target vertex is not on the frontier")


# --- fully divided / normalized ----------------------------------------------


def fully_divided(t: Tree, d: int) -> bool:
    """True iff the root is labeled d, or both subtrees are fully divided across d.

    A single leaf is not fully divided across any dimension.
    """
    if isinstance(t, Leaf):
        return False
    if t.label == d:
        return True
    return fully_divided(t.left, d) and fully_divided(t.right, d)


def divided_dimensions(t: Tree) -> frozenset[int]:
    """All d such that the subtree is fully divided across d."""
    if isinstance(t, Leaf):
        return frozenset()
    return frozenset({t.label}) | (divided_dimensions(t.left) & divided_dimensions(t.right))


def tree_is_normalized(t: Tree) -> bool:
    if isinstance(t, Leaf):
        return True
    if min(divided_dimensions(t)) < t.label:
        return False
    return tree_is_normalized(t.left) and tree_is_normalized(t.right)


def is_normalized(f: LabeledForest) -> bool:
    """No vertex labeled l sits over a subtree fully divided across some d < l."""
    return all(tree_is_normalized(t) for t in f.trees)


def pull_to_root(t: Tree, d: int) -> Tree:
    """Rewrite a subtree fully divided across d so its root is labeled d.

    Pure tree surgery (the cross relation applied recursively); pattern
    geometry is preserved, numbering is recovered separately.
    """
    if isinstance(t, Leaf) or not fully_divided(t, d):
        raise ValueError(f"subtree is not fully divided across dimension {d}")
    if t.label == d:
        return t
    lp = pull_to_root(t.left, d)
    rp = pull_to_root(t.right, d)
    assert isinstance(lp, Node) and isinstance(rp, Node)
    return Node(d, Node(t.label, lp.left, rp.left), Node(t.label, lp.right, rp.right))


def normalize_tree(t: Tree) -> Tree:
    """The unique normalized tree for the same (unnumbered) pattern."""
    if isinstance(t, Leaf):
        return t
    cur = Node(t.label, normalize_tree(t.left), normalize_tree(t.right))
    dmin = min(divided_dimensions(cur))
    if dmin == cur.label:
        return cur
    lp = pull_to_root(cur.left, dmin)
    rp = pull_to_root(cur.right, dmin)
    assert isinstance(lp, Node) and isinstance(rp, Node)
    return Node(
        dmin,
        normalize_tree(Node(cur.label, lp.left, rp.left)),
        normalize_tree(Node(cur.label, lp.right, rp.right)),
    )


def normalize_forest_structure(f: LabeledForest) -> LabeledForest:
    return LabeledForest(f.dim, tuple(normalize_tree(strip_numbers(t)) for t in f.trees))


# --- permutations as swap words ----------------------------------------------


def permutation_of_word(u: Iterable[Swap], size: int) -> tuple[int, ...]:
    """tau with final_numbering = initial_numbering o tau, letters left to right."""
    tau = list(range(size))
    for let in u:
        i = let.index
        tau[i], tau[i + 1] = tau[i + 1], tau[i]
    return tuple(tau)


def swap_word_for_permutation(tau: tuple[int, ...]) -> tuple[Swap, ...]:
    """Lexicographically least reduced swap word realizing tau."""
    tau = list(tau)
    out: list[Swap] = []
    inv = [0] * len(tau)
    for pos, v in enumerate(tau):
        inv[v] = pos
    while True:
        for i in range(len(tau) - 1):
            if inv[i] > inv[i + 1]:
                out.append(Swap(i))
                inv[i], inv[i + 1] = inv[i + 1], inv[i]
                break
        else:
            return tuple(out)


def match_permutation(canonical: Pattern, target: Pattern) -> tuple[int, ...]:
    """tau with canonical-number(target brick j) = tau(j); same geometry required."""
    index = {b: i for i, b in enumerate(canonical.bricks)}
    try:
        return tuple(index[b] for b in target.bricks)
    except KeyError:
        raise ValueError("patterns do not share the same brick geometry") from None


def normalize_word(w: MonoidWord) -> MonoidWord:
    """A word equal to w in the monoid, shaped cuts-then-swaps with the cut
    prefix realizing the unique normalized forest and a canonical swap suffix."""
    target = word_to_pattern(w)
    forest = normalize_forest_structure(word_to_forest(w))
    cut_word = forest_to_word(number_forest_canonically(forest))
    tau = match_permutation(word_to_pattern(cut_word, target.cubes), target)
    return MonoidWord(w.dim, cut_word.letters + swap_word_for_permutation(tau))


def pull_up_dimension(w: MonoidWord, i: int, d: int) -> MonoidWord:
    """A word equal to w that begins with Cut(i, d).

    Requires the hypercube S_i of w's pattern to be fully divided across d.
    Length is preserved.
    """
    f = word_to_forest(w)
    if i >= len(f.trees):
        raise IndexError(f"word does not touch cube {i}")
    tree = strip_numbers(f.trees[i])
    if not fully_divided(tree, d):
        raise ValueError(f"cube {i} is not fully divided across dimension {d}")
    pulled = pull_to_root(tree, d)
    new_trees = tuple(
        pulled if ti == i else strip_numbers(t) for ti, t in enumerate(f.trees)
    )
    # Emit tree i first so the word starts with Cut(i, d).
    order = tuple(v for v in interior_vertices(LabeledForest(w.dim, new_trees)) if v[0] == i)
    order += tuple(v for v in interior_vertices(LabeledForest(w.dim, new_trees)) if v[0] != i)
    cut_word = forest_to_word(number_forest_canonically(LabeledForest(w.dim, new_trees)), order)
    target = word_to_pattern(w)
    tau = match_permutation(word_to_pattern(cut_word, target.cubes), target)
    return MonoidWord(w.dim, cut_word.letters + swap_word_for_permutation(tau))


# --- the relation system ------------------------------------------------------

RELATION_NAMES = ("M1", "M2", "M3", "M4", "M5a", "M5b", "M5c", "M5d", "M6")


def _match_m1_lhs(a, b):
    return (
        isinstance(a, Cut) and isinstance(b, Cut) and b.index < a.index
    )


def apply_relation(w: MonoidWord, rule: str, pos: int, forward: bool = True) -> MonoidWord:
    """Apply one M1..M6 rewrite at the given position.

    ``forward`` rewrites left side to right side as the relations are stated.
    Raises ValueError when the side does not match at pos.
    """
    if rule not in RELATION_NAMES:
        raise ValueError(f"unknown relation {rule!r}")
    lets = w.letters

    def fail():
        side = "left" if forward else "right"
        raise ValueError(f"relation {rule} ({side} side) does not match at position {pos}")

    def take(k):
        if pos < 0 or pos + k > len(lets):
            fail()
        return lets[pos : pos + k]

    def put(n_old, new):
        return MonoidWord(w.dim, lets[:pos] + tuple(new) + lets[pos + n_old :])

    if rule == "M1":
        if forward:
            a, b = take(2)
            if not (isinstance(a, Cut) and isinstance(b, Cut) and b.index < a.index):
                fail()
            return put(2, [Cut(b.index, b.dim), Cut(a.index + 1, a.dim)])
        a, b = take(2)
        if not (isinstance(a, Cut) and isinstance(b, Cut) and b.index >= a.index + 2):
            fail()
        return put(2, [Cut(b.index - 1, b.dim), Cut(a.index, a.dim)])
    if rule == "M2":
        if forward:
            a, b = take(2)
            if not (isinstance(a, Swap) and isinstance(b, Swap) and a.index == b.index):
                fail()
            return put(2, [])
        # backward: insert sigma_pos twice is ambiguous; require explicit match of empty
        raise ValueError("M2 backward needs an index; insert swaps explicitly instead")
    if rule == "M3":
        a, b = take(2)
        if not (isinstance(a, Swap) and isinstance(b, Swap) and abs(a.index - b.index) >= 2):
            fail()
        return put(2, [b, a])
    if rule == "M4":
        a, b, c = take(3)
        if not (
            isinstance(a, Swap)
            and isinstance(b, Swap)
            and isinstance(c, Swap)
            and a.index == c.index
            and b.index == a.index + (1 if forward else -1)
        ):
            fail()
        return put(3, [b, a, b])
    if rule == "M5a":
        if forward:
            a, b = take(2)
            if not (isinstance(a, Swap) and isinstance(b, Cut) and b.index < a.index):
                fail()
            return put(2, [b, Swap(a.index + 1)])
        a, b = take(2)
        if not (isinstance(a, Cut) and isinstance(b, Swap) and b.index >= a.index + 2):
            fail()
        return put(2, [Swap(b.index - 1), a])
    if rule == "M5b":
        if forward:
            a, b = take(2)
            if not (isinstance(a, Swap) and isinstance(b, Cut) and b.index == a.index):
                fail()
            return put(2, [Cut(a.index + 1, b.dim), Swap(a.index), Swap(a.index + 1)])
        a, b, c = take(3)
        if not (
            isinstance(a, Cut)
            and isinstance(b, Swap)
            and isinstance(c, Swap)
            and a.index == b.index + 1
            and c.index == b.index + 1
        ):
            fail()
        return put(3, [Swap(b.index), Cut(b.index, a.dim)])
    if rule == "M5c":
        if forward:
            a, b = take(2)
            if not (isinstance(a, Swap) and isinstance(b, Cut) and b.index == a.index + 1):
                fail()
            return put(2, [Cut(a.index, b.dim), Swap(a.index + 1), Swap(a.index)])
        a, b, c = take(3)
        if not (
            isinstance(a, Cut)
            and isinstance(b, Swap)
            and isinstance(c, Swap)
            and b.index == a.index + 1
            and c.index == a.index
        ):
            fail()
        return put(3, [Swap(a.index), Cut(a.index + 1, a.dim)])
    if rule == "M5d":
        a, b = take(2)
        if forward:
            if not (isinstance(a, Swap) and isinstance(b, Cut) and b.index > a.index + 1):
                fail()
            return put(2, [b, a])
        if not (isinstance(a, Cut) and isinstance(b, Swap) and a.index > b.index + 1):
            fail()
        return put(2, [b, a])
    # M6
    if forward:
        a, b, c = take(3)
        if not (
            isinstance(a, Cut)
            and isinstance(b, Cut)
            and isinstance(c, Cut)
            and b.index == a.index + 1
            and c.index == a.index
            and b.dim == c.dim
            and b.dim != a.dim
        ):
            fail()
        i, d, dp = a.index, a.dim, b.dim
        return put(3, [Cut(i, dp), Cut(i + 1, d), Cut(i, d), Swap(i + 1)])
    a, b, c, s = take(4)
    if not (
        isinstance(a, Cut)
        and isinstance(b, Cut)
        and isinstance(c, Cut)
        and isinstance(s, Swap)
        and b.index == a.index + 1
        and c.index == a.index
        and s.index == a.index + 1
        and b.dim == c.dim
        and b.dim != a.dim
    ):
        fail()
    i, dp, d = a.index, a.dim, b.dim
    return put(4, [Cut(i, d), Cut(i + 1, dp), Cut(i, dp)])


def monoid_relation_instance(
    rule: str, n: int, **params: int
) -> tuple[MonoidWord, MonoidWord]:
    """Both sides of an M1..M6 instance as words."""

    def word(*letters):
        return MonoidWord(n, tuple(letters))

    if rule == "M1":
        i, j, d, dp = params["i"], params["j"], params["d"], params["dp"]
        if not i < j:
            raise ValueError("M1 needs i < j")
        return word(Cut(j, dp), Cut(i, d)), word(Cut(i, d), Cut(j + 1, dp))
    if rule == "M2":
        i = params["i"]
        return word(Swap(i), Swap(i)), word()
    if rule == "M3":
        i, j = params["i"], params["j"]
        if abs(i - j) < 2:
            raise ValueError("M3 needs |i - j| >= 2")
        return word(Swap(i), Swap(j)), word(Swap(j), Swap(i))
    if rule == "M4":
        i = params["i"]
        return (
            word(Swap(i), Swap(i + 1), Swap(i)),
            word(Swap(i + 1), Swap(i), Swap(i + 1)),
        )
    if rule == "M5a":
        i, j, d = params["i"], params["j"], params["d"]
        if not i < j:
            raise ValueError("M5a needs i < j")
        return word(Swap(j), Cut(i, d)), word(Cut(i, d), Swap(j + 1))
    if rule == "M5b":
        i, d = params["i"], params["d"]
        return word(Swap(i), Cut(i, d)), word(Cut(i + 1, d), Swap(i), Swap(i + 1))
    if rule == "M5c":
        j, d = params["j"], params["d"]
        return word(Swap(j), Cut(j + 1, d)), word(Cut(j, d), Swap(j + 1), Swap(j))
    if rule == "M5d":
        i, j, d = params["i"], params["j"], params["d"]
        if not i > j + 1:
            raise ValueError("M5d needs i > j + 1")
        return word(Swap(j), Cut(i, d)), word(Cut(i, d), Swap(j))
    if rule == "M6":
        i, d, dp = params["i"], params["d"], params["dp"]
        if d == dp:
            raise ValueError("M6 needs d != d'")
        return (
            word(Cut(i, d), Cut(i + 1, dp), Cut(i, dp)),
            word(Cut(i, dp), Cut(i + 1, d), Cut(i, d), Swap(i + 1)),
        )
    raise ValueError(f"unknown relation {rule!r}")


# --- text grammar and forest JSON ---------------------------------------------

_CUT_RE = re.compile(r"s(\d+)\.(\d+)$")
_SWAP_RE = re.compile(r"sig(\d+)$")


def parse_monoid_word(text: str, dim: Optional[int] = None) -> MonoidWord:
    """Grammar: ``s<i>.<d>`` and ``sig<i>``, whitespace separated."""
    letters: list[MonoidLetter] = []
    maxdim = 1
    for pos, tok in enumerate(text.split()):
        m = _CUT_RE.match(tok)
        if m:
            i, d = int(m.group(1)), int(m.group(2))
            letters.append(Cut(i, d))
            maxdim = max(maxdim, d)
            continue
        m = _SWAP_RE.match(tok)
        if m:
            letters.append(Swap(int(m.group(1))))
            continue
        raise ValueError(f"cannot parse monoid letter {tok!r} (token {pos})")
    return MonoidWord(dim if dim is not None else maxdim, tuple(letters))


def format_monoid_word(w: MonoidWord) -> str:
    parts = []
    for let in w.letters:
        if isinstance(let, Cut):
            parts.append(f"s{let.index}.{let.dim}")
        else:
            parts.append(f"sig{let.index}")
    return " ".join(parts)


def tree_to_json(t: Tree) -> dict:
    if isinstance(t, Leaf):
        return {"num": t.num}
    return {"label": t.label, "left": tree_to_json(t.left), "right": tree_to_json(t.right)}


def forest_to_json(f: LabeledForest) -> dict:
    return {"dim": f.dim, "trees": [tree_to_json(t) for t in f.trees]}


def tree_from_json(obj: dict) -> Tree:
    if "label" in obj:
        return Node(int(obj["label"]), tree_from_json(obj["left"]), tree_from_json(obj["right"]))
    num = obj.get("num")
    return Leaf(None if num is None else int(num))


def forest_from_json(obj: dict) -> LabeledForest:
    return LabeledForest(int(obj["dim"]), tuple(tree_from_json(t) for t in obj["trees"]))
