"""Exact dyadic geometry: bricks, numbered patterns, and pattern-pair elements.

Everything here is immutable and exact (plain integers for offsets/depths),
so elements of nV are represented without any floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class DyadicInterval:
    """Half-open interval [offset/2^depth, (offset+1)/2^depth) inside [0, 1)."""

    offset: int
    depth: int

    def __post_init__(self) -> None:
        if self.depth < 0 or not 0 <= self.offset < (1 << self.depth):
            raise ValueError(f"invalid dyadic interval ({self.offset}, {self.depth})")

    def halves(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        o, k = self.offset, self.depth
        return DyadicInterval(2 * o, k + 1), DyadicInterval(2 * o + 1, k + 1)

    def contains(self, other: "DyadicInterval") -> bool:
        shift = other.depth - self.depth
        return shift >= 0 and (other.offset >> shift) == self.offset

    def overlaps(self, other: "DyadicInterval") -> bool:
        return self.contains(other) or other.contains(self)

    def bits(self) -> str:
        return format(self.offset, "0{}b".format(self.depth)) if self.depth else ""

    @staticmethod
    def from_bits(bits: str) -> "DyadicInterval":
        return DyadicInterval(int(bits, 2) if bits else 0, len(bits))


@dataclass(frozen=True)
class DyadicBrick:
    """Axis-aligned product of dyadic intervals inside the unit cube S_cube."""

    cube: int
    intervals: tuple[DyadicInterval, ...]

    def __post_init__(self) -> None:
        if self.cube < 0:
            raise ValueError("negative cube index")

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def interval(self, d: int) -> DyadicInterval:
        """Interval along dimension d (1-based)."""
        return self.intervals[d - 1]

    def cut(self, d: int) -> tuple["DyadicBrick", "DyadicBrick"]:
        lo, hi = self.interval(d).halves()
        ivs = self.intervals
        return (
            DyadicBrick(self.cube, ivs[: d - 1] + (lo,) + ivs[d:]),
            DyadicBrick(self.cube, ivs[: d - 1] + (hi,) + ivs[d:]),
        )

    def contains(self, other: "DyadicBrick") -> bool:
        return self.cube == other.cube and all(
            a.contains(b) for a, b in zip(self.intervals, other.intervals)
        )

    def intersect(self, other: "DyadicBrick") -> Optional["DyadicBrick"]:
        """Intersection brick, or None if disjoint.  Laminarity makes this exact."""
        if self.cube != other.cube:
            return None
        out = []
        for a, b in zip(self.intervals, other.intervals):
            if a.contains(b):
                out.append(b)
            elif b.contains(a):
                out.append(a)
            else:
                return None
        return DyadicBrick(self.cube, tuple(out))

    def total_depth(self) -> int:
        return sum(iv.depth for iv in self.intervals)

    def address_key(self) -> tuple:
        """Sort key: cube, then per-dimension address bitstrings."""
        return (self.cube,) + tuple(iv.bits() for iv in self.intervals)


@dataclass(frozen=True)
class Pattern:
    """Numbered partition of the cubes S_0 .. S_{cubes-1} into dyadic bricks.

    The position of a brick in the tuple is its number.
    """

    dim: int
    cubes: int
    bricks: tuple[DyadicBrick, ...]

    def __post_init__(self) -> None:
        if self.dim < 1 or self.cubes < 1:
            raise ValueError("need dim >= 1 and cubes >= 1")
        if len(self.bricks) < self.cubes:
            raise ValueError("fewer bricks than cubes")
        depths = []
        for b in self.bricks:
            if len(b.intervals) != self.dim:
                raise ValueError("brick dimension mismatch")
            if not 0 <= b.cube < self.cubes:
                raise ValueError("brick cube index out of range")
            depths.append(sum(iv.depth for iv in b.intervals))
        big = max(depths)
        # Volume conservation, exactly: sum of 2^(big - depth) must be cubes * 2^big.
        if sum(1 << (big - td) for td in depths) != self.cubes << big:
            raise ValueError("bricks do not fill the cubes (volume mismatch)")
        object.__setattr__(self, "_depth_sig", (len(depths), sum(depths)))

    def __len__(self) -> int:
        return len(self.bricks)

    def validate_disjoint(self) -> None:
        """Full pairwise-disjointness check (quadratic; used by tests)."""
        for i, a in enumerate(self.bricks):
            for b in self.bricks[i + 1 :]:
                if a.intersect(b) is not None:
                    raise ValueError(f"bricks overlap: {a} and {b}")

    def grow(self, cubes: int) -> "Pattern":
        """Extend with whole unit cubes up to the given cube count."""
        if cubes <= self.cubes:
            return self
        extra = tuple(_unit_brick(self.dim, c) for c in range(self.cubes, cubes))
        return Pattern(self.dim, cubes, self.bricks + extra)


def _unit_brick(n: int, cube: int) -> DyadicBrick:
    return DyadicBrick(cube, tuple(DyadicInterval(0, 0) for _ in range(n)))


def pattern_base(n: int, k: int) -> Pattern:
    """The trivial pattern: brick j is the whole cube S_j."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    return Pattern(n, k, tuple(_unit_brick(n, c) for c in range(k)))


def pattern_cut(p: Pattern, i: int, d: int) -> Pattern:
    """Halve brick i across dimension d; the upper half becomes brick i+1."""
    if not 0 <= i < len(p.bricks):
        raise IndexError(f"brick index {i} out of range")
    if not 1 <= d <= p.dim:
        raise ValueError(f"dimension {d} out of range for dim {p.dim}")
    lo, hi = p.bricks[i].cut(d)
    return Pattern(p.dim, p.cubes, p.bricks[:i] + (lo, hi) + p.bricks[i + 1 :])


def pattern_swap(p: Pattern, i: int) -> Pattern:
    """Exchange the numbers i and i+1; geometry unchanged."""
    if not 0 <= i + 1 < len(p.bricks):
        raise IndexError(f"swap index {i} out of range")
    b = p.bricks
    return Pattern(p.dim, p.cubes, b[:i] + (b[i + 1], b[i]) + b[i + 2 :])


def common_refinement(
    a: Pattern, b: Pattern
) -> tuple[Pattern, tuple[int, ...], tuple[int, ...]]:
    """All nonempty pairwise intersections, in lexicographic address order.

    Returns (refined pattern, map to containing brick of a, map to containing
    brick of b).
    """
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if a.cubes != b.cubes:
        raise ValueError("cube count mismatch")
    hits: list[tuple[DyadicBrick, int, int]] = []
    by_cube: dict[int, list[tuple[int, DyadicBrick]]] = {}
    for j, bb in enumerate(b.bricks):
        by_cube.setdefault(bb.cube, []).append((j, bb))
    for i, ab in enumerate(a.bricks):
        a_ivs = ab.intervals
        for j, bb in by_cube.get(ab.cube, ()):
            # inline laminar intersection: per dimension the deeper interval
            # wins when nested, otherwise the bricks are disjoint
            out = []
            for u, v in zip(a_ivs, bb.intervals):
                if u.depth <= v.depth:
                    if (v.offset >> (v.depth - u.depth)) != u.offset:
                        out = None
                        break
                    out.append(v)
                else:
                    if (u.offset >> (u.depth - v.depth)) != v.offset:
                        out = None
                        break
                    out.append(u)
            if out is not None:
                hits.append((DyadicBrick(ab.cube, tuple(out)), i, j))
    big = 0
    for brick, _, _ in hits:
        for iv in brick.intervals:
            if iv.depth > big:
                big = iv.depth
    # integer key with the same order as lexicographic bitstring addresses
    hits.sort(
        key=lambda t: (t[0].cube,)
        + tuple((iv.offset << (big - iv.depth), iv.depth) for iv in t[0].intervals)
    )
    refined = Pattern(a.dim, a.cubes, tuple(h[0] for h in hits))
    return refined, tuple(h[1] for h in hits), tuple(h[2] for h in hits)


def transplant_brick(brick: DyadicBrick, src: DyadicBrick, dst: DyadicBrick) -> DyadicBrick:
    """Map a sub-brick of src onto dst by the coordinate-wise affine bijection."""
    if brick == src:
        return dst
    out = []
    for bi, si, di in zip(brick.intervals, src.intervals, dst.intervals):
        shift = bi.depth - si.depth
        rel = bi.offset - (si.offset << shift)
        out.append(DyadicInterval((di.offset << shift) + rel, di.depth + shift))
    return DyadicBrick(dst.cube, tuple(out))


@dataclass(frozen=True)
class Address:
    """Per-dimension finite prefix addresses into the n-fold Cantor set."""

    bits: tuple[str, ...]

    def __post_init__(self) -> None:
        for s in self.bits:
            if any(c not in "01" for c in s):
                raise ValueError(f"address component {s!r} is not a bitstring")

    @property
    def dim(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class Element:
    """A homeomorphism of the n-fold Cantor set given by a pattern pair.

    Brick j of the domain is sent onto brick j of the range by the
    coordinate-wise affine map.
    """

    dim: int
    domain: Pattern
    range: Pattern

    def __post_init__(self) -> None:
        if self.domain.dim != self.dim or self.range.dim != self.dim:
            raise ValueError("pattern dimension mismatch")
        if self.domain.cubes != 1 or self.range.cubes != 1:
            raise ValueError("element patterns must live on a single cube")
        if len(self.domain.bricks) != len(self.range.bricks):
            raise ValueError("domain and range brick counts differ")


def identity_element(n: int) -> Element:
    base = pattern_base(n, 1)
    return Element(n, base, base)


def element_inverse(g: Element) -> Element:
    return Element(g.dim, g.range, g.domain)


def element_compose(g: Element, h: Element) -> Element:
    """The element 'apply g, then h'."""
    if g.dim != h.dim:
        raise ValueError("dimension mismatch")
    if g.range._depth_sig == h.domain._depth_sig:  # type: ignore[attr-defined]
        # when the two middle patterns share their geometry the refinement is
        # that geometry itself and the maps are index lookups
        index = {b: i for i, b in enumerate(h.domain.bricks)}
        rng = []
        for b in g.range.bricks:
            i = index.get(b)
            if i is None:
                rng = None
                break
            rng.append(h.range.bricks[i])
        if rng is not None:
            return Element(g.dim, g.domain, Pattern(g.dim, 1, tuple(rng)))
    mid, into_g, into_h = common_refinement(g.range, h.domain)
    dom = tuple(
        transplant_brick(r, g.range.bricks[i], g.domain.bricks[i])
        for r, i in zip(mid.bricks, into_g)
    )
    rng = tuple(
        transplant_brick(r, h.domain.bricks[j], h.range.bricks[j])
        for r, j in zip(mid.bricks, into_h)
    )
    return Element(g.dim, Pattern(g.dim, 1, dom), Pattern(g.dim, 1, rng))


def element_refine(g: Element, j: int, d: int) -> Element:
    """Cut domain brick j and its partner range brick across dimension d."""
    return Element(g.dim, pattern_cut(g.domain, j, d), pattern_cut(g.range, j, d))


def element_equal(g: Element, h: Element) -> bool:
    """Semantic equality: refine both domains jointly and compare the images."""
    if g.dim != h.dim:
        raise ValueError("dimension mismatch")
    mid, into_g, into_h = common_refinement(g.domain, h.domain)
    for r, i, j in zip(mid.bricks, into_g, into_h):
        img_g = transplant_brick(r, g.domain.bricks[i], g.range.bricks[i])
        img_h = transplant_brick(r, h.domain.bricks[j], h.range.bricks[j])
        if img_g != img_h:
            return False
    return True


def element_apply(g: Element, a: Address) -> Address:
    """Prefix substitution: locate the domain brick, swap its prefix for the range's."""
    if a.dim != g.dim:
        raise ValueError("address dimension mismatch")
    for j, brick in enumerate(g.domain.bricks):
        ok = True
        for d in range(g.dim):
            prefix = brick.intervals[d].bits()
            if not a.bits[d].startswith(prefix):
                ok = False
                break
        if ok:
            target = g.range.bricks[j]
            out = []
            for d in range(g.dim):
                rest = a.bits[d][brick.intervals[d].depth :]
                out.append(target.intervals[d].bits() + rest)
            return Address(tuple(out))
    raise ValueError("address too shallow to resolve a unique domain brick")


# --- JSON wire format -------------------------------------------------------


def interval_to_json(iv: DyadicInterval) -> dict:
    return {"offset": iv.offset, "depth": iv.depth}


def brick_to_json(b: DyadicBrick) -> dict:
    return {"cube": b.cube, "intervals": [interval_to_json(iv) for iv in b.intervals]}


def pattern_to_json(p: Pattern) -> dict:
    return {"dim": p.dim, "cubes": p.cubes, "bricks": [brick_to_json(b) for b in p.bricks]}


def element_to_json(g: Element) -> dict:
    return {
        "dim": g.dim,
        "domain": pattern_to_json(g.domain),
        "range": pattern_to_json(g.range),
    }


def interval_from_json(obj: dict) -> DyadicInterval:
    return DyadicInterval(int(obj["offset"]), int(obj["depth"]))


def brick_from_json(obj: dict) -> DyadicBrick:
    return DyadicBrick(int(obj["cube"]), tuple(interval_from_json(o) for o in obj["intervals"]))


def pattern_from_json(obj: dict) -> Pattern:
    return Pattern(int(obj["dim"]), int(obj["cubes"]), tuple(brick_from_json(o) for o in obj["bricks"]))


def element_from_json(obj: dict) -> Element:
    return Element(int(obj["dim"]), pattern_from_json(obj["domain"]), pattern_from_json(obj["range"]))
