"""Finite presentations of the pattern-fraction group and of nV, their
semantic verification, and abelianization by integer Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .monoid import Cut, MonoidWord, Swap, words_equal
from .patterns import element_equal
from .group import (
    C,
    GroupLetter,
    GroupWord,
    Pi,
    PiBar,
    X,
    relation_instance,
    word_evaluate,
)

MonoidSigned = tuple[object, int]  # (Cut | Swap, +-1)


@dataclass(frozen=True)
class Relator:
    family: str
    params: tuple[tuple[str, int], ...]
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class Presentation:
    kind: str  # "monoid" | "nV" | "omegaV"
    n: int  # dimension, or the dimension bound for omegaV
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]
    warnings: tuple[str, ...] = ()


def _rel(family: str, params: dict, lhs, rhs) -> Relator:
    return Relator(family, tuple(sorted(params.items())), tuple(lhs), tuple(rhs))


def _s(i: int, d: int, sign: int = 1) -> MonoidSigned:
    return (Cut(i, d), sign)


def _sig(i: int) -> MonoidSigned:
    return (Swap(i), 1)


def present_monoid_group(n: int) -> Presentation:
    """The 2n+2 generator, 5n^2+7n+6 relator presentation of the group of
    fractions of the pattern monoid."""
    if n < 1:
        raise ValueError("need n >= 1")
    warnings = ()
    if n == 1:
        warnings = (
            "n=1 degenerates: every family with a dimension >= 2 is empty, "
            "so the relator count formula does not apply",
        )
    gens = tuple(f"s{i}.{d}" for i in (0, 1) for d in range(1, n + 1)) + ("sig0", "sig1")
    rels: list[Relator] = []
    # M1, conjugator dimension 1:  s11^-1 s_{1+k,d'} s11 = s_{2+k,d'}
    for k in (1, 2):
        for dp in range(1, n + 1):
            rels.append(
                _rel("M1", dict(i=1, k=k, d=1, dp=dp),
                     [_s(1, 1, -1), _s(1 + k, dp), _s(1, 1)], [_s(2 + k, dp)])
            )
    # M1, conjugator dimension >= 2
    for i in (0, 1):
        for k in (1, 2):
            for d in range(2, n + 1):
                for dp in range(1, n + 1):
                    rels.append(
                        _rel("M1", dict(i=i, k=k, d=d, dp=dp),
                             [_s(i, d, -1), _s(i + k, dp), _s(i, d)], [_s(i + k + 1, dp)])
                    )
    for i in (0, 1):
        rels.append(_rel("M2", dict(i=i), [_sig(i), _sig(i)], []))
    for i in (0, 1):
        for k in (2, 3):
            rels.append(_rel("M3", dict(i=i, k=k),
                             [_sig(i), _sig(i + k)], [_sig(i + k), _sig(i)]))
    for i in (0, 1):
        rels.append(_rel("M4", dict(i=i),
                         [_sig(i), _sig(i + 1), _sig(i)],
                         [_sig(i + 1), _sig(i), _sig(i + 1)]))
    # M5a, dimension 1:
    for k in (1, 2):
        rels.append(_rel("M5a", dict(i=1, k=k, d=1),
                         [_sig(k + 1), _s(1, 1)], [_s(1, 1), _sig(k + 2)]))
    for i in (0, 1):
        for k in (1, 2):
            for d in range(2, n + 1):
                rels.append(_rel("M5a", dict(i=i, k=k, d=d),
                                 [_sig(i + k), _s(i, d)], [_s(i, d), _sig(i + k + 1)]))
    for i in (0, 1):
        for d in range(1, n + 1):
            rels.append(_rel("M5bc", dict(i=i, d=d),
                             [_sig(i), _s(i, d)],
                             [_s(i + 1, d), _sig(i), _sig(i + 1)]))
    for i in (0, 1):
        for k in (2, 3):
            for d in range(1, n + 1):
                rels.append(_rel("M5d", dict(i=i, k=k, d=d),
                                 [_sig(i), _s(i + k, d)], [_s(i + k, d), _sig(i)]))
    for i in (0, 1):
        for d in range(1, n + 1):
            for dp in range(d + 1, n + 1):
                rels.append(_rel("M6", dict(i=i, d=d, dp=dp),
                                 [_s(i, d), _s(i + 1, dp), _s(i, dp)],
                                 [_s(i, dp), _s(i + 1, d), _s(i, d), _sig(i + 1)]))
    return Presentation("monoid", n, gens, tuple(rels), warnings)


def _image(letters: Iterable[MonoidSigned]) -> tuple[GroupLetter, ...]:
    """The homomorphism cut -> X, swap -> pi applied letterwise."""
    out = []
    for let, sign in letters:
        if isinstance(let, Cut):
            out.append(X(let.index, let.dim, sign))
        else:
            out.append(Pi(let.index))
    return tuple(out)


def present_nV(n: int) -> Presentation:
    """The 2n+4 generator, 10n^2+10n+10 relator presentation of nV."""
    if n < 1:
        raise ValueError("need n >= 1")
    warnings = ()
    if n == 1:
        warnings = (
            "n=1 degenerates: every family with a dimension >= 2 is empty, "
            "so the relator count formula does not apply",
        )
    gens = tuple(f"X{i}.{d}" for i in (0, 1) for d in range(1, n + 1)) + (
        "pi0", "pi1", "pibar0", "pibar1",
    )
    rels: list[Relator] = []
    for r in present_monoid_group(n).relators:
        rels.append(Relator("hom(%s)" % r.family, r.params, _image(r.lhs), _image(r.rhs)))
    # (5)
    for k in (1, 2):
        rels.append(_rel("5", dict(m=1, k=k, d=1),
                         [PiBar(k + 1), X(1, 1)], [X(1, 1), PiBar(k + 2)]))
    for m in (0, 1):
        for k in (1, 2):
            for d in range(2, n + 1):
                rels.append(_rel("5", dict(m=m, k=k, d=d),
                                 [PiBar(m + k), X(m, d)], [X(m, d), PiBar(m + k + 1)]))
    for m in (0, 1):
        for k in (2, 3):
            rels.append(_rel("10", dict(m=m, k=k),
                             [PiBar(m + k), Pi(m)], [Pi(m), PiBar(m + k)]))
    for m in (0, 1):
        rels.append(_rel("11", dict(m=m),
                         [Pi(m), PiBar(m + 1), Pi(m)],
                         [PiBar(m + 1), Pi(m), PiBar(m + 1)]))
    for m in (0, 1):
        rels.append(_rel("13", dict(m=m), [PiBar(m), PiBar(m)], []))
    for m in (0, 1):
        rels.append(_rel("6", dict(m=m), [PiBar(m), X(m, 1)], [Pi(m), PiBar(m + 1)]))
    for m in (0, 1):
        for d in range(2, n + 1):
            rels.append(_rel("14", dict(m=m, d=d),
                             [PiBar(m), X(m, d)], [C(m + 1, d), Pi(m), PiBar(m + 1)]))
    # (15)
    for k in (1, 2):
        for d in range(2, n + 1):
            rels.append(_rel("15", dict(m=1, k=k, d=d, dp=1),
                             [C(k + 1, d), X(1, 1)], [X(1, 1), C(k + 2, d)]))
    for m in (0, 1):
        for k in (1, 2):
            for d in range(2, n + 1):
                for dp in range(2, n + 1):
                    rels.append(_rel("15", dict(m=m, k=k, d=d, dp=dp),
                                     [C(m + k, d), X(m, dp)], [X(m, dp), C(m + k + 1, d)]))
    for m in (0, 1):
        for d in range(2, n + 1):
            rels.append(_rel("16", dict(m=m, d=d),
                             [C(m, d), X(m, 1)], [X(m, d), C(m + 2, d), Pi(m + 1)]))
    for m in (0, 1):
        for k in (2, 3):
            for d in range(2, n + 1):
                rels.append(_rel("17", dict(m=m, k=k, d=d),
                                 [Pi(m), C(m + k, d)], [C(m + k, d), Pi(m)]))
    for m in (0, 1):
        for d in range(2, n + 1):
            for dp in range(2, d):
                rels.append(_rel("18", dict(m=m, d=d, dp=dp),
                                 [C(m, d), X(m, dp), C(m + 2, dp)],
                                 [C(m, dp), X(m, d), C(m + 2, d), Pi(m + 1)]))
    return Presentation("nV", n, gens, tuple(rels), warnings)


def present_omegaV(d_max: int) -> Presentation:
    """Truncation of the infinite presentation of the ascending union: the nV
    tables with dimension parameters ranging over 1..d_max."""
    if d_max < 2:
        raise ValueError("need d_max >= 2")
    p = present_nV(d_max)
    return Presentation(
        "omegaV",
        d_max,
        p.generators,
        p.relators,
        ("truncation of the infinite presentation at dimension bound %d" % d_max,),
    )


def baker_expansion(m: int, d: int, sign: int) -> tuple[GroupLetter, ...]:
    """C_{m,d} written over the X/pi/pibar generating set."""
    word = (PiBar(m), X(m, d), PiBar(m + 1), Pi(m), X(m, d), Pi(m + 1), X(m, 1, -1))
    if sign == 1:
        return word
    return tuple(let.inverse() for let in reversed(word))


def expand_bakers(letters: Iterable[GroupLetter]) -> tuple[GroupLetter, ...]:
    out: list[GroupLetter] = []
    for let in letters:
        if let.kind == "C":
            out.extend(baker_expansion(let.index, let.dim, let.sign))
        else:
            out.append(let)
    return tuple(out)


# --- verification ----------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _positivize(lhs: tuple, rhs: tuple) -> tuple[list, list]:
    """Rearrange a monoid-group relator into an equality of positive words."""
    left = list(lhs)
    right = list(rhs)
    while left and left[0][1] < 0:
        lead = left.pop(0)
        right.insert(0, (lead[0], 1))
    while left and left[-1][1] < 0:
        trail = left.pop()
        right.append((trail[0], 1))
    if any(s < 0 for _, s in left + right):
        raise ValueError("relator has an inner inverse; cannot positivize")
    return left, right


def _monoid_relator_holds(r: Relator, n: int) -> bool:
    left, right = _positivize(r.lhs, r.rhs)
    wl = MonoidWord(n, tuple(l for l, _ in left))
    wr = MonoidWord(n, tuple(l for l, _ in right))
    return words_equal(wl, wr)


def _group_relator_holds(r: Relator, n: int) -> bool:
    wl = GroupWord(n, tuple(r.lhs))
    wr = GroupWord(n, tuple(r.rhs))
    return element_equal(word_evaluate(wl), word_evaluate(wr))


def verify_presentation(p: Presentation) -> VerificationReport:
    """Semantically check every relator; failures are reported, not raised."""
    failures = []
    for r in p.relators:
        holds = (
            _monoid_relator_holds(r, p.n)
            if p.kind == "monoid"
            else _group_relator_holds(r, p.n)
        )
        if not holds:
            failures.append(f"{r.family}{dict(r.params)}")
    return VerificationReport(len(p.relators), tuple(failures))


def family_instances(family: str, n: int, bound: int):
    """All parameter dicts for a family with indices <= bound, dims <= n."""
    rng = range(bound + 1)
    dims = range(1, n + 1)
    dims2 = range(2, n + 1)
    out = []
    if family == "1":
        out = [dict(q=q, m=m, d=d, dp=dp) for q in rng for m in rng if m < q
               for d in dims for dp in dims]
    elif family == "2":
        out = [dict(q=q, m=m, d=d) for q in rng for m in rng if m < q for d in dims]
    elif family == "3":
        out = [dict(q=q, d=d) for q in rng for d in dims]
    elif family == "4":
        out = [dict(q=q, m=m, d=d) for q in rng for m in rng if m > q + 1 for d in dims]
    elif family == "5":
        out = [dict(q=q, m=m, d=d) for q in rng for m in rng if m < q for d in dims]
    elif family == "6":
        out = [dict(m=m) for m in rng]
    elif family == "7":
        out = [dict(m=m, d=d, dp=dp) for m in rng for d in dims for dp in dims if d != dp]
    elif family == "8":
        out = [dict(q=q, m=m) for q in rng for m in rng if abs(m - q) > 2]
    elif family == "9":
        out = [dict(m=m) for m in rng]
    elif family == "10":
        out = [dict(q=q, m=m) for q in rng for m in rng if q >= m + 2]
    elif family == "11":
        out = [dict(m=m) for m in rng]
    elif family == "12":
        out = [dict(m=m) for m in rng]
    elif family == "13":
        out = [dict(m=m) for m in rng]
    elif family == "14":
        out = [dict(m=m, d=d) for m in rng for d in dims2]
    elif family == "15":
        out = [dict(q=q, m=m, d=d, dp=dp) for q in rng for m in rng if m < q
               for d in dims2 for dp in dims]
    elif family == "16":
        out = [dict(m=m, d=d) for m in rng for d in dims2]
    elif family == "17":
        out = [dict(q=q, m=m, d=d) for q in rng for m in rng if m > q + 1 for d in dims2]
    elif family == "18":
        out = [dict(m=m, d=d, dp=dp) for m in rng for d in dims2 for dp in dims2 if dp < d]
    elif family == "M1":
        out = [dict(i=i, j=j, d=d, dp=dp) for i in rng for j in rng if i < j
               for d in dims for dp in dims]
    elif family == "M2":
        out = [dict(i=i) for i in rng]
    elif family == "M3":
        out = [dict(i=i, j=j) for i in rng for j in rng if abs(i - j) >= 2]
    elif family == "M4":
        out = [dict(i=i) for i in rng]
    elif family == "M5a":
        out = [dict(i=i, j=j, d=d) for i in rng for j in rng if i < j for d in dims]
    elif family == "M5b":
        out = [dict(i=i, d=d) for i in rng for d in dims]
    elif family == "M5c":
        out = [dict(j=j, d=d) for j in rng for d in dims]
    elif family == "M5d":
        out = [dict(i=i, j=j, d=d) for i in rng for j in rng if i > j + 1 for d in dims]
    elif family == "M6":
        out = [dict(i=i, d=d, dp=dp) for i in rng for d in dims for dp in dims if d != dp]
    else:
        raise ValueError(f"unknown family {family!r}")
    return out


ALL_FAMILIES = tuple(str(k) for k in range(1, 19)) + (
    "M1", "M2", "M3", "M4", "M5a", "M5b", "M5c", "M5d", "M6",
)


def verify_families(n: int, bound: int, families: Optional[Iterable[str]] = None) -> tuple[VerificationReport, dict]:
    """Exhaustive semantic check of the relation families over small indices.

    Returns the report plus a per-family instance count.
    """
    if bound < 1:
        raise ValueError("need bound >= 1")
    failures = []
    counts: dict[str, int] = {}
    checked = 0
    for family in families if families is not None else ALL_FAMILIES:
        insts = family_instances(family, n, bound)
        counts[family] = len(insts)
        for params in insts:
            lhs, rhs = relation_instance(family, n, **params)
            if family.startswith("M"):
                holds = words_equal(lhs, rhs)
            else:
                holds = element_equal(word_evaluate(lhs), word_evaluate(rhs))
            checked += 1
            if not holds:
                failures.append(f"({family}){params}")
    return VerificationReport(checked, tuple(failures)), counts


# --- abelianization ----------------------------------------------------------------


def smith_normal_form(mat: list[list[int]]) -> list[int]:
    """Nonzero elementary divisors (a divisibility chain) of an integer matrix."""
    A = [list(map(int, row)) for row in mat]
    if not A or not A[0]:
        return []
    rows, cols = len(A), len(A[0])
    divisors: list[int] = []
    t = 0
    while t < min(rows, cols):
        if not _clear_pivot(A, t):
            break
        p = A[t][t]
        offender = None
        for i in range(t + 1, rows):
            if any(A[i][j] % p for j in range(t + 1, cols)):
                offender = i
                break
        if offender is not None:
            for j in range(t, cols):
                A[t][j] += A[offender][j]
            continue
        divisors.append(abs(p))
        t += 1
    return divisors


def _clear_pivot(A: list[list[int]], t: int) -> bool:
    rows, cols = len(A), len(A[0])
    while True:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            return False
        _, i0, j0 = best
        A[t], A[i0] = A[i0], A[t]
        for row in A:
            row[t], row[j0] = row[j0], row[t]
        pivot = A[t][t]
        dirty = False
        for i in range(t + 1, rows):
            q = A[i][t] // pivot
            if q:
                for j in range(t, cols):
                    A[i][j] -= q * A[t][j]
            if A[i][t]:
                dirty = True
        for j in range(t + 1, cols):
            q = A[t][j] // pivot
            if q:
                for i in range(t, rows):
                    A[i][j] -= q * A[i][t]
            if A[t][j]:
                dirty = True
        if not dirty:
            return True


@dataclass(frozen=True)
class AbelianizationReport:
    rows: int
    cols: int
    elementary_divisors: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return all(d == 1 for d in self.elementary_divisors)


def _group_exponent_vector(letters: Iterable[GroupLetter], n: int) -> list[int]:
    """Exponent sums over the 2n+4 generators, folding index >= 2 letters onto
    index 1 via the conjugation definitions (the conjugators cancel)."""
    vec = [0] * (2 * n + 4)

    def slot(kind: str, index: int, dim: int) -> int:
        i = 1 if index >= 2 else index
        if kind == "X":
            return i * n + (dim - 1)
        if kind == "pi":
            return 2 * n + i
        return 2 * n + 2 + i

    for let in expand_bakers(letters):
        vec[slot(let.kind, let.index, let.dim)] += let.sign
    return vec


def _monoid_exponent_vector(letters: Iterable[MonoidSigned], n: int) -> list[int]:
    vec = [0] * (2 * n + 2)
    for let, sign in letters:
        if isinstance(let, Cut):
            i = 1 if let.index >= 2 else let.index
            vec[i * n + (let.dim - 1)] += sign
        else:
            i = 1 if let.index >= 2 else let.index
            vec[2 * n + i] += sign
    return vec


def abelianize(p: Presentation) -> AbelianizationReport:
    """Smith normal form of the relator exponent-sum matrix."""
    rows = []
    for r in p.relators:
        if p.kind == "monoid":
            l = _monoid_exponent_vector(r.lhs, p.n)
            rvec = _monoid_exponent_vector(r.rhs, p.n)
        else:
            l = _group_exponent_vector(r.lhs, p.n)
            rvec = _group_exponent_vector(r.rhs, p.n)
        rows.append([a - b for a, b in zip(l, rvec)])
    cols = len(p.generators)
    divisors = smith_normal_form(rows) if rows else []
    padded = tuple(divisors) + (0,) * (cols - len(divisors))
    return AbelianizationReport(len(rows), cols, padded)


def abelianize_matrix(rows: list[list[int]], cols: int) -> AbelianizationReport:
    """Abelianization report for an explicit relation matrix (control cases)."""
    divisors = smith_normal_form(rows) if rows else []
    padded = tuple(divisors) + (0,) * (cols - len(divisors))
    return AbelianizationReport(len(rows), cols, padded)


# --- output formats ----------------------------------------------------------------


def _format_monoid_side(letters: Iterable[MonoidSigned]) -> str:
    parts = []
    for let, sign in letters:
        if isinstance(let, Cut):
            parts.append(f"s{let.index}.{let.dim}" + ("^-1" if sign < 0 else ""))
        else:
            parts.append(f"sig{let.index}")
    return " ".join(parts) if parts else "1"


def _format_group_side(letters: Iterable[GroupLetter]) -> str:
    from .group import format_group_word

    letters = tuple(letters)
    if not letters:
        return "1"
    return format_group_word(GroupWord(max([1] + [l.dim for l in letters]), letters))


def relator_sides(p: Presentation, r: Relator) -> tuple[str, str]:
    if p.kind == "monoid":
        return _format_monoid_side(r.lhs), _format_monoid_side(r.rhs)
    return _format_group_side(r.lhs), _format_group_side(r.rhs)


def presentation_text(p: Presentation) -> str:
    name = {"monoid": "pattern-fraction group", "nV": "nV", "omegaV": "omegaV"}[p.kind]
    lines = [
        f"# presentation of {name}, n = {p.n}: "
        f"{len(p.generators)} generators, {len(p.relators)} relators",
        "generators: " + " ".join(p.generators),
    ]
    for w in p.warnings:
        lines.append(f"# warning: {w}")
    for r in p.relators:
        lhs, rhs = relator_sides(p, r)
        tag = "(%s) %s" % (r.family, dict(r.params))
        lines.append(f"{tag}: {lhs} = {rhs}")
    return "\n".join(lines)


def presentation_json(p: Presentation) -> dict:
    rels = []
    for r in p.relators:
        lhs, rhs = relator_sides(p, r)
        rels.append({"family": r.family, "params": dict(r.params), "lhs": lhs, "rhs": rhs})
    return {
        "group": p.kind,
        "n": p.n,
        "generators": list(p.generators),
        "relators": rels,
        "warnings": list(p.warnings),
    }


def presentation_plain(p: Presentation) -> str:
    """Generators/relators lines with CAS-friendly identifiers."""

    def clean(tok: str) -> str:
        return tok.replace(".", "_").replace("^-1", "^-1")

    lines = ["generators: " + " ".join(clean(g) for g in p.generators)]
    for r in p.relators:
        lhs, rhs = relator_sides(p, r)
        lines.append("relator: %s = %s" % (
            " ".join(clean(t) for t in lhs.split()),
            " ".join(clean(t) for t in rhs.split()),
        ))
    return "\n".join(lines)
