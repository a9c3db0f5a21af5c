"""Command line interface.

Exit codes: 0 success / verified, 1 semantic inequality or verification
failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .patterns import Address, element_apply, element_from_json, element_to_json, element_equal
from .monoid import format_monoid_word, normalize_word, parse_monoid_word
from .group import (
    factor_element,
    format_group_word,
    parse_group_word,
    word_evaluate,
)
from .presentation import (
    abelianize,
    present_monoid_group,
    present_nV,
    present_omegaV,
    presentation_json,
    presentation_plain,
    presentation_text,
    verify_families,
    verify_presentation,
)
from .selftest import run_selftest


class UsageError(Exception):
    pass


def _parse_word(text: str, n: Optional[int]):
    try:
        return parse_group_word(text, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _element_text(el) -> str:
    lines = [f"element of {el.dim}V with {len(el.domain.bricks)} bricks"]
    for db, rb in zip(el.domain.bricks, el.range.bricks):
        dom = " x ".join(f"[{iv.bits() or 'e'}]" for iv in db.intervals)
        rng = " x ".join(f"[{iv.bits() or 'e'}]" for iv in rb.intervals)
        lines.append(f"  {dom} -> {rng}")
    return "\n".join(lines)


def cmd_eval(args) -> int:
    el = word_evaluate(_parse_word(args.word, args.n))
    if args.json:
        print(json.dumps(element_to_json(el)))
    else:
        print(_element_text(el))
    return 0


def cmd_equal(args) -> int:
    ga = word_evaluate(_parse_word(args.word_a, args.n))
    gb = word_evaluate(_parse_word(args.word_b, args.n))
    if ga.dim != gb.dim:
        raise UsageError("words live in different dimensions; pass -n")
    same = element_equal(ga, gb)
    print("equal" if same else "distinct")
    return 0 if same else 1


def cmd_normalize(args) -> int:
    try:
        w = parse_monoid_word(args.word, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = normalize_word(w)
    if args.json:
        print(json.dumps({"input": args.word, "normalized": format_monoid_word(out)}))
    else:
        print(format_monoid_word(out))
    return 0


def cmd_factor(args) -> int:
    text = args.input.strip()
    if text.startswith("{"):
        try:
            el = element_from_json(json.loads(text))
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad element JSON: {exc}") from exc
    else:
        el = word_evaluate(_parse_word(text, args.n))
    out = factor_element(el)
    if args.json:
        print(json.dumps({"word": format_group_word(out)}))
    else:
        print(format_group_word(out))
    return 0


def cmd_apply(args) -> int:
    text = args.element.strip()
    if text.startswith("{"):
        try:
            el = element_from_json(json.loads(text))
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad element JSON: {exc}") from exc
    else:
        el = word_evaluate(_parse_word(text, args.n))
    comps = args.address.split(",")
    if len(comps) != el.dim:
        raise UsageError(f"address needs {el.dim} comma-separated bitstrings")
    try:
        out = element_apply(el, Address(tuple(comps)))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(",".join(out.bits))
    return 0


def _build_presentation(args):
    if args.group == "monoid":
        return present_monoid_group(args.n)
    if args.group == "nV":
        return present_nV(args.n)
    return present_omegaV(args.dmax if args.dmax is not None else args.n)


def cmd_present(args) -> int:
    p = _build_presentation(args)
    if args.json:
        print(json.dumps(presentation_json(p)))
    elif args.plain:
        print(presentation_plain(p))
    else:
        print(presentation_text(p))
    return 0


def cmd_verify(args) -> int:
    if args.families:
        rep, counts = verify_families(args.n, args.bound)
        vac = ", ".join(f"({k}): {v}" for k, v in counts.items() if v == 0) or "none"
        print(f"checked {rep.checked} instances over indices <= {args.bound}, n = {args.n}")
        print(f"vacuous families: {vac}")
    else:
        rep = verify_presentation(_build_presentation(args))
        print(f"checked {rep.checked} relators of the {args.group} presentation, n = {args.n}")
    if rep.failures:
        for f in rep.failures:
            print(f"FAIL {f}")
        return 1
    print("all verified")
    return 0


def cmd_abelianize(args) -> int:
    p = _build_presentation(args)
    rep = abelianize(p)
    if args.json:
        print(json.dumps({
            "rows": rep.rows,
            "cols": rep.cols,
            "elementary_divisors": list(rep.elementary_divisors),
            "trivial": rep.trivial,
        }))
    else:
        print(f"relation matrix {rep.rows} x {rep.cols}")
        print("elementary divisors: " + " ".join(map(str, rep.elementary_divisors)))
        print("abelianization: " + ("trivial" if rep.trivial else "nontrivial"))
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest(quick=args.quick, seed=args.seed)
    ok = True
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
        ok = ok and passed
    print("selftest:", "all passed" if ok else "FAILURES")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nvgroups",
        description="Exact computation in the higher-dimensional Thompson groups nV.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        p.add_argument("-n", type=int, default=None, help="ambient dimension")
        p.add_argument("--json", action="store_true", help="machine readable output")
        return p

    p = add("eval", cmd_eval, "evaluate a group word to a pattern-pair element")
    p.add_argument("word")

    p = add("equal", cmd_equal, "decide whether two group words are the same element")
    p.add_argument("word_a")
    p.add_argument("word_b")

    p = add("normalize", cmd_normalize, "normalize a monoid word (cuts then swaps)")
    p.add_argument("word")

    p = add("factor", cmd_factor, "factor a word or element JSON into L*M*R form")
    p.add_argument("input")

    p = add("apply", cmd_apply, "apply an element to a Cantor-set address")
    p.add_argument("element", help="group word or element JSON")
    p.add_argument("address", help="comma-separated bitstrings, one per dimension")

    p = add("present", cmd_present, "emit a finite presentation")
    p.add_argument("--group", choices=("monoid", "nV", "omegaV"), default="nV")
    p.add_argument("--dmax", type=int, default=None, help="dimension bound for omegaV")
    p.add_argument("--plain", action="store_true", help="generators/relators plain format")

    p = add("verify", cmd_verify, "verify relators or relation families semantically")
    p.add_argument("--group", choices=("monoid", "nV", "omegaV"), default="nV")
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--families", action="store_true", help="check the infinite families")
    p.add_argument("--bound", type=int, default=4, help="index bound for --families")

    p = add("abelianize", cmd_abelianize, "elementary divisors of the relation matrix")
    p.add_argument("--group", choices=("monoid", "nV", "omegaV"), default="nV")
    p.add_argument("--dmax", type=int, default=None)

    p = add("selftest", cmd_selftest, "run the acceptance checks")
    p.add_argument("--quick", action="store_true", help="smaller randomized budgets")
    p.add_argument("--seed", type=int, default=None)

    return ap


def _default_n(args) -> None:
    # Dimension defaults: inferred from the word by the parsers; presentation
    # style commands fall back to 2.
    if getattr(args, "n", None) is None and args.command in ("present", "verify", "abelianize"):
        args.n = 2


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    _default_n(args)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
