"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (bad word, failed
verification, missing file), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .automaton import Pattern, build_nfa, build_pattern_nfa
from .core import FinitePoset, format_word, parse_word
from .moebius import interval, mobius, parse_alpha_word
from .polyrat import parse_expr, render, series_expand
from .strongwilf import strong_refute
from .transfer import finite_length_gf, gen_function
from .wilf import (all_permutations, all_words, check_conjecture, classify,
                   closed_form_increasing, closed_form_one_k_b_l, wilf_equivalent)

MAX_BOUND = 40
BUNDLED = {"permutations": "permutation_classes.json", "suffix": "suffix_functions.json"}


class DomainError(Exception):
    pass


def _word(text: str, name: str):
    try:
        w = parse_word(text)
    except ValueError as exc:
        raise DomainError(f"{name}: {exc}") from None
    if not w:
        raise DomainError(f"{name}: the empty word is not allowed here")
    return w


def _bound(value: int, name: str) -> int:
    if value < 1:
        raise DomainError(f"{name}: bound must be positive, got {value}")
    if value > MAX_BOUND:
        raise DomainError(f"{name}: bound {value} exceeds the maximum {MAX_BOUND}")
    return value


def _emit(args, text_lines, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_gf(args) -> int:
    u = _word(args.u, "-u")
    r = gen_function(u, args.stat)
    payload = {"u": format_word(u), "stat": args.stat, "gf": render(r)}
    lines = [render(r)]
    if args.series is not None:
        table = series_expand(r, _bound(args.series, "--series")).to_json()
        payload["series"] = table
        lines.append(json.dumps(table))
    if args.dump_nfa:
        nfa = build_nfa(u, args.stat).to_json()
        payload["nfa"] = nfa
        lines.append(json.dumps(nfa))
    _emit(args, lines, payload)
    return 0


def cmd_wilf(args) -> int:
    u, v = _word(args.u, "-u"), _word(args.v, "-v")
    eq = wilf_equivalent(u, v)
    _emit(args, ["equivalent" if eq else "NOT equivalent"],
          {"u": format_word(u), "v": format_word(v), "equivalent": eq})
    return 0


def cmd_classify(args) -> int:
    if args.perms is not None:
        if not 1 <= args.perms <= 7:
            raise DomainError("--perms: n must lie in 1..7")
        words = all_permutations(args.perms)
    else:
        if args.maxlen is None or args.maxpart is None:
            raise DomainError("classify needs --perms N or both --maxlen and --maxpart")
        if args.maxlen < 1 or args.maxpart < 1 or args.maxpart ** args.maxlen > 20000:
            raise DomainError("--maxlen/--maxpart: range is empty or too large")
        words = all_words(args.maxlen, args.maxpart)
    print(json.dumps(classify(words, workers=args.workers).to_json()))
    return 0


def cmd_strongwilf(args) -> int:
    u, v = _word(args.u, "-u"), _word(args.v, "-v")
    bound = _bound(args.bound, "--bound")
    d = strong_refute(u, v, bound)
    payload = {"u": format_word(u), "v": format_word(v), "bound": bound,
               "witness": d.to_json() if d else None}
    if d is None:
        payload["message"] = f"no divergence up to bound {bound}"
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_mobius(args) -> int:
    try:
        u = parse_alpha_word(args.u, args.alphabet)
        w = parse_alpha_word(args.w, args.alphabet)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    value = mobius(u, w)
    payload = {"u": "".join(u), "w": "".join(w), "mu": value}
    lines = [str(value)]
    if args.interval:
        try:
            elems = interval(u, w)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        levels: dict[int, list[str]] = {}
        for z in elems:
            levels.setdefault(len(z), []).append("".join(z) or "e")
        payload["interval"] = [levels[k] for k in sorted(levels)]
        lines.extend(" ".join(levels[k]) for k in sorted(levels))
    _emit(args, lines, payload)
    return 0


def cmd_pattern(args) -> int:
    try:
        p = Pattern.parse(args.p)
    except ValueError as exc:
        raise DomainError(f"-p: {exc}") from None
    r = gen_function(p, args.stat)
    payload = {"pattern": str(p), "stat": args.stat, "gf": render(r)}
    lines = [render(r)]
    if args.series is not None:
        table = series_expand(r, _bound(args.series, "--series")).to_json()
        payload["series"] = table
        lines.append(json.dumps(table))
    if args.dump_nfa:
        nfa = build_pattern_nfa(p, args.stat).to_json()
        payload["nfa"] = nfa
        lines.append(json.dumps(nfa))
    _emit(args, lines, payload)
    return 0


def cmd_poset(args) -> int:
    try:
        poset = FinitePoset.from_json(args.file)
    except OSError as exc:
        raise DomainError(f"--file: {exc}") from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise DomainError(f"--file: {exc}") from None
    try:
        u = poset.parse_word(args.u)
    except ValueError as exc:
        raise DomainError(f"-u: {exc}") from None
    if not u:
        raise DomainError("-u: the empty word is not allowed here")
    r = finite_length_gf(u, poset, args.stat)
    _emit(args, [render(r)], {"u": list(u), "stat": args.stat, "gf": render(r)})
    return 0


def load_fixture(path: str) -> list[dict]:
    if path in BUNDLED:
        text = resources.files("factororder.data").joinpath(BUNDLED[path]).read_text()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise DomainError(f"--fixture: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"--fixture: {exc}") from None
    if not isinstance(data, list):
        raise DomainError("--fixture: expected a JSON array")
    return data


def verify_fixture(entries: list[dict]) -> list[tuple[str, bool]]:
    """Check every ``{"u", "S"}`` entry against the computed S, and check
    that classification reproduces the fixture's grouping.  Entries of the
    form ``{"class": [...]}`` contribute grouping only."""
    results = []
    groups: dict[str, list] = {}
    for e in entries:
        if "class" in e:
            members = [_word(s, "fixture") for s in e["class"]]
            groups[json.dumps(e["class"])] = members
        elif "u" in e and "S" in e:
            u = _word(e["u"], "fixture")
            ok = gen_function(u, "S") == parse_expr(e["S"])
            results.append((f"S({e['u']})", ok))
            groups.setdefault(e["S"], []).append(u)
        else:
            raise DomainError(f"--fixture: unrecognized entry {e!r}")
    expected = sorted(sorted(g) for g in groups.values())
    got = sorted(sorted(c) for c in classify([w for g in groups.values() for w in g]).classes)
    results.append((f"classes ({len(expected)} expected, {len(got)} computed)", expected == got))
    return results


def cmd_verify_tables(args) -> int:
    results = verify_fixture(load_fixture(args.fixture))
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return 0 if all(ok for _, ok in results) else 1


def cmd_verify_closed_forms(args) -> int:
    if args.max_n < 2:
        raise DomainError("--max-n must be >= 2")
    ok_all = True
    for n in range(2, args.max_n + 1):
        u = tuple(range(1, n + 1))
        ok = closed_form_increasing(n) == gen_function(u, "S")
        ok_all &= ok
        print(f"{'PASS' if ok else 'FAIL'} S({format_word(u)}) increasing closed form")
    for k in range(3):
        for b in range(2, 5):
            for ell in range(1, 4):
                u = (1,) * k + (b,) * ell
                ok = closed_form_one_k_b_l(k, b, ell) == gen_function(u, "S")
                ok_all &= ok
                print(f"{'PASS' if ok else 'FAIL'} S({format_word(u)}) 1^k b^l closed form")
    return 0 if ok_all else 1


def cmd_check_conjecture(args) -> int:
    try:
        lo, hi = (int(s) for s in args.range.split(".."))
    except ValueError:
        raise DomainError(f"--range: expected A..B, got {args.range!r}") from None
    if lo < 2 or hi < lo:
        raise DomainError("--range: need 2 <= A <= B")
    results = check_conjecture(range(lo, hi + 1))
    print(json.dumps(results))
    return 0 if all(r["equivalent"] for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="factororder",
                                     description="Generalized factor order on compositions.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gf", help="generating function S, F or A of a composition")
    p.add_argument("--stat", choices="SFA", default="S")
    p.add_argument("-u", required=True)
    p.add_argument("--series", type=int, metavar="N")
    p.add_argument("--dump-nfa", action="store_true")
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("wilf", help="test Wilf equivalence")
    p.add_argument("-u", required=True)
    p.add_argument("-v", required=True)
    p.set_defaults(func=cmd_wilf)

    p = sub.add_parser("classify", help="partition words into Wilf classes (JSON)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--perms", type=int, metavar="N")
    g.add_argument("--maxlen", type=int, metavar="L")
    p.add_argument("--maxpart", type=int, metavar="M")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("strongwilf", help="look for a strong Wilf refutation (JSON)")
    p.add_argument("-u", required=True)
    p.add_argument("-v", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_strongwilf)

    p = sub.add_parser("mobius", help="Moebius function of ordinary factor order")
    p.add_argument("--alphabet", required=True)
    p.add_argument("-u", required=True)
    p.add_argument("-w", required=True)
    p.add_argument("--interval", action="store_true")
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("pattern", help="generating function of a barred pattern")
    p.add_argument("-p", required=True, metavar="SPEC")
    p.add_argument("--stat", choices="SFA", default="S")
    p.add_argument("--series", type=int, metavar="N")
    p.add_argument("--dump-nfa", action="store_true")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("poset", help="length generating function over a finite poset")
    p.add_argument("--file", required=True)
    p.add_argument("-u", required=True)
    p.add_argument("--stat", choices="SFA", default="S")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("verify-tables", help="check a fixture of known generating functions or classes")
    p.add_argument("--fixture", required=True,
                   help="path to a JSON fixture, or 'permutations' / 'suffix' for the bundled ones")
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("verify-closed-forms", help="compare closed forms with computed S")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_verify_closed_forms)

    p = sub.add_parser("check-conjecture", help="test a1b2c ~ a2b1c over a range")
    p.add_argument("--range", required=True, metavar="A..B")
    p.set_defaults(func=cmd_check_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
