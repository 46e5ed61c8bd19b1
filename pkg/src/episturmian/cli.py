"""Command-line interface: ``episturmian <subcommand> ...``.

Exit codes: 0 on success (including negative verdicts such as a failing
preservation check), 1 when a computation contradicts a theorem or two
independent computations disagree, 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import conjugacy, language, palindromic, preservation, returns, verify
from .morphism import (
    MorphismError,
    NotEpisturmian,
    NotPrimitiveError,
    decompose_episturmian,
    parse_any,
)
from .words import Alphabet, AlphabetError, render

SCHEMA_VERSION = 1
EXIT_OK, EXIT_THEORY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def emit_json(payload: dict) -> None:
    print(json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, sort_keys=False))


def emit_tsv(header: list[str], rows) -> None:
    print("\t".join(header))
    for row in rows:
        print("\t".join(str(x) for x in row))


def load_morphism(args):
    text = args.morphism
    if args.file:
        if text is not None:
            raise UsageError("give the morphism inline or with --file, not both")
        text = Path(args.file).read_text()
    if text is None:
        raise UsageError("a morphism is required")
    alphabet = Alphabet.of(args.alphabet) if getattr(args, "alphabet", None) else None
    return parse_any(text, alphabet)


# --------------------------------------------------------------------------
# subcommands


def cmd_decompose(args) -> int:
    sigma = load_morphism(args)
    try:
        dec = decompose_episturmian(sigma, prefer=args.prefer)
    except NotEpisturmian as exc:
        if args.format == "json":
            emit_json({"morphism": sigma.to_text(), "episturmian": False, "reason": str(exc)})
        else:
            print(f"not episturmian: {exc}")
        return EXIT_OK
    if args.format == "json":
        emit_json({
            "morphism": sigma.to_text(),
            "episturmian": True,
            "spinned": [[x.letter, x.barred] for x in dec.spinned],
            "permutation": str(dec.perm),
            "standard": dec.is_plain,
        })
    else:
        print(dec)
    return EXIT_OK


def cmd_class(args) -> int:
    sigma = load_morphism(args)
    cls = conjugacy.enumerate_class(sigma)
    if args.format == "json":
        emit_json({
            "directive": cls.directive,
            "permutation": str(cls.perm),
            "members": [{"morphism": m.to_text(), "pal_prefix": p, "index": i} for m, p, i in cls.rows()],
        })
        return EXIT_OK
    rows = [(m.to_text(), render(p), i) for m, p, i in cls.rows()]
    if args.format == "tsv":
        emit_tsv(["morphism", "pal_prefix", "index"], rows)
    else:
        width = max(len(r[0]) for r in rows)
        pwidth = max(len(r[1]) for r in rows + [("", "prefix", 0)])
        print(f"{'morphism':<{width}}  {'prefix':<{pwidth}}  index")
        for m, p, i in rows:
            print(f"{m:<{width}}  {p:<{pwidth}}  {i}")
    return EXIT_OK


def cmd_index(args) -> int:
    sigma = load_morphism(args)
    ind = conjugacy.conjugacy_index(sigma)
    std, w = conjugacy.standard_conjugate(sigma)
    rep = conjugacy.minimal_letter(sigma)
    if args.format == "json":
        emit_json({"morphism": sigma.to_text(), "index": ind, "standard": std.to_text(), "w": w,
                   "m": rep.m, "a_min": rep.a_min, "j": rep.j,
                   "suffix_closed": rep.suffix_closed, "prefix_closed": rep.prefix_closed})
    else:
        print(f"index\t{ind}")
        print(f"standard\t{std.to_text()}")
        print(f"w\t{render(w)}")
        print(f"m\t{rep.m}")
        print(f"a_min\t{rep.a_min}")
        print(f"j\t{rep.j}")
        print(f"suffix_closed\t{rep.suffix_closed}")
        print(f"prefix_closed\t{rep.prefix_closed}")
    return EXIT_OK


def cmd_pal(args) -> int:
    p = palindromic.pal(args.word)
    if args.format == "json":
        emit_json({"word": args.word, "pal": p})
    else:
        print(render(p))
    return EXIT_OK


def cmd_pal_inverse(args) -> int:
    u = palindromic.pal_inverse(args.word)
    if args.format == "json":
        emit_json({"palindrome": args.word, "directive": u})
    else:
        print(render(u))
    return EXIT_OK


def cmd_standard_tree(args) -> int:
    alphabet = Alphabet.of(args.letters)
    if args.format == "dot":
        sys.stdout.write(palindromic.standard_tree_dot(alphabet, args.depth))
    elif args.format == "json":
        emit_json({"alphabet": list(alphabet.letters),
                   "nodes": [{"word": n.word, "images": list(n.images)}
                             for n in palindromic.standard_tree(alphabet, args.depth)]})
    else:
        for n in palindromic.standard_tree(alphabet, args.depth):
            print(f"{render(n.word)}\t" + "\t".join(n.images))
    return EXIT_OK


def cmd_language(args) -> int:
    sigma = load_morphism(args)
    window = language.language(sigma, args.n)
    left, right, bispecial = language.special_factors(sigma, args.n)
    if args.format == "json":
        emit_json({"n": args.n, "factors": window.sorted(), "count": len(window),
                   "left_special": left, "right_special": right, "bispecial": bispecial})
    else:
        for f in window.sorted():
            tags = [t for t, w in (("L", left), ("R", right)) if f == w]
            print(f + ("\t" + ",".join(tags) if tags else ""))
    return EXIT_OK


def cmd_rauzy(args) -> int:
    sigma = load_morphism(args)
    graph = language.rauzy_graph(sigma, args.n)
    ann = language.dl_annotations(sigma, args.n) if args.annotate_dl else None
    if args.format == "json":
        payload = {"graph": graph.to_json()}
        if ann is not None:
            payload["dl"] = {v: {"d": d, "ell": ell} for v, (d, ell) in sorted(ann.items())}
        emit_json(payload)
    elif args.format == "dot":
        labels = {v: f"({render(d)},{ell})" for v, (d, ell) in ann.items()} if ann else None
        sys.stdout.write(graph.to_dot(labels))
    else:
        for v in graph.vertices:
            i = graph.inner_index(v)
            cols = [v, "inner" if i is not None else "outer", "" if i is None else str(i)]
            if ann:
                cols += [render(ann[v][0]), str(ann[v][1])]
            print("\t".join(cols))
    return EXIT_OK


def _returns_payload(comp: returns.ReturnComputation, side: str) -> dict:
    data = comp.to_json()
    if side != "both":
        data.pop("right_returns" if side == "left" else "left_returns")
    return data


def cmd_returns(args) -> int:
    sigma = load_morphism(args)
    u = args.factor
    results = []
    if args.method in ("closed", "both"):
        results.append(returns.returns_closed_form(sigma, u))
    if args.method in ("oracle", "both"):
        results.append(returns.oracle_computation(sigma, u))
    verdict = None
    if args.method == "both":
        a, b = results
        verdict = "MATCH" if (a.left_returns, a.right_returns) == (b.left_returns, b.right_returns) else "MISMATCH"
    if args.format == "json":
        payload = {"factor": u, "results": [_returns_payload(r, args.side) for r in results]}
        if verdict:
            payload["verdict"] = verdict
        emit_json(payload)
    else:
        for r in results:
            print(f"# {r.method}: d={render(r.d or '')} ell={r.ell} ell'={r.ell_prime}")
            sides = ("left", "right") if args.side == "both" else (args.side,)
            for side in sides:
                for w in r.returns(side):
                    print(f"{side}\t{w}")
        if verdict:
            print(verdict)
    return EXIT_THEORY if verdict == "MISMATCH" else EXIT_OK


def cmd_check_p(args) -> int:
    sigma = load_morphism(args)
    v = preservation.check_preservation(sigma, args.factor, cross_check=args.cross_check == "oracle")
    if args.format == "json":
        emit_json(v.to_json())
    else:
        print(f"u\t{v.u}")
        print(f"sigma(u)\t{v.image}")
        print(f"P\t{'holds' if v.holds_P else 'fails'}")
        print(f"P'\t{'holds' if v.holds_P_prime else 'fails'}")
        print("sigma(R(u))\t" + " ".join(v.lhs))
        print("R(sigma(u))\t" + " ".join(v.rhs))
        if v.witness:
            print(f"witness\t{v.witness}")
    return EXIT_OK


def cmd_obstructions(args) -> int:
    sigma = load_morphism(args)
    report = preservation.run_obstruction_suite(sigma, args.n_max, cross_check=args.cross_check == "oracle")
    if args.format == "json":
        emit_json(report.to_json())
    else:
        print(f"# a_min={report.a_min} j={report.j} ind={report.ind} m={report.m} "
              f"case={report.case} onset={report.onset}")
        print("n\tfamily\tword\tP")
        for n, family, word, holds in report.rows():
            print(f"{n}\t{family}\t{word}\t{'holds' if holds else 'fails'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    mode = "full" if args.full else "quick"

    def progress(res):
        print(res.line(), flush=True)
        for f in res.failures:
            print(f"  {f}", flush=True)

    results = verify.run_all(mode, seed=args.seed, progress=progress)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed ({mode}, seed={args.seed})")
    if args.onsets:
        onsets = next(r.data["onsets"] for r in results if "onsets" in r.data)
        with open(args.onsets, "w") as fh:
            fh.write("morphism\tonset\n")
            for label, onset in sorted(onsets.items()):
                fh.write(f"{label}\t{onset}\n")
    return EXIT_OK if passed == len(results) else EXIT_THEORY


def cmd_report(args) -> int:
    from .report import write_report  # matplotlib is only needed here

    sigma = load_morphism(args)
    for path in write_report(sigma, Path(args.out), n_max=args.n_max, rauzy_n=args.rauzy_n):
        print(path)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_morphism(p: argparse.ArgumentParser) -> None:
    p.add_argument("morphism", nargs="?", help='rules "a->ab,b->a", "psi:abb:(a c b)" or JSON')
    p.add_argument("--file", help="read the morphism from a file")
    p.add_argument("--alphabet", help="alphabet letters, e.g. abc (default: letters seen, sorted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="episturmian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="write a morphism as psi_v o pi")
    _add_morphism(p)
    p.add_argument("--prefer", choices=["plain", "barred"], default="plain")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("class", help="conjugacy class table")
    _add_morphism(p)
    p.add_argument("--format", choices=["table", "tsv", "json"], default="table")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("index", help="conjugacy index and minimal letter")
    _add_morphism(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("pal", help="iterated palindromic closure")
    p.add_argument("word")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_pal)

    p = sub.add_parser("pal-inverse", help="directive word of a palindrome")
    p.add_argument("word")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_pal_inverse)

    p = sub.add_parser("standard-tree", help="standard tuples psi_u(A)")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--letters", default="abc")
    p.add_argument("--format", choices=["text", "dot", "json"], default="text")
    p.set_defaults(func=cmd_standard_tree)

    p = sub.add_parser("language", help="factors of length n")
    _add_morphism(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_language)

    p = sub.add_parser("rauzy", help="Rauzy graph of order n")
    _add_morphism(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["text", "dot", "json"], default="text")
    p.add_argument("--annotate-dl", action="store_true", help="label vertices with (d, ell)")
    p.set_defaults(func=cmd_rauzy)

    p = sub.add_parser("returns", help="return sets of a factor")
    _add_morphism(p)
    p.add_argument("factor")
    p.add_argument("--side", choices=["left", "right", "both"], default="left")
    p.add_argument("--method", choices=["closed", "oracle", "both"], default="closed")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_returns)

    p = sub.add_parser("check-p", help="return preservation for one factor")
    _add_morphism(p)
    p.add_argument("factor")
    p.add_argument("--cross-check", choices=["oracle"], default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_check_p)

    p = sub.add_parser("obstructions", help="test the obstruction words up to n_max")
    _add_morphism(p)
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--cross-check", choices=["oracle"], default=None)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_obstructions)

    p = sub.add_parser("verify", help="run the corpus checks")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--quick", action="store_true", help="sampled corpus (default)")
    mode.add_argument("--full", action="store_true", help="entire corpus")
    p.add_argument("--seed", type=int, default=0, help="seed for the corpus sample")
    p.add_argument("--onsets", help="write measured onsets as TSV to this path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="write TSV tables and PNG figures")
    _add_morphism(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--rauzy-n", type=int, default=None)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (preservation.TheoryViolation, conjugacy.ConjugacyError, language.ShapeError) as exc:
        print(f"theory violation: {exc}", file=sys.stderr)
        return EXIT_THEORY
    except (UsageError, MorphismError, AlphabetError, NotPrimitiveError, language.NotInLanguage,
            palindromic.NotInImage, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (returns.ReturnsError, language.LanguageError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_THEORY


if __name__ == "__main__":
    sys.exit(main())
