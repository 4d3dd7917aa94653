"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 a checked property failed.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import gamefile
from .compare import SUITES, run_compare
from .opg import InvalidGame, is_equivalent, random_general_game, to_dot
from .realize import encode, realize
from .semantics import interpret_sem
from .terms import (TermSyntaxError, TermTypeError, max_priority, parse, pretty,
                    random_term, typecheck)
from .winning import classify_antichain, wr

EXIT_USAGE, EXIT_PARSE, EXIT_PROPERTY = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _is_game(text: str) -> bool:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.split()[0] == "opg"
    return False


def _load_term(text: str, max_rank: int | None):
    try:
        t = parse(text)
        m = max_priority(t) if max_rank is None else max_rank
        typecheck(t, m)
    except (TermSyntaxError, TermTypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    return t, m


def _word(w: str) -> str:
    return w or "ε"


def format_family(family) -> str:
    sets = sorted(family, key=lambda s: (len(s), sorted(s)))
    inner = ", ".join("{" + ", ".join(f"({p},out{j + 1})" for p, j in sorted(s)) + "}"
                      for s in sets)
    return f"[{inner}]"


def report(body, engine: str, fmt: str) -> str:
    lines = []
    if fmt == "tsv":
        lines.append("entry\tverdict\tantichain")
    else:
        lines.append(f"# engine: {engine}")
    for a, family in enumerate(body.antichains):
        verdict = classify_antichain(family)
        sep = "\t" if fmt == "tsv" else "  "
        lines.append(sep.join([f"in{a + 1}", verdict, format_family(family)]))
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------

def cmd_check(args) -> int:
    t, _ = _load_term(_read(args.file), args.max_rank)
    dom, cod = typecheck(t)
    print(f"{_word(dom)} -> {_word(cod)}")
    return 0


def cmd_realize(args) -> int:
    t, m = _load_term(_read(args.file), args.max_rank)
    g = realize(t, m)
    _write(to_dot(g) + "\n" if args.dot else gamefile.dumps(g), args.output)
    return 0


def _load_game_or_term(text: str, max_rank: int | None):
    if _is_game(text):
        try:
            return gamefile.loads(text), None
        except gamefile.GameFileError as exc:
            raise InputError(str(exc)) from None
    t, m = _load_term(text, max_rank)
    return realize(t, m), (t, m)


def cmd_solve(args) -> int:
    text = _read(args.file)
    start = time.perf_counter()
    if args.method == "semantic":
        if _is_game(text):
            raise InputError("the semantic method needs a term, not a game file")
        t, m = _load_term(text, args.max_rank)
        body = interpret_sem(t, m).body
    else:
        g, _ = _load_game_or_term(text, args.max_rank)
        body = wr(g, args.method)
    elapsed = time.perf_counter() - start
    sys.stdout.write(report(body, args.method, args.format))
    print(f"# {args.method}: {elapsed:.3f}s", file=sys.stderr)
    return 0


def cmd_encode(args) -> int:
    try:
        g = gamefile.loads(_read(args.file))
    except gamefile.GameFileError as exc:
        raise InputError(str(exc)) from None
    t = encode(g)
    if not is_equivalent(realize(t, g.max_rank), g):
        print("encode: realization of the emitted term differs from the input",
              file=sys.stderr)
        return EXIT_PROPERTY
    _write(pretty(t) + "\n", args.output)
    return 0


def cmd_compare(args) -> int:
    suites = args.suite or list(SUITES)
    counts, failures = run_compare(args.seed, args.count, args.size, args.max_rank, suites)
    for name in suites:
        bad = sum(1 for f in failures if f.suite == name)
        status = "PASS" if bad == 0 else "FAIL"
        print(f"{status} {name}: {counts[name] - bad}/{counts[name]} cases agree")
    for f in failures:
        print(f.report())
    return EXIT_PROPERTY if failures else 0


def cmd_generate(args) -> int:
    rng = random.Random(f"{args.seed}/generate")
    if args.kind == "term":
        t = random_term(rng, args.size, args.max_rank, args.max_word)
        _write(pretty(t) + "\n", args.output)
    else:
        ifc = tuple(rng.randint(0, 2) for _ in range(4))
        n = rng.randint(1, max(args.size, 1))
        _write(gamefile.dumps(random_general_game(rng, ifc, n, args.max_rank)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opgames", description="Compositional open parity games.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="typecheck a term file and print its type")
    c.add_argument("file")
    c.add_argument("--max-rank", type=int)
    c.set_defaults(run=cmd_check)

    r = sub.add_parser("realize", help="turn a term into a game file")
    r.add_argument("file")
    r.add_argument("-o", "--output")
    r.add_argument("--dot", action="store_true", help="emit Graphviz instead")
    r.add_argument("--max-rank", type=int)
    r.set_defaults(run=cmd_realize)

    s = sub.add_parser("solve", help="classify every entry of a term or game")
    s.add_argument("file")
    s.add_argument("--method", choices=["semantic", "arena", "oracle"], default="arena")
    s.add_argument("--format", choices=["text", "tsv"], default="text")
    s.add_argument("--max-rank", type=int)
    s.set_defaults(run=cmd_solve)

    e = sub.add_parser("encode", help="turn a game file into a term")
    e.add_argument("file")
    e.add_argument("-o", "--output")
    e.set_defaults(run=cmd_encode)

    k = sub.add_parser("compare", help="run the randomised agreement suites")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--count", type=int, default=100)
    k.add_argument("--size", type=int, default=4)
    k.add_argument("--max-rank", type=int, default=2)
    k.add_argument("--suite", action="append", choices=list(SUITES))
    k.set_defaults(run=cmd_compare)

    g = sub.add_parser("generate", help="print a random term or game")
    g.add_argument("kind", choices=["term", "game"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--size", type=int, default=3)
    g.add_argument("--max-rank", type=int, default=2)
    g.add_argument("--max-word", type=int, default=2)
    g.add_argument("-o", "--output")
    g.set_defaults(run=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("count", "size", "max_rank"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            print(f"opgames: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.run(args)
    except InputError as exc:
        print(f"opgames: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidGame as exc:
        print(f"opgames: invalid game: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
