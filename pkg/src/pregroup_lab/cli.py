"""
Command line: ``pregroup-lab parse|meaning|similarity|audit|demo|cooccur|grammar``.

Exit status is 0 when results were produced, 1 when the input was fine but
nothing came out (no parse), and 2 on input or configuration errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from . import demo as lumber
from . import grammar as gr
from .core import PregroupError, UndeclaredTypeError
from .distributional import (build_cooccurrence, cluster_columns, format_number, format_table,
                             ppmi, read_cluster_map, read_corpus)
from .reducer import LimitExceeded, Limits, UnknownWordError, parse
from .render import TSV_HEADER, parse_text, parse_tsv, svg_links
from .semantics import cosine, dim_audit, evaluate, load_word_model

ENV_GRAMMAR = "PREGROUP_LAB_GRAMMAR"
BUNDLED_MODELS = ("strict", "graded")
DEFAULT_MODEL = "graded"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# --- configuration -------------------------------------------------------------

def _grammar(args, fallback=None) -> gr.GrammarSpec:
    path = args.grammar or os.environ.get(ENV_GRAMMAR)
    if path:
        return gr.load_grammar_file(path)
    return fallback if fallback is not None else gr.builtin_english()


def _model(args):
    name = args.model or DEFAULT_MODEL
    if name in BUNDLED_MODELS and not Path(name).exists():
        path = lumber.MODELS.joinpath(name, "model.manifest")
    else:
        path = Path(name)
        if path.is_dir():
            path = path / "model.manifest"
    explicit = args.grammar or os.environ.get(ENV_GRAMMAR)
    g = gr.load_grammar_file(explicit) if explicit else None
    return load_word_model(path, g)


def _limits(args) -> Limits:
    if args.limit is None:
        return Limits()
    if args.limit < 1:
        raise UsageError("--limit must be positive")
    return Limits(max_derivations=args.limit)


def _sentences(args) -> List[str]:
    if args.sentence:
        return [" ".join(args.sentence)]
    return [line.strip() for line in sys.stdin if line.strip()]


def _has_punct(text: str) -> bool:
    return text.rstrip().endswith((".", "?"))


def _parses(text: str, g: gr.GrammarSpec, args, limits: Limits):
    """Parses under --targets, else under the punctuation's group; bare phrases
    try every target group in declaration order."""
    tokens, group = gr.tokenize(text)
    if args.targets:
        return parse(tokens, g, args.targets, limits)
    if _has_punct(text) or group not in g.targets:
        return parse(tokens, g, group, limits) if group in g.targets else []
    for name in g.targets:
        found = parse(tokens, g, name, limits)
        if found:
            return found
    return []


# --- commands --------------------------------------------------------------------

def cmd_parse(args, out) -> int:
    g = _grammar(args)
    limits = _limits(args)
    sentences = _sentences(args)
    status = 0
    collected = []
    if args.format == "tsv":
        out.write(TSV_HEADER + "\n")
    for k, text in enumerate(sentences, 1):
        parses = _parses(text, g, args, limits)
        if not parses:
            status = 1
        if args.format == "tsv":
            for n, p in enumerate(parses, 1):
                out.write(parse_tsv(p, k, n) + "\n")
        elif args.format == "svg":
            collected.extend(parses)
        else:
            out.write("{}\t{} parse{}\n".format(text, len(parses), "" if len(parses) == 1 else "s"))
            for n, p in enumerate(parses, 1):
                out.write(parse_text(p, n, args.show_links) + "\n")
    if args.format == "svg":
        out.write(svg_links(collected))
    return status


def _write_tensor(out, values):
    values = np.asarray(values)
    out.write("shape {}\n".format(" ".join(map(str, values.shape)) or "scalar"))
    flat = values.ravel()
    width = values.shape[-1] if values.ndim else 1
    for k in range(0, flat.size, width):
        out.write(" ".join(format_number(x) for x in flat[k:k + width]) + "\n")


def cmd_meaning(args, out) -> int:
    model, mg = _model(args)
    limits = _limits(args)
    status = 0
    for text in _sentences(args):
        parses = _parses(text, mg, args, limits)
        if not parses:
            status = 1
            continue
        for n, p in enumerate(parses if args.all else parses[:1], 1):
            if args.all:
                out.write("parse {} <= {}\n".format(n, p.target))
            _write_tensor(out, evaluate(p, model).values)
    return status


def cmd_similarity(args, out) -> int:
    model, mg = _model(args)
    limits = _limits(args)
    vectors = []
    for text in (args.a, args.b):
        parses = _parses(text, mg, args, limits)
        if not parses:
            sys.stderr.write("no parse for {!r}\n".format(text))
            return 1
        vectors.append(evaluate(parses[0], model).values)
    out.write(format_number(cosine(*vectors)) + "\n")
    return 0


def cmd_audit(args, out) -> int:
    if min(args.m, args.n, args.p) < 1:
        raise UsageError("dimensions must be positive")
    a = dim_audit(args.m, args.n, args.p)
    for name, left, right, equal in a.rows():
        out.write("{}\t{}\t{}\t{}\n".format(name, left, right, "equal" if equal else "unequal"))
    return 0


def cmd_demo(args, out) -> int:
    data = Path(args.data) if args.data else lumber.DATA
    try:
        fx = lumber.Fixtures.load(data)
    except OSError as exc:
        raise UsageError("cannot read fixtures in {}: {}".format(data, exc))
    p, checks = lumber.run_checks(fx)
    if args.strict_lombard:
        warning = lumber.lombard_mismatch(fx, p.clustered)
        if warning:
            sys.stderr.write("warning: " + warning + "\n")
    axis = lumber.FASHION_AXIS
    out.write("clustered vectors (bank wood fashion)\n")
    for t, row in zip(p.clustered.targets, p.clustered.counts):
        out.write("  {}\t{}\n".format(t, " ".join(format_number(x) for x in row)))
    out.write("cosine with the fashion axis\n")
    for name, v in (("red lumberjack", p.red_lumberjack), ("lumberjack", p.lumberjack),
                    ("tall lumberjack", p.tall_lumberjack)):
        out.write("  {}\t{:.4f}\n".format(name, cosine(v, axis)))
    strict = lumber.bundled_model("strict")
    graded = lumber.bundled_model("graded")
    sentences = [("strict", strict, "tall lumberjacks drink ."),
                 ("strict", strict, "red lumberjacks drink ."),
                 ("graded", graded, "lumberjacks drink ."),
                 ("graded", graded, "lumberjacks may drink ."),
                 ("graded", graded, "may lumberjacks drink ?"),
                 ("graded", graded, "who may drink ?")]
    out.write("truth degrees (true false)\n")
    meanings = {}
    for name, (model, g), text in sentences:
        v = lumber.meaning(text, g, model).values
        meanings["{} [{}]".format(text, name)] = v
        out.write("  {}\t{}\t{}\n".format(name, text, " ".join(format_number(x) for x in v)))
    for c in checks:
        out.write(c.line() + "\n")
    if args.out:
        _demo_files(Path(args.out), p, meanings)
        out.write("wrote {}\n".format(args.out))
    return 0 if all(c.passed for c in checks) else 1


def _demo_files(directory: Path, p, meanings):
    from . import plotting
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "clustered.tsv").write_text(format_table(p.clustered), encoding="utf-8")
    rows = ["sentence\ttrue\tfalse"]
    rows += ["{}\t{}\t{}".format(k, *map(format_number, v)) for k, v in meanings.items()]
    (directory / "truth.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    plotting.word_space({"lumberjack": p.lumberjack, "lombard": p.lombard,
                         "red lumberjack": p.red_lumberjack,
                         "tall lumberjack": p.tall_lumberjack}, directory / "word_space.png")
    plotting.truth_plane({k: v for k, v in meanings.items() if "?" not in k},
                         directory / "truth_plane.png")


def cmd_cooccur(args, out) -> int:
    docs = read_corpus(args.corpus)
    words = args.words.split(",")
    contexts = args.contexts.split(",")
    table = build_cooccurrence(docs, words, contexts, args.window)
    if args.clusters:
        table = cluster_columns(table, read_cluster_map(args.clusters))
    if args.ppmi:
        table = ppmi(table)
    out.write(format_table(table))
    return 0 if table.counts.any() else 1


def cmd_grammar(args, out) -> int:
    out.write(gr.dump_grammar(_grammar(args)))
    return 0


# --- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grammar", metavar="PATH",
                        help="grammar file (default: $%s, the model's grammar, or English)" % ENV_GRAMMAR)
    common.add_argument("--model", metavar="PATH",
                        help="word-model manifest or directory, or a bundled name: strict, graded")
    common.add_argument("--targets", metavar="GROUP", help="target group to parse to")
    common.add_argument("--limit", metavar="N", type=int, help="maximum number of derivations")
    common.add_argument("--format", choices=("text", "tsv", "svg"), default="text")
    common.add_argument("--show-links", action="store_true")
    common.add_argument("--all", action="store_true", help="every parse, not just the first")

    ap = _Parser(prog="pregroup-lab", description="Pregroup parsing and tensor meanings.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def sentences(p):
        p.add_argument("sentence", nargs="*",
                       help="one sentence (default: one sentence per line on stdin)")

    p = sub.add_parser("parse", parents=[common], help="parse sentences")
    sentences(p)
    p.set_defaults(func=cmd_parse)
    p = sub.add_parser("meaning", parents=[common], help="meaning tensor of sentences")
    sentences(p)
    p.set_defaults(func=cmd_meaning)
    p = sub.add_parser("similarity", parents=[common], help="cosine of two phrase meanings")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_similarity)
    p = sub.add_parser("audit", help="tensor vs direct-sum dimension counts")
    for name in "mnp":
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_audit)
    p = sub.add_parser("demo", help="the lumberjack walk-through and its checks")
    p.add_argument("--data", metavar="DIR", help="fixture directory")
    p.add_argument("--out", metavar="DIR", help="write TSV tables and PNG figures here")
    p.add_argument("--strict-lombard", action="store_true",
                   help="warn where the printed clustered table disagrees with the raw counts")
    p.set_defaults(func=cmd_demo)
    p = sub.add_parser("cooccur", help="windowed co-occurrence table from a corpus")
    p.add_argument("corpus")
    p.add_argument("--words", required=True, help="comma separated target words")
    p.add_argument("--contexts", required=True, help="comma separated context words")
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--clusters", metavar="PATH", help="context<TAB>cluster file")
    p.add_argument("--ppmi", action="store_true")
    p.set_defaults(func=cmd_cooccur)
    p = sub.add_parser("grammar", parents=[common], help="print the grammar in file syntax")
    p.set_defaults(func=cmd_grammar)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write("pregroup-lab: error: {}\n".format(exc))
    except UnknownWordError as exc:
        sys.stderr.write("pregroup-lab: unknown word: {}\n".format(exc.word))
    except UndeclaredTypeError as exc:
        sys.stderr.write("pregroup-lab: undeclared type: {}\n".format(exc.name))
    except LimitExceeded as exc:
        sys.stderr.write("pregroup-lab: limit exceeded: {}\n".format(exc))
    except (PregroupError, OSError, ValueError) as exc:
        sys.stderr.write("pregroup-lab: {}\n".format(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
