"""
The lumberjack walk-through: clustered co-occurrence vectors, learnt
adjective maps, a truth-valued sentence space and questions whose
meaning equals the sentence they ask about.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import grammar as gr
from .distributional import (CooccurrenceTable, cluster_columns, learn_linear_map,
                             read_cluster_map, read_table)
from .grammar import GrammarSpec, parse_type_expr
from .reducer import parse
from .semantics import (BasicInterpretation, SemanticsError, SpaceTable, Tensor, WordModel,
                        cosine, dim_audit, evaluate, lift_auxiliary, lift_wh_subject,
                        reference_evaluate, contract_network, load_word_model)

DATA = gr.bundled_path("lumberjack")
MODELS = gr.bundled_path("models")

FASHION_AXIS = (0.0, 0.0, 1.0)
LUMBERJACKS_DRINK = (0.8, 0.2)
MAY_LUMBERJACKS_DRINK = (0.75, 0.35)
TALL_TRUE, RED_FALSE = (1.0, 0.0), (0.0, 1.0)


@dataclass
class Fixtures:
    raw: CooccurrenceTable
    printed: CooccurrenceTable
    clusters: object

    @classmethod
    def load(cls, directory=None) -> "Fixtures":
        d = Path(directory) if directory is not None else DATA
        return cls(read_table(d / "raw.tsv"), read_table(d / "clustered_printed.tsv"),
                   read_cluster_map(d / "clusters.tsv"))


@dataclass
class Pipeline:
    clustered: CooccurrenceTable
    lumberjack: np.ndarray
    lombard: np.ndarray
    red_lumberjack: np.ndarray
    tall_lumberjack: np.ndarray
    red: np.ndarray
    tall: np.ndarray
    drink_strict: np.ndarray
    drink_graded: np.ndarray
    mu: np.ndarray


def mu_for(before: Sequence[float], after: Sequence[float]) -> np.ndarray:
    """Diagonal endomorphism sending ``before`` to ``after`` coordinatewise."""
    return np.diag(np.asarray(after, dtype=float) / np.asarray(before, dtype=float))


def run_pipeline(fx: Fixtures) -> Pipeline:
    clustered = cluster_columns(fx.raw, fx.clusters)
    lj = clustered.row("lumberjack")
    red_lj = fx.printed.row("red lumberjack")
    tall_lj = fx.printed.row("tall lumberjack")
    red = learn_linear_map([(lj, red_lj)])
    tall = learn_linear_map([(lj, tall_lj)])
    # strict reading: tall lumberjacks drink is true, red ones false
    strict = learn_linear_map([(tall_lj, TALL_TRUE), (red_lj, RED_FALSE)])
    graded = learn_linear_map([(lj, LUMBERJACKS_DRINK)])
    return Pipeline(clustered, lj, clustered.row("lombard"), red_lj, tall_lj, red, tall,
                    strict, graded, mu_for(LUMBERJACKS_DRINK, MAY_LUMBERJACKS_DRINK))


def lumberjack_interpretation(poset=None) -> BasicInterpretation:
    mapping = {b: ["N"] for b in ("n", "pi", "pi3")}
    mapping.update({b: ["S"] for b in ("s", "s1", "q", "q1", "qbar")})
    mapping["i"] = mapping["j"] = ["N*", "S"]
    return BasicInterpretation(mapping, poset=poset)


def build_model(p: Pipeline, drink: np.ndarray, grammar: Optional[GrammarSpec] = None) -> WordModel:
    g = grammar or gr.builtin_lumberjack()
    spaces = SpaceTable({"N": 3, "S": 2})
    model = WordModel(spaces, lumberjack_interpretation(g.poset))

    def T(expr):
        return parse_type_expr(expr, alphabet=g.poset)

    for word in ("lumberjacks", "lumberjack"):
        model.add(word, T("n"), p.lumberjack)
    model.add("lombard", T("n"), p.lombard)
    for k, axis in enumerate(("bank", "wood", "fashion")):
        model.add(axis, T("n"), np.eye(3)[k])
    # adjective n n^l: T[out, in]
    model.add("red", T("n n^l"), p.red)
    model.add("tall", T("n n^l"), p.tall)
    # verb n^r s and infinitive i both live in N* x S: T[in, out]
    model.add("drink", T("n^r s"), drink.T)
    model.add("drink", T("i"), drink.T)
    model.add("may", T("pi3^r s1 j^l"), lift_auxiliary(p.mu, 3, "declarative"))
    model.add("may", T("q1 i^l pi^l"), lift_auxiliary(p.mu, 3, "yesno"))
    model.add("who", T("qbar s1^l pi3"), lift_wh_subject(p.lumberjack, 2, 3))
    return model


def meaning(sentence: str, grammar: GrammarSpec, model: WordModel,
            group: Optional[str] = None) -> Tensor:
    tokens, auto = gr.tokenize(sentence)
    parses = parse(tokens, grammar, group or auto)
    if not parses:
        raise SemanticsError("no parse for {!r}".format(sentence))
    return evaluate(parses[0], model)


def bundled_model(name: str):
    """``'strict'`` or ``'graded'``: the shipped word models and their grammar."""
    return load_word_model(MODELS.joinpath(name, "model.manifest"))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return "{} {}: {}".format("PASS" if self.passed else "FAIL", self.name, self.detail)


def _close(a, b, tol):
    return bool(np.max(np.abs(np.asarray(a, float) - np.asarray(b, float))) <= tol)


def check_dim_audit(limit: int = 6) -> Check:
    bad = []
    for m in range(1, limit + 1):
        for n in range(1, limit + 1):
            for p in range(1, limit + 1):
                a = dim_audit(m, n, p)
                if not a.tensor_equal or a.direct_sum_equal != (p == 1):
                    bad.append((m, n, p))
    return Check("A4 ambiguity audit", not bad,
                 "{} triples in [1..{}]^3, {} violations".format(limit ** 3, limit, len(bad)))


def check_bracketing(trials: int = 100, seed: int = 0, tol: float = 1e-9) -> Check:
    """
    Subject . verb . object with the verb of type ``n^r s n^l``: both
    bracketings (and the full contraction) agree.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = rng.uniform(-1, 1, 3)
        y = rng.uniform(-1, 1, (3, 2, 3))
        z = rng.uniform(-1, 1, 3)
        labels = [[0], [0, 1, 2], [2]]
        results = [contract_network([x, y, z], labels, [1], order)
                   for order in ([0, 2], [2, 0])]
        results.append(np.einsum("a,asb,b->s", x, y, z))
        results.append((x @ y.reshape(3, 6)).reshape(2, 3) @ z)
        results.append(np.tensordot(x, y @ z, axes=1))
        for r in results[1:]:
            worst = max(worst, float(np.max(np.abs(r - results[0]))))
    return Check("A5 bracketing invariance", worst <= tol,
                 "{} random triples, max deviation {:.3g} (tol {:g})".format(trials, worst, tol))


def check_truth(strict: Tuple[WordModel, GrammarSpec], graded: Tuple[WordModel, GrammarSpec],
                p: Pipeline, tol: float = 1e-12) -> Check:
    ms, gs = strict
    mg, gg = graded
    tall = meaning("tall lumberjacks drink .", gs, ms).values
    red = meaning("red lumberjacks drink .", gs, ms).values
    mu_ex = p.mu @ np.array(LUMBERJACKS_DRINK)
    drink = meaning("lumberjacks drink .", gg, mg).values
    may = meaning("lumberjacks may drink .", gg, mg).values
    ok = (_close(tall, TALL_TRUE, tol) and _close(red, RED_FALSE, tol)
          and _close(mu_ex, MAY_LUMBERJACKS_DRINK, tol)
          and _close(drink, LUMBERJACKS_DRINK, tol) and _close(may, MAY_LUMBERJACKS_DRINK, tol))
    return Check("A6 truth pipeline", ok,
                 "tall={} red={} mu(0.8,0.2)={} graded drink={} may={}".format(
                     _fmt(tall), _fmt(red), _fmt(mu_ex), _fmt(drink), _fmt(may)))


def check_questions(models: Sequence[Tuple[WordModel, GrammarSpec]], tol: float = 1e-12) -> Check:
    worst = 0.0
    for model, g in models:
        base = meaning("lumberjacks may drink .", g, model).values
        for q in ("may lumberjacks drink ?", "who may drink ?"):
            worst = max(worst, float(np.max(np.abs(meaning(q, g, model).values - base))))
    return Check("A7 question equivalence", worst <= tol,
                 "max deviation {:.3g} (tol {:g})".format(worst, tol))


def check_distributional(p: Pipeline, seed: int = 0) -> Check:
    c_lj = cosine(p.lumberjack, FASHION_AXIS)
    c_red = cosine(p.red_lumberjack, FASHION_AXIS)
    c_tall = cosine(p.tall_lumberjack, FASHION_AXIS)
    residual = float(np.max(np.abs(p.red @ p.lumberjack - p.red_lumberjack)))
    rng = np.random.default_rng(seed)
    X, Y = rng.normal(size=(5, 3)), rng.normal(size=(5, 2))
    learnt = learn_linear_map(list(zip(X, Y)))
    oracle = np.linalg.solve(X.T @ X, X.T @ Y).T
    multi = float(np.max(np.abs(learnt - oracle)))
    ok = (_close(p.lumberjack, (0, 91, 6), 0) and c_red > c_lj and c_tall < c_lj
          and residual < 1e-9 and multi <= 1e-6)
    return Check("A8 distributional goldens", ok,
                 "lumberjack={} cos_fashion red={:.4f} > plain={:.4f} > tall={:.4f}; "
                 "single-pair residual {:.3g}; multi-pair vs normal equations {:.3g}".format(
                     _fmt(p.lumberjack), c_red, c_lj, c_tall, residual, multi))


def _fmt(v) -> str:
    return "(" + ", ".join("{:.10g}".format(float(x) + 0.0) for x in np.ravel(v)) + ")"


def lombard_mismatch(fx: Fixtures, clustered: CooccurrenceTable) -> Optional[str]:
    computed = clustered.row("lombard")
    printed = fx.printed.row("lombard")
    if np.array_equal(computed, printed):
        return None
    return "lombard clustered row: printed {} but the raw counts sum to {}".format(
        _fmt(printed), _fmt(computed))


def run_checks(fx: Optional[Fixtures] = None) -> Tuple[Pipeline, List[Check]]:
    fx = fx or Fixtures.load()
    p = run_pipeline(fx)
    g = gr.builtin_lumberjack()
    strict = (build_model(p, p.drink_strict, g), g)
    graded = (build_model(p, p.drink_graded, g), g)
    checks = [check_dim_audit(), check_bracketing(), check_truth(strict, graded, p),
              check_questions([strict, graded]), check_distributional(p)]
    return p, checks


def write_models(directory, fx: Optional[Fixtures] = None,
                 grammar_ref: str = "../../lumberjack.grammar") -> Dict[str, Path]:
    """Write the strict and graded word models under ``directory``."""
    from .semantics import write_word_model
    p = run_pipeline(fx or Fixtures.load())
    out = {}
    for name, drink in (("strict", p.drink_strict), ("graded", p.drink_graded)):
        out[name] = write_word_model(Path(directory) / name, build_model(p, drink), grammar_ref)
    return out
