"""
Vector space semantics of pregroup derivations.

Basic types map to lists of spaces, a product of types to the tensor
product of their spaces and each adjoint to the dual (factor list
reversed, dual flags toggled).  With a fixed orthonormal basis a dual
space has the dimension of its primal, so flags only serve to check that
every contraction pairs a space with its dual.

A derivation becomes a contraction plan: each link pairs the indices of
its left factor with those of its right factor read backwards.  The
meaning of a sentence is the outer product of its word tensors summed
over every paired index.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .core import PregroupError, SimpleType, Term, TypePoset
from .grammar import GrammarSpec, load_grammar_file, parse_type_expr
from .reducer import Derivation, Parse

Factor = Tuple[str, bool]


class SemanticsError(PregroupError, ValueError):
    pass


class SpaceMismatchError(SemanticsError):
    pass


class MissingTensorError(SemanticsError, KeyError):
    def __init__(self, word: str, term: Term):
        super().__init__(word)
        self.word = word
        self.term = term

    def __str__(self):
        return "no tensor for word {!r} with type {}".format(self.word, self.term)


class SpaceTable(dict):
    """Space name -> dimension, over the reals."""

    def __init__(self, spaces: Mapping[str, int] = (), **kw):
        super().__init__(spaces, **kw)
        for name, dim in self.items():
            if not isinstance(dim, (int, np.integer)) or dim < 1:
                raise SemanticsError("space {!r} needs a positive dimension".format(name))

    def dims(self, factors: Iterable[Factor]) -> Tuple[int, ...]:
        out = []
        for name, _ in factors:
            if name not in self:
                raise SemanticsError("undeclared space {!r}".format(name))
            out.append(int(self[name]))
        return tuple(out)


def _factor_str(f: Factor) -> str:
    return f[0] + ("*" if f[1] else "")


def parse_factor(text: str) -> Factor:
    """``'N*'`` -> ``('N', True)``."""
    return (text[:-1], True) if text.endswith("*") else (text, False)


class BasicInterpretation(dict):
    """
    Basic type name -> tuple of factors.  Order related basic types must
    share their factor list, so that order steps act as identities.
    """

    def __init__(self, mapping: Mapping[str, Sequence], poset: Optional[TypePoset] = None,
                 spaces: Optional[SpaceTable] = None):
        super().__init__()
        for base, factors in mapping.items():
            self[base] = tuple(parse_factor(f) if isinstance(f, str) else (f[0], bool(f[1]))
                               for f in factors)
        if spaces is not None:
            for base, factors in self.items():
                spaces.dims(factors)
        if poset is not None:
            self.validate(poset)

    def validate(self, poset: TypePoset) -> None:
        for a in poset.alphabet:
            if a not in self:
                continue
            for b in poset.upset(a):
                if b != a and b in self and self[a] != self[b]:
                    raise SemanticsError(
                        "{} <= {} but they are interpreted differently ({} vs {})".format(
                            a, b, " ".join(map(_factor_str, self[a])),
                            " ".join(map(_factor_str, self[b]))))


@dataclass(frozen=True)
class Shape:
    factors: Tuple[Factor, ...]
    dims: Tuple[int, ...]

    def __str__(self):
        return " ".join(map(_factor_str, self.factors)) or "1"


def interpret_simple(t: SimpleType, interp: BasicInterpretation) -> Tuple[Factor, ...]:
    try:
        factors = interp[t.base]
    except KeyError:
        raise SemanticsError("no interpretation for basic type {!r}".format(t.base)) from None
    for _ in range(abs(t.z)):
        factors = tuple((name, not dual) for name, dual in reversed(factors))
    return tuple(factors)


def interpret_term(term: Term, interp: BasicInterpretation, spaces: SpaceTable) -> Shape:
    factors = tuple(f for t in term for f in interpret_simple(t, interp))
    return Shape(factors, spaces.dims(factors))


class Tensor:
    """A dense real array together with the factor list it lives in."""

    __slots__ = ("shape", "values")

    def __init__(self, shape: Shape, values):
        values = np.array(values, dtype=float)
        if values.size != int(np.prod(shape.dims, dtype=int)):
            raise SemanticsError("{} values do not fit shape {}".format(values.size, shape.dims))
        if not np.all(np.isfinite(values)):
            raise SemanticsError("tensor values must be finite")
        values = values.reshape(shape.dims)
        values.setflags(write=False)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "values", values)

    def __setattr__(self, key, value):
        raise AttributeError("Tensor is immutable")

    def __repr__(self):
        return "Tensor({}, {})".format(self.shape, self.values.tolist())


class WordModel:
    """Word tensors keyed by (word, term), with their spaces and interpretation."""

    def __init__(self, spaces: SpaceTable, interp: BasicInterpretation,
                 tensors: Mapping[Tuple[str, Term], object] = ()):
        self.spaces = spaces
        self.interp = interp
        self._tensors: Dict[Tuple[str, Term], Tensor] = {}
        for (word, term), value in dict(tensors).items():
            self.add(word, term, value)

    def add(self, word: str, term: Term, value) -> Tensor:
        shape = interpret_term(term, self.interp, self.spaces)
        if isinstance(value, Tensor):
            if value.shape.dims != shape.dims:
                raise SemanticsError("tensor for {!r} has dims {}, type {} needs {}".format(
                    word, value.shape.dims, term, shape.dims))
            value = value.values
        tensor = Tensor(shape, value)
        self._tensors[(word, term)] = tensor
        return tensor

    def tensor(self, word: str, term: Term) -> Tensor:
        for key in ((word, term), (word.lower(), term)):
            if key in self._tensors:
                return self._tensors[key]
        raise MissingTensorError(word, term)

    def items(self):
        return self._tensors.items()

    def __len__(self):
        return len(self._tensors)


@dataclass(frozen=True)
class ContractionPlan:
    """
    Index pairings for one derivation.  Global indices number the factors
    of every term position left to right, starting at 0.
    """
    offsets: Tuple[int, ...]
    factors: Tuple[Factor, ...]
    dims: Tuple[int, ...]
    pairs: Tuple[Tuple[int, int], ...]
    output: Tuple[int, ...]

    @property
    def output_shape(self) -> Shape:
        return Shape(tuple(self.factors[k] for k in self.output),
                     tuple(self.dims[k] for k in self.output))


def contraction_plan(d: Derivation, interp: BasicInterpretation,
                     spaces: SpaceTable) -> ContractionPlan:
    per_pos = [interpret_simple(t, interp) for t in d.term]
    offsets, factors = [], []
    for fl in per_pos:
        offsets.append(len(factors))
        factors.extend(fl)
    pairs = []
    for i, j in d.links:
        left, right = per_pos[i - 1], per_pos[j - 1]
        if len(left) != len(right):
            raise SpaceMismatchError("link {}-{}: {} factors against {}".format(
                i, j, len(left), len(right)))
        for k in range(len(left)):
            kk = len(right) - 1 - k
            a, b = left[k], right[kk]
            if a[0] != b[0] or a[1] == b[1]:
                raise SpaceMismatchError("link {}-{}, factor {}: {} cannot contract with {}".format(
                    i, j, k + 1, _factor_str(a), _factor_str(b)))
            pairs.append((offsets[i - 1] + k, offsets[j - 1] + kk))
    s = d.survivor - 1
    output = tuple(range(offsets[s], offsets[s] + len(per_pos[s])))
    return ContractionPlan(tuple(offsets), tuple(factors), spaces.dims(factors),
                           tuple(pairs), output)


def _word_tensors(parse: Parse, model: WordModel) -> List[np.ndarray]:
    return [model.tensor(w, t).values for w, t in zip(parse.tokens, parse.choice)]


def _labels(plan: ContractionPlan):
    label = list(range(len(plan.factors)))
    for a, b in plan.pairs:
        label[b] = label[a]
    # compact to 0..k-1; einsum accepts at most 52 distinct labels
    remap = {l: k for k, l in enumerate(dict.fromkeys(label))}
    return [remap[l] for l in label], [remap[label[k]] for k in plan.output]


def evaluate(parse: Parse, model: WordModel) -> Tensor:
    """Meaning of a parse: word tensors contracted along the derivation's links."""
    plan = contraction_plan(parse.derivation, model.interp, model.spaces)
    arrays = _word_tensors(parse, model)
    labels, out = _labels(plan)
    if len(set(labels)) > 52:
        values = contract_network(arrays, _split_labels(labels, arrays), out)
    else:
        operands = []
        pos = 0
        for arr in arrays:
            operands += [arr, labels[pos:pos + arr.ndim]]
            pos += arr.ndim
        values = np.einsum(*operands, out, optimize="greedy")
    return Tensor(plan.output_shape, values)


def _split_labels(labels, arrays):
    out, pos = [], 0
    for arr in arrays:
        out.append(labels[pos:pos + arr.ndim])
        pos += arr.ndim
    return out


def reference_evaluate(parse: Parse, model: WordModel) -> np.ndarray:
    """
    Outer product of every word tensor, then one diagonal trace per
    paired index.  Exponential in memory; for checking :func:`evaluate`.
    """
    plan = contraction_plan(parse.derivation, model.interp, model.spaces)
    big = np.array(1.0)
    for arr in _word_tensors(parse, model):
        big = np.multiply.outer(big, arr)
    axes = list(range(len(plan.factors)))
    for a, b in plan.pairs:
        ia, ib = axes.index(a), axes.index(b)
        big = np.trace(big, axis1=ia, axis2=ib)
        axes = [x for x in axes if x not in (a, b)]
    return np.transpose(big, [axes.index(k) for k in plan.output])


def contract_network(arrays: Sequence[np.ndarray], labels: Sequence[Sequence[int]],
                     output: Sequence[int], order: Optional[Sequence[int]] = None) -> np.ndarray:
    """
    Contract a tensor network one shared label at a time.

    ``labels[k]`` names the axes of ``arrays[k]``; a label occurring twice
    is summed over, ``output`` lists the free labels in result order.
    ``order`` is the order in which summed labels are eliminated, by
    default ascending.  Any order gives the same result.
    """
    nodes = [(np.asarray(a, dtype=float), list(l)) for a, l in zip(arrays, labels)]
    counts: Dict[int, int] = {}
    for l in labels:
        for x in l:
            counts[x] = counts.get(x, 0) + 1
    if any(c > 2 for c in counts.values()):
        raise ValueError("a label may occur at most twice")
    summed = sorted(x for x, c in counts.items() if c == 2)
    if order is None:
        order = summed
    elif sorted(order) != summed:
        raise ValueError("order must list each summed label once")
    for x in order:
        holders = [k for k, (_, l) in enumerate(nodes) if x in l]
        if not holders:
            continue  # already summed along with an earlier label
        joined = [nodes[k] for k in holders]
        la = [y for _, l in joined for y in l]
        new = [y for y in la if la.count(y) == 1]
        operands = []
        for arr, l in joined:
            operands += [arr, l]
        merged = np.einsum(*operands, new)
        nodes = [n for k, n in enumerate(nodes) if k not in holders] + [(merged, new)]
    operands = []
    for arr, l in nodes:
        operands += [arr, l]
    return np.einsum(*operands, list(output))


def cosine(u, v) -> float:
    a = np.asarray(u.values if isinstance(u, Tensor) else u, dtype=float)
    b = np.asarray(v.values if isinstance(v, Tensor) else v, dtype=float)
    if a.shape != b.shape:
        raise SemanticsError("cosine of differently shaped tensors {} and {}".format(
            a.shape, b.shape))
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise SemanticsError("cosine with a zero vector is undefined")
    return float(np.clip(np.dot(a.ravel(), b.ravel()) / (na * nb), -1.0, 1.0))


def lift_auxiliary(mu, n_dim: int, variant: str = "declarative",
                   noun: str = "N", sentence: str = "S") -> Tensor:
    """
    Tensor of an auxiliary that evaluates its verb on the subject and then
    applies ``mu`` to the sentence.

    ``declarative`` has type ``pi3^r s1 j^l`` (factors N* S S* N),
    ``yesno`` has type ``q1 i^l pi^l`` (factors S S* N N*).
    """
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 2 or mu.shape[0] != mu.shape[1]:
        raise SemanticsError("mu must be a square matrix, got shape {}".format(mu.shape))
    s_dim = mu.shape[0]
    eye = np.eye(n_dim)
    if variant == "declarative":
        values = np.einsum("ad,bc->abcd", eye, mu)
        factors = ((noun, True), (sentence, False), (sentence, True), (noun, False))
        dims = (n_dim, s_dim, s_dim, n_dim)
    elif variant == "yesno":
        values = np.einsum("ab,cd->abcd", mu, eye)
        factors = ((sentence, False), (sentence, True), (noun, False), (noun, True))
        dims = (s_dim, s_dim, n_dim, n_dim)
    else:
        raise ValueError("variant must be 'declarative' or 'yesno'")
    return Tensor(Shape(factors, dims), values)


def lift_wh_subject(v, s_dim: int, n_dim: Optional[int] = None,
                    noun: str = "N", sentence: str = "S") -> Tensor:
    """
    Tensor of a subject wh-word of type ``qbar s1^l pi3`` (factors S S* N):
    identity on the sentence space times the answer's subject vector.
    """
    v = np.asarray(v, dtype=float).ravel()
    if n_dim is not None and v.shape[0] != n_dim:
        raise SemanticsError("subject vector has dimension {}, expected {}".format(
            v.shape[0], n_dim))
    values = np.einsum("tu,m->tum", np.eye(s_dim), v)
    return Tensor(Shape(((sentence, False), (sentence, True), (noun, False)),
                        (s_dim, s_dim, v.shape[0])), values)


@dataclass(frozen=True)
class DimAudit:
    """Dimensions of the two bracketings of ``x . y . z^l``."""
    m: int
    n: int
    p: int

    def __post_init__(self):
        if min(self.m, self.n, self.p) < 1:
            raise ValueError("dimensions must be positive")

    @property
    def tensor_left(self) -> int:
        return self.p * (self.m * self.n)

    @property
    def tensor_right(self) -> int:
        return self.m * (self.p * self.n)

    @property
    def direct_sum_left(self) -> int:
        return self.p * (self.m + self.n)

    @property
    def direct_sum_right(self) -> int:
        return self.m + self.p * self.n

    @property
    def tensor_equal(self) -> bool:
        return self.tensor_left == self.tensor_right

    @property
    def direct_sum_equal(self) -> bool:
        return self.direct_sum_left == self.direct_sum_right

    def rows(self) -> List[Tuple[str, int, int, bool]]:
        return [("tensor", self.tensor_left, self.tensor_right, self.tensor_equal),
                ("direct_sum", self.direct_sum_left, self.direct_sum_right,
                 self.direct_sum_equal)]


def dim_audit(m: int, n: int, p: int) -> DimAudit:
    return DimAudit(m, n, p)


# --- files -------------------------------------------------------------------

def read_tensor_file(path) -> np.ndarray:
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    head = lines[0].split()
    if not head or head[0] != "shape":
        raise SemanticsError("{}: first line must be 'shape d1 ... dk'".format(path))
    dims = tuple(int(x) for x in head[1:])
    values = [float(x) for line in lines[1:] for x in line.split()]
    if len(values) != int(np.prod(dims, dtype=int)):
        raise SemanticsError("{}: {} values for shape {}".format(path, len(values), dims))
    return np.array(values).reshape(dims)


def write_tensor_file(path, values) -> None:
    values = np.asarray(values, dtype=float)
    flat = values.ravel()
    width = values.shape[-1] if values.ndim else 1
    rows = [" ".join(repr(float(x)) for x in flat[k:k + width])
            for k in range(0, flat.size, width)]
    Path(path).write_text("shape {}\n{}\n".format(
        " ".join(map(str, values.shape)), "\n".join(rows)), encoding="utf-8")


def load_word_model(path, grammar: Optional[GrammarSpec] = None):
    """
    Read a word-model manifest.  Returns ``(model, grammar)``.

    Manifest lines are tab separated ``word, type-expr, tensor-file``
    entries, or whitespace separated directives::

        grammar lumberjack.grammar
        space N 3
        interp i N* S
    """
    path = Path(path)
    base = path.parent
    spaces: Dict[str, int] = {}
    interp: Dict[str, List[str]] = {}
    entries = []
    grammar_path = None
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) == 3:
            entries.append((lineno, cols[0].strip(), cols[1].strip(), cols[2].strip()))
            continue
        parts = line.split()
        if parts[0] == "space" and len(parts) == 3:
            spaces[parts[1]] = int(parts[2])
        elif parts[0] == "interp" and len(parts) >= 3:
            interp[parts[1]] = parts[2:]
        elif parts[0] == "grammar" and len(parts) == 2:
            grammar_path = base / parts[1]
        else:
            raise SemanticsError("{}:{}: cannot read {!r}".format(path, lineno, raw))
    if grammar is None:
        if grammar_path is None:
            raise SemanticsError("{}: no grammar given and none named in the manifest".format(path))
        grammar = load_grammar_file(grammar_path)
    table = SpaceTable(spaces)
    bi = BasicInterpretation(interp, poset=grammar.poset, spaces=table)
    model = WordModel(table, bi)
    for lineno, word, expr, fname in entries:
        term = parse_type_expr(expr, alphabet=grammar.poset)
        model.add(word, term, read_tensor_file(base / fname))
    return model, grammar


def write_word_model(directory, model: WordModel, grammar_ref: Optional[str] = None,
                     name: str = "model.manifest") -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lines = []
    if grammar_ref:
        lines.append("grammar {}".format(grammar_ref))
    for space, dim in model.spaces.items():
        lines.append("space {} {}".format(space, dim))
    for base, factors in model.interp.items():
        lines.append("interp {} {}".format(base, " ".join(map(_factor_str, factors))))
    used = set()
    for (word, term), tensor in model.items():
        stem = word + "_" + "_".join(
            f.base + ("l" * -f.z if f.z < 0 else "r" * f.z) for f in term)
        fname = stem + ".tensor"
        k = 1
        while fname in used:
            k += 1
            fname = "{}_{}.tensor".format(stem, k)
        used.add(fname)
        write_tensor_file(directory / fname, tensor.values)
        lines.append("{}\t{}\t{}".format(word, term, fname))
    out = directory / name
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out


DEFAULT_SPACES = {"N": 3, "S": 2}


def english_interpretation(poset: Optional[TypePoset] = None) -> BasicInterpretation:
    mapping = {}
    for b in ["n", "n0", "n1", "n2", "nbar", "nbar1", "nbar2", "pi", "o", "a", "abar"] + \
            ["pi%d" % k for k in range(1, 7)]:
        mapping[b] = ["N"]
    for b in ["s", "s1", "s2", "q", "q1", "q2", "qbar"]:
        mapping[b] = ["S"]
    mapping["i"] = mapping["j"] = ["N*", "S"]
    return BasicInterpretation(mapping, poset=poset)
