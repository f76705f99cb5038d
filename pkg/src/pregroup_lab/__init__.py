"""Pregroup grammars: reduction search and tensor-contraction meanings."""

from .core import (PregroupError, SimpleType, Term, TypePoset, UndeclaredTypeError, adjoint,
                   contractible, leq_simple)
from .grammar import (GrammarSpec, Lexicon, builtin_english, builtin_lumberjack, load_grammar,
                      load_grammar_file, parse_type_expr, tokenize)
from .reducer import Derivation, LimitExceeded, Limits, Parse, parse, reduce
from .semantics import (Tensor, WordModel, cosine, dim_audit, evaluate, load_word_model)

__all__ = [
    "PregroupError", "SimpleType", "Term", "TypePoset", "UndeclaredTypeError", "adjoint",
    "contractible", "leq_simple", "GrammarSpec", "Lexicon", "builtin_english",
    "builtin_lumberjack", "load_grammar", "load_grammar_file", "parse_type_expr", "tokenize",
    "Derivation", "LimitExceeded", "Limits", "Parse", "parse", "reduce", "Tensor", "WordModel",
    "cosine", "dim_audit", "evaluate", "load_word_model",
]
__version__ = "0.1.0"
