"""Predictive text entry for reduced-key keypads.

Train a Bayesian letter model from text, compile it into a per-context key
reordering table, and evaluate keystroke savings against multi-tap entry.
"""

from .bbn import (
    Model,
    NetworkStructure,
    VariableSpec,
    bayes_factor,
    default_xi,
    fit_cpt,
    learn_structure,
    log_marginal_likelihood,
    train_model,
    variable_specs,
)
from .compiler import CompileReport, VerifyReport, compile_table, verify_table
from .corpus import CountProvider, CountStore, Sample, count, extract_samples, normalize
from .keypad import (
    Alphabet,
    KeypadLayout,
    PermutationCode,
    ReorderingTable,
    TableFormatError,
    builtin_layout,
    decode_permutation,
    encode_permutation,
    export_json,
    read_binary,
    table_from_json,
    table_lookup,
    write_binary,
)
from .klm import KlmParams, compare, default_params, t_ipreti, t_stem
from .simulate import (
    PhraseReport,
    ReplayOutcome,
    SimulationResult,
    evaluate,
    first_guess_accuracy,
    ipreti_replay,
    stem_count,
    twokey_count,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "CompileReport",
    "CountProvider",
    "CountStore",
    "KeypadLayout",
    "KlmParams",
    "Model",
    "NetworkStructure",
    "PermutationCode",
    "PhraseReport",
    "ReorderingTable",
    "ReplayOutcome",
    "Sample",
    "SimulationResult",
    "TableFormatError",
    "VariableSpec",
    "VerifyReport",
    "bayes_factor",
    "builtin_layout",
    "compare",
    "compile_table",
    "count",
    "decode_permutation",
    "default_params",
    "default_xi",
    "encode_permutation",
    "evaluate",
    "export_json",
    "extract_samples",
    "first_guess_accuracy",
    "fit_cpt",
    "ipreti_replay",
    "learn_structure",
    "log_marginal_likelihood",
    "normalize",
    "read_binary",
    "stem_count",
    "t_ipreti",
    "t_stem",
    "table_from_json",
    "table_lookup",
    "train_model",
    "twokey_count",
    "verify_table",
    "write_binary",
]
