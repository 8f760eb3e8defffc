"""Grammatical evolution of closed-form approximations to the
prime-counting function: BNF grammars, genotype-phenotype mapping,
protected-arithmetic formulas, prime datasets, and a generational engine.
"""

from .engine import (
    WORST_FITNESS,
    EvolutionConfig,
    GenerationRecord,
    Individual,
    RunResult,
    crossover,
    evolve,
    fitness_mse,
    init_population,
    mutate,
    score_genome,
    tournament_select,
)
from .errors import (
    ConfigError,
    DegenerateLength,
    EmptyDataset,
    EmptyProduction,
    FormatError,
    FormulaSyntaxError,
    GramevoError,
    GrammarError,
    GrammarSyntaxError,
    IncompleteTree,
    InfiniteGrammar,
    LimitTooSmall,
    NoRules,
    OutOfTableRange,
    TableTooSmall,
    UndefinedNonterminal,
    UnknownNonterminal,
    UnknownToken,
    UnterminatedNonterminal,
)
from .expr import (
    Binary,
    BinaryOp,
    Const,
    ExprNode,
    Unary,
    UnaryOp,
    Var,
    evaluate,
    evaluate_array,
    evaluate_batch,
    format_expr,
    parse_formula,
)
from .grammar import (
    Grammar,
    Production,
    Symbol,
    format_grammar,
    min_depths,
    parse_grammar,
    production_count,
)
from .mapping import (
    DerivationTree,
    Genome,
    MappingResult,
    MappingStatus,
    map_genome,
    phenotype_of,
    tree_depth,
)
from .primes import (
    Dataset,
    DatasetMode,
    PrimeTable,
    build_dataset,
    prime_pi,
    read_dataset,
    sieve,
    write_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "WORST_FITNESS",
    "EvolutionConfig",
    "GenerationRecord",
    "Individual",
    "RunResult",
    "crossover",
    "evolve",
    "fitness_mse",
    "init_population",
    "mutate",
    "score_genome",
    "tournament_select",
    "ConfigError",
    "DegenerateLength",
    "EmptyDataset",
    "EmptyProduction",
    "FormatError",
    "FormulaSyntaxError",
    "GramevoError",
    "GrammarError",
    "GrammarSyntaxError",
    "IncompleteTree",
    "InfiniteGrammar",
    "LimitTooSmall",
    "NoRules",
    "OutOfTableRange",
    "TableTooSmall",
    "UndefinedNonterminal",
    "UnknownNonterminal",
    "UnknownToken",
    "UnterminatedNonterminal",
    "Binary",
    "BinaryOp",
    "Const",
    "ExprNode",
    "Unary",
    "UnaryOp",
    "Var",
    "evaluate",
    "evaluate_array",
    "evaluate_batch",
    "format_expr",
    "parse_formula",
    "Grammar",
    "Production",
    "Symbol",
    "format_grammar",
    "min_depths",
    "parse_grammar",
    "production_count",
    "DerivationTree",
    "Genome",
    "MappingResult",
    "MappingStatus",
    "map_genome",
    "phenotype_of",
    "tree_depth",
    "Dataset",
    "DatasetMode",
    "PrimeTable",
    "build_dataset",
    "prime_pi",
    "read_dataset",
    "sieve",
    "write_dataset",
]
