"""Command-line front end: dataset generation, evolution runs, formula eval.

Subcommands
    gen-data   write a regression dataset file
    evolve     run the engine and export history.csv / best.txt / predictions.csv
    eval       evaluate a formula at points and optionally against a dataset

Seed precedence for `evolve`: --seed flag, then config file, then the
GRAMEVO_SEED environment variable, then a fresh random seed.  Whichever
wins is echoed into best.txt so any run can be reproduced afterwards.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from .engine import EvolutionConfig, GenerationRecord, evolve, fitness_mse
from .errors import ConfigError, GramevoError
from .expr import evaluate, evaluate_array, format_expr, parse_formula
from .grammar import parse_grammar
from .primes import (
    Dataset,
    DatasetMode,
    build_dataset,
    read_dataset,
    sieve,
    write_dataset,
)

_INT_KEYS = {
    "population_size", "generations", "genome_length", "codon_max",
    "max_wraps", "max_depth", "tournament_size", "elitism_count",
    "rng_seed", "invalid_retries",
}
_FLOAT_KEYS = {"crossover_rate", "mutation_rate"}
_PATH_KEYS = {"grammar_path", "dataset_path", "output_dir"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _PATH_KEYS


def _fmt_num(v: float) -> str:
    """Shortest exact decimal; integer-valued floats without a fraction."""
    v = float(v)
    if not math.isfinite(v):
        return repr(v)
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def load_run_config(path) -> dict:
    """Parse a flat `key = value` run-configuration file.

    Blank lines and `#` comments are allowed; unknown keys are an error.
    """
    values: dict = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key = key.strip()
        value = value.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            else:
                values[key] = value
        except ValueError:
            raise ConfigError(
                f"{path}:{lineno}: bad value {value!r} for {key}"
            ) from None
    return values


def _resolve_seed(flag_seed, config_values: dict) -> int:
    if flag_seed is not None:
        return flag_seed
    if "rng_seed" in config_values:
        return config_values["rng_seed"]
    env = os.environ.get("GRAMEVO_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(
                f"GRAMEVO_SEED must be an integer, got {env!r}"
            ) from None
    return int.from_bytes(os.urandom(8), "little")


# --- gen-data ----------------------------------------------------------------

def _auto_limit(mode: DatasetMode, n: int) -> int:
    if mode is DatasetMode.INTEGER_RANGE:
        return n + 1
    if n < 6:
        return 15
    # upper bound on the n-th prime: n(ln n + ln ln n) for n >= 6
    return int(math.ceil(n * (math.log(n) + math.log(math.log(n)))))


def cmd_gen_data(args) -> int:
    mode = DatasetMode(args.mode)
    limit = args.limit if args.limit is not None else _auto_limit(mode, args.n)
    table = sieve(limit)
    dataset = build_dataset(mode, args.n, table)
    write_dataset(dataset, args.out)
    xs = dataset.xs
    print(
        f"wrote {len(dataset)} points to {args.out} "
        f"(x from {_fmt_num(xs[0])} to {_fmt_num(xs[-1])})"
    )
    return 0


# --- evolve ------------------------------------------------------------------

_OVERRIDE_KEYS = [
    ("population", "population_size"),
    ("generations", "generations"),
    ("genome_length", "genome_length"),
    ("codon_max", "codon_max"),
    ("max_wraps", "max_wraps"),
    ("max_depth", "max_depth"),
    ("tournament_size", "tournament_size"),
    ("crossover_rate", "crossover_rate"),
    ("mutation_rate", "mutation_rate"),
    ("elitism", "elitism_count"),
    ("invalid_retries", "invalid_retries"),
]


def _write_history(path: Path, history) -> None:
    lines = ["generation,best_fitness,mean_fitness,invalid_count"]
    for rec in history:
        lines.append(
            f"{rec.generation},{_fmt_num(rec.best_fitness)},"
            f"{_fmt_num(rec.mean_fitness)},{rec.invalid_count}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


def _write_predictions(path: Path, dataset: Dataset, best) -> None:
    if best.expr is not None:
        predictions = evaluate_array(best.expr, dataset.xs)
    else:
        predictions = np.full(len(dataset), float("nan"))
    lines = ["x,y_true,y_pred"]
    for x, y, p in zip(dataset.xs.tolist(), dataset.ys.tolist(),
                       predictions.tolist()):
        lines.append(f"{_fmt_num(x)},{_fmt_num(y)},{_fmt_num(p)}")
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


def _write_best(path: Path, result, grammar_path, dataset_path) -> None:
    best = result.best
    phenotype = format_expr(best.expr) if best.expr is not None else (
        best.phenotype or ""
    )
    config = result.config_echo
    lines = [
        f"phenotype = {phenotype}",
        f"fitness = {_fmt_num(best.fitness)}",
        f"population_size = {config.population_size}",
        f"generations = {config.generations}",
        f"genome_length = {config.genome_length}",
        f"codon_max = {config.codon_max}",
        f"max_wraps = {config.max_wraps}",
        f"max_depth = {config.max_depth}",
        f"tournament_size = {config.tournament_size}",
        f"crossover_rate = {_fmt_num(config.crossover_rate)}",
        f"mutation_rate = {_fmt_num(config.mutation_rate)}",
        f"elitism_count = {config.elitism_count}",
        f"rng_seed = {config.rng_seed}",
        f"invalid_retries = {config.invalid_retries}",
        f"grammar_path = {grammar_path}",
        f"dataset_path = {dataset_path}",
        # elapsed stays last so the rest of the file is run-to-run identical
        f"elapsed_seconds = {result.elapsed_seconds:.3f}",
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_evolve(args) -> int:
    file_values = load_run_config(args.config) if args.config else {}

    grammar_path = args.grammar or file_values.get("grammar_path")
    dataset_path = args.dataset or file_values.get("dataset_path")
    output_dir = args.output_dir or file_values.get("output_dir")
    if not grammar_path:
        raise ConfigError("no grammar given (use --grammar or grammar_path)")
    if not dataset_path:
        raise ConfigError("no dataset given (use --dataset or dataset_path)")
    if not output_dir:
        raise ConfigError("no output dir given (use --output-dir or output_dir)")

    settings = {
        key: file_values[key]
        for key in file_values
        if key not in _PATH_KEYS and key != "rng_seed"
    }
    for arg_name, config_key in _OVERRIDE_KEYS:
        value = getattr(args, arg_name)
        if value is not None:
            settings[config_key] = value
    settings["rng_seed"] = _resolve_seed(args.seed, file_values)
    try:
        config = EvolutionConfig(**settings)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    grammar = parse_grammar(Path(grammar_path).read_text(encoding="utf-8"))
    dataset = read_dataset(dataset_path)

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)

    def progress(record: GenerationRecord) -> None:
        print(
            f"gen {record.generation:4d}  "
            f"best {_fmt_num(record.best_fitness)}  "
            f"mean {_fmt_num(record.mean_fitness)}  "
            f"invalid {record.invalid_count}"
        )

    result = evolve(config, grammar, dataset, progress_sink=progress)

    _write_history(out / "history.csv", result.history)
    _write_best(out / "best.txt", result, grammar_path, dataset_path)
    _write_predictions(out / "predictions.csv", dataset, result.best)
    print(
        f"best fitness {_fmt_num(result.best.fitness)} "
        f"after {config.generations} generations "
        f"({result.elapsed_seconds:.1f}s); outputs in {out}"
    )
    return 0


# --- eval --------------------------------------------------------------------

def cmd_eval(args) -> int:
    if args.formula is not None:
        text = args.formula
    else:
        text = Path(args.formula_file).read_text(encoding="utf-8").strip()
    expr = parse_formula(text)
    for x in args.points:
        print(f"{_fmt_num(x)}\t{_fmt_num(evaluate(expr, x))}")
    if args.dataset:
        dataset = read_dataset(args.dataset)
        print(f"mse\t{_fmt_num(fitness_mse(expr, dataset))}")
    return 0


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gramevo",
        description="Grammatical evolution of formulas approximating the "
                    "prime-counting function.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-data", help="write a regression dataset file")
    gen.add_argument("--mode", choices=[m.value for m in DatasetMode],
                     default=DatasetMode.PRIME_INDEXED.value)
    gen.add_argument("--n", type=int, default=1000,
                     help="number of points (default 1000)")
    gen.add_argument("--limit", type=int, default=None,
                     help="sieve limit; derived from --n when omitted")
    gen.add_argument("--out", required=True, help="output file path")
    gen.set_defaults(func=cmd_gen_data)

    evo = sub.add_parser("evolve", help="run evolution and export results")
    evo.add_argument("--config", default=None,
                     help="flat key = value run-configuration file")
    evo.add_argument("--grammar", default=None, help="BNF grammar file")
    evo.add_argument("--dataset", default=None, help="dataset file")
    evo.add_argument("--output-dir", default=None)
    evo.add_argument("--seed", type=int, default=None,
                     help="RNG seed (beats config file and GRAMEVO_SEED)")
    evo.add_argument("--population", type=int, default=None)
    evo.add_argument("--generations", type=int, default=None)
    evo.add_argument("--genome-length", type=int, default=None)
    evo.add_argument("--codon-max", type=int, default=None)
    evo.add_argument("--max-wraps", type=int, default=None)
    evo.add_argument("--max-depth", type=int, default=None)
    evo.add_argument("--tournament-size", type=int, default=None)
    evo.add_argument("--crossover-rate", type=float, default=None)
    evo.add_argument("--mutation-rate", type=float, default=None)
    evo.add_argument("--elitism", type=int, default=None)
    evo.add_argument("--invalid-retries", type=int, default=None)
    evo.set_defaults(func=cmd_evolve)

    ev = sub.add_parser("eval", help="evaluate a formula")
    group = ev.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula", default=None, help="formula text")
    group.add_argument("--formula-file", default=None,
                       help="file holding the formula text")
    ev.add_argument("--points", type=float, nargs="*", default=[],
                    help="x values to evaluate at")
    ev.add_argument("--dataset", default=None,
                    help="dataset file to score MSE against")
    ev.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GramevoError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
