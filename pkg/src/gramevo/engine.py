"""Generational evolutionary loop over genomes.

Randomness discipline: one seeded numpy Generator drives every stochastic
decision in a fixed order.  First population init (with its invalidity
re-draws), then per breeding round: two tournament draws, the crossover
rate/cut draws, and the per-child mutation draws.  Fitness evaluation
never touches the stream, so results cannot depend on evaluation order.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateLength, EmptyDataset, FormulaSyntaxError
from .expr import ExprNode, evaluate_array, parse_formula
from .grammar import Grammar
from .mapping import Genome, map_genome
from .primes import Dataset

# worst possible fitness: orders after every finite MSE under minimization
WORST_FITNESS = math.inf


@dataclass(frozen=True)
class Individual:
    """One scored genome.  valid ⇔ mapping succeeded and fitness is finite."""

    genome: Genome
    phenotype: Optional[str]
    expr: Optional[ExprNode]
    fitness: float
    valid: bool
    codons_used: int


@dataclass(frozen=True)
class EvolutionConfig:
    population_size: int = 500
    generations: int = 50
    genome_length: int = 200
    codon_max: int = 100_000
    max_wraps: int = 1
    max_depth: int = 17
    tournament_size: int = 2
    crossover_rate: float = 0.75
    mutation_rate: float = 0.01
    elitism_count: int = 1
    rng_seed: int = 0
    invalid_retries: int = 10

    def __post_init__(self):
        positive = {
            "population_size": self.population_size,
            "generations": self.generations,
            "genome_length": self.genome_length,
            "codon_max": self.codon_max,
            "max_depth": self.max_depth,
            "tournament_size": self.tournament_size,
        }
        for field_name, value in positive.items():
            if value < 1:
                raise ValueError(f"{field_name} must be positive, got {value}")
        for field_name, value in (
            ("max_wraps", self.max_wraps),
            ("elitism_count", self.elitism_count),
            ("invalid_retries", self.invalid_retries),
        ):
            if value < 0:
                raise ValueError(f"{field_name} must be non-negative, got {value}")
        for field_name, value in (
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{field_name} must lie in [0, 1], got {value}")
        if self.tournament_size > self.population_size:
            raise ValueError("tournament_size cannot exceed population_size")
        if self.elitism_count > self.population_size:
            raise ValueError("elitism_count cannot exceed population_size")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best_fitness: float
    mean_fitness: float
    invalid_count: int
    best_phenotype: str


@dataclass(frozen=True)
class RunResult:
    best: Individual
    history: tuple[GenerationRecord, ...]
    elapsed_seconds: float
    config_echo: EvolutionConfig


def fitness_mse(expr: ExprNode, dataset: Dataset) -> float:
    """Mean squared error over the dataset; WORST_FITNESS if non-finite."""
    if len(dataset) == 0:
        raise EmptyDataset("cannot score against an empty dataset")
    predictions = evaluate_array(expr, dataset.xs)
    with np.errstate(all="ignore"):
        residuals = predictions - dataset.ys
        mse = float(np.mean(residuals * residuals))
    if not math.isfinite(mse):
        return WORST_FITNESS
    return mse


def score_genome(
    genome: Genome,
    grammar: Grammar,
    dataset: Dataset,
    max_wraps: int,
    max_depth: int,
) -> Individual:
    """Map, parse, and score one genome into an Individual."""
    result = map_genome(grammar, genome, max_wraps=max_wraps, max_depth=max_depth)
    if not result.valid:
        return Individual(genome, None, None, WORST_FITNESS, False,
                          result.codons_used)
    try:
        expr = parse_formula(result.phenotype)
    except FormulaSyntaxError:
        # only reachable with grammars whose language is not formula syntax
        return Individual(genome, result.phenotype, None, WORST_FITNESS, False,
                          result.codons_used)
    fitness = fitness_mse(expr, dataset)
    valid = math.isfinite(fitness)
    return Individual(genome, result.phenotype, expr,
                      fitness if valid else WORST_FITNESS, valid,
                      result.codons_used)


def _random_genome(config: EvolutionConfig, rng: np.random.Generator) -> Genome:
    codons = rng.integers(0, config.codon_max, size=config.genome_length)
    return Genome(tuple(codons.tolist()), codon_max=config.codon_max)


def init_population(
    config: EvolutionConfig,
    grammar: Grammar,
    dataset: Dataset,
    rng: np.random.Generator,
) -> list[Individual]:
    """Uniform random genomes, scored; invalid draws retried a bounded number
    of times and then kept as-is with worst fitness."""
    population: list[Individual] = []
    for _ in range(config.population_size):
        individual = score_genome(
            _random_genome(config, rng), grammar, dataset,
            config.max_wraps, config.max_depth,
        )
        retries = 0
        while not individual.valid and retries < config.invalid_retries:
            individual = score_genome(
                _random_genome(config, rng), grammar, dataset,
                config.max_wraps, config.max_depth,
            )
            retries += 1
        population.append(individual)
    return population


def tournament_select(
    population: list[Individual],
    k: int,
    rng: np.random.Generator,
) -> Individual:
    """k uniform draws with replacement; minimal fitness wins, earliest draw
    breaks ties."""
    if not population:
        raise ValueError("cannot select from an empty population")
    if k < 1 or k > len(population):
        raise ValueError("tournament size must lie in [1, population size]")
    draws = rng.integers(0, len(population), size=k)
    winner = population[draws[0]]
    for index in draws[1:]:
        contender = population[index]
        if contender.fitness < winner.fitness:
            winner = contender
    return winner


def crossover(
    a: Genome,
    b: Genome,
    rate: float,
    rng: np.random.Generator,
) -> tuple[Genome, Genome]:
    """One-point tail swap with probability ``rate``.

    Genomes too short to cut trigger a DegenerateLength warning and come
    back unchanged, before any randomness is consumed.
    """
    if a.codon_max != b.codon_max:
        raise ValueError("parents must share codon_max")
    min_len = min(len(a), len(b))
    if min_len < 2:
        warnings.warn("genomes too short for crossover", DegenerateLength,
                      stacklevel=2)
        return a, b
    if rng.random() >= rate:
        return a, b
    cut = int(rng.integers(1, min_len))
    child_a = Genome(a.codons[:cut] + b.codons[cut:], codon_max=a.codon_max)
    child_b = Genome(b.codons[:cut] + a.codons[cut:], codon_max=a.codon_max)
    return child_a, child_b


def mutate(g: Genome, rate: float, rng: np.random.Generator) -> Genome:
    """Each codon independently redrawn uniformly with probability ``rate``.

    Always consumes the same amount of randomness for a given length, so
    downstream draws do not depend on which codons happened to mutate.
    """
    n = len(g)
    mask = rng.random(n) < rate
    redraws = rng.integers(0, g.codon_max, size=n)
    if not mask.any():
        return g
    codons = np.array(g.codons, dtype=np.int64)
    mutated = np.where(mask, redraws, codons)
    return Genome(tuple(mutated.tolist()), codon_max=g.codon_max)


def _record_generation(generation: int, population: list[Individual]) -> GenerationRecord:
    best = population[0]
    for individual in population[1:]:
        if individual.fitness < best.fitness:
            best = individual
    valid_fitnesses = [i.fitness for i in population if i.valid]
    if valid_fitnesses:
        mean = sum(valid_fitnesses) / len(valid_fitnesses)
    else:
        mean = WORST_FITNESS
    return GenerationRecord(
        generation=generation,
        best_fitness=best.fitness,
        mean_fitness=mean,
        invalid_count=sum(1 for i in population if not i.valid),
        best_phenotype=best.phenotype or "",
    )


def evolve(
    config: EvolutionConfig,
    grammar: Grammar,
    dataset: Dataset,
    progress_sink: Optional[Callable[[GenerationRecord], None]] = None,
) -> RunResult:
    """Run the full generational loop and return the best-ever individual.

    ``history`` holds one record per generation, the first being the freshly
    initialized population; ``generations`` records means ``generations - 1``
    breeding rounds.
    """
    if len(dataset) == 0:
        raise EmptyDataset("cannot evolve against an empty dataset")
    start = time.perf_counter()
    rng = np.random.default_rng(config.rng_seed)

    population = init_population(config, grammar, dataset, rng)
    history: list[GenerationRecord] = []
    best_ever: Optional[Individual] = None

    for generation in range(config.generations):
        record = _record_generation(generation, population)
        history.append(record)
        if progress_sink is not None:
            progress_sink(record)
        for individual in population:
            if best_ever is None or individual.fitness < best_ever.fitness:
                best_ever = individual
        if generation == config.generations - 1:
            break

        # stable sort keeps the earliest of equally fit individuals in front
        elites = sorted(population, key=lambda i: i.fitness)[: config.elitism_count]
        offspring: list[Individual] = list(elites)
        while len(offspring) < config.population_size:
            parent_a = tournament_select(population, config.tournament_size, rng)
            parent_b = tournament_select(population, config.tournament_size, rng)
            children = crossover(
                parent_a.genome, parent_b.genome, config.crossover_rate, rng
            )
            for child in children:
                if len(offspring) >= config.population_size:
                    break
                mutated = mutate(child, config.mutation_rate, rng)
                offspring.append(
                    score_genome(mutated, grammar, dataset,
                                 config.max_wraps, config.max_depth)
                )
        population = offspring

    elapsed = time.perf_counter() - start
    assert best_ever is not None
    return RunResult(
        best=best_ever,
        history=tuple(history),
        elapsed_seconds=elapsed,
        config_echo=config,
    )
