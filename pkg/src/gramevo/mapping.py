"""Genotype-to-phenotype mapping: codons drive a leftmost BNF derivation.

Each time the leftmost nonterminal is expanded, the next codon modulo the
number of alternatives for that rule picks the production.  Rules with a
single alternative consume no codon.  When the genome runs out the read
position wraps to the start, a bounded number of times.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import IncompleteTree
from .grammar import Grammar, Symbol


@dataclass(frozen=True)
class Genome:
    """A linear chromosome of non-negative integer codons."""

    codons: tuple[int, ...]
    codon_max: int = 100_000

    def __post_init__(self):
        object.__setattr__(self, "codons", tuple(int(c) for c in self.codons))
        if len(self.codons) == 0:
            raise ValueError("genome must hold at least one codon")
        if self.codon_max < 1:
            raise ValueError("codon_max must be positive")
        for c in self.codons:
            if not 0 <= c < self.codon_max:
                raise ValueError(
                    f"codon {c} outside [0, {self.codon_max})"
                )

    def __len__(self) -> int:
        return len(self.codons)


@dataclass
class DerivationTree:
    """One node of the derivation tree; leaves carry terminals."""

    symbol: Symbol
    production_index: int | None = None
    children: list["DerivationTree"] = field(default_factory=list)
    depth: int = 1


class MappingStatus(enum.Enum):
    VALID = "valid"
    INVALID_DEPTH = "invalid-depth"
    INVALID_WRAPS = "invalid-wraps"


@dataclass(frozen=True)
class MappingResult:
    """Outcome of mapping one genome.  Tree and phenotype exist only if valid."""

    status: MappingStatus
    tree: DerivationTree | None
    phenotype: str | None
    codons_used: int
    wraps_used: int

    @property
    def valid(self) -> bool:
        return self.status is MappingStatus.VALID


def map_genome(
    grammar: Grammar,
    genome: Genome,
    max_wraps: int = 1,
    max_depth: int = 17,
    max_nodes: int = 100_000,
) -> MappingResult:
    """Run the leftmost mod-rule derivation of ``genome`` under ``grammar``."""
    codons = genome.codons
    n = len(codons)
    position = 0          # next read index into the genome
    wraps = 0             # completed restarts so far
    codons_used = 0       # total codon reads, monotone across wraps

    root = DerivationTree(Symbol(grammar.start, is_terminal=False), depth=1)
    # stack of nodes awaiting expansion; leftmost nonterminal on top
    stack: list[DerivationTree] = [root]
    nodes = 1

    while stack:
        node = stack.pop()
        productions = grammar.rules[node.symbol.text]
        if len(productions) == 1:
            choice = 0
        else:
            if position >= n:
                wraps += 1
                if wraps > max_wraps:
                    return MappingResult(
                        MappingStatus.INVALID_WRAPS, None, None,
                        codons_used, wraps - 1,
                    )
                position = 0
            choice = codons[position] % len(productions)
            position += 1
            codons_used += 1
        node.production_index = choice
        children = [
            DerivationTree(sym, depth=node.depth + 1)
            for sym in productions[choice].symbols
        ]
        node.children = children
        nodes += len(children)
        if nodes > max_nodes:
            # runaway growth is treated the same as exceeding the depth bound
            return MappingResult(
                MappingStatus.INVALID_DEPTH, None, None, codons_used, wraps
            )
        # push nonterminal children right-to-left so the leftmost expands next
        for child in reversed(children):
            if not child.symbol.is_terminal:
                stack.append(child)

    if tree_depth(root) > max_depth:
        return MappingResult(
            MappingStatus.INVALID_DEPTH, None, None, codons_used, wraps
        )
    return MappingResult(
        MappingStatus.VALID, root, phenotype_of(root), codons_used, wraps
    )


def phenotype_of(tree: DerivationTree) -> str:
    """Concatenate the terminal leaves of a finished derivation tree."""
    parts: list[str] = []
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.children:
            stack.extend(reversed(node.children))
        elif node.symbol.is_terminal:
            parts.append(node.symbol.text)
        else:
            raise IncompleteTree(
                f"unexpanded nonterminal <{node.symbol.text}> in tree"
            )
    return "".join(parts)


def tree_depth(tree: DerivationTree) -> int:
    """Depth of the tree counting the root as 1; recomputed, not cached."""
    deepest = 0
    stack: list[tuple[DerivationTree, int]] = [(tree, 1)]
    while stack:
        node, d = stack.pop()
        if d > deepest:
            deepest = d
        for child in node.children:
            stack.append((child, d + 1))
    return deepest
