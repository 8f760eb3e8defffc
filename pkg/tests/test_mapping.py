import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gramevo import (
    DerivationTree,
    Genome,
    IncompleteTree,
    MappingStatus,
    Symbol,
    map_genome,
    parse_grammar,
    phenotype_of,
    tree_depth,
)


def test_genome_validation():
    with pytest.raises(ValueError):
        Genome(())
    with pytest.raises(ValueError):
        Genome((100_000,), codon_max=100_000)
    with pytest.raises(ValueError):
        Genome((-1,))
    g = Genome([3, 4], codon_max=10)
    assert g.codons == (3, 4)
    assert len(g) == 2


# --- golden traces against the canonical grammar ---------------------------

def test_trace_single_codon_variable(canonical_grammar):
    r = map_genome(canonical_grammar, Genome((9,)), max_wraps=0, max_depth=10)
    assert r.status is MappingStatus.VALID
    assert r.valid
    assert r.phenotype == "x"          # 9 mod 11 -> 10th alternative
    assert r.codons_used == 1
    assert r.wraps_used == 0


def test_trace_constant(canonical_grammar):
    r = map_genome(canonical_grammar, Genome((10, 1, 2, 3, 4)),
                   max_wraps=0, max_depth=10)
    assert r.status is MappingStatus.VALID
    assert r.phenotype == "12.34"      # 10 mod 11 -> digits rule, then 1,2,3,4
    assert r.codons_used == 5
    assert tree_depth(r.tree) == 3


def test_trace_addition(canonical_grammar):
    r = map_genome(canonical_grammar, Genome((0, 9, 9)),
                   max_wraps=0, max_depth=10)
    assert r.status is MappingStatus.VALID
    assert r.phenotype == "x+x"
    assert r.codons_used == 3
    assert tree_depth(r.tree) == 3


def test_trace_wrap_exhaustion(canonical_grammar):
    # every wrap of [0, 0] net-adds unexpanded nonterminals
    r = map_genome(canonical_grammar, Genome((0, 0)), max_wraps=1, max_depth=10)
    assert r.status is MappingStatus.INVALID_WRAPS
    assert not r.valid
    assert r.tree is None and r.phenotype is None


def test_trace_surface_variant_tokens(pi_paper_grammar):
    r = map_genome(pi_paper_grammar, Genome((9,)), max_wraps=0, max_depth=10)
    assert r.phenotype == "x[:, 0]"


def test_single_alternative_rules_consume_no_codon():
    g = parse_grammar("<s> ::= a<t>\n<t> ::= b")
    r = map_genome(g, Genome((5,)), max_wraps=0, max_depth=10)
    assert r.status is MappingStatus.VALID
    assert r.phenotype == "ab"
    assert r.codons_used == 0


def test_depth_bound_invalidates(canonical_grammar):
    genome = Genome((10, 1, 2, 3, 4))    # tree depth 3
    ok = map_genome(canonical_grammar, genome, max_wraps=0, max_depth=3)
    assert ok.status is MappingStatus.VALID
    bad = map_genome(canonical_grammar, genome, max_wraps=0, max_depth=2)
    assert bad.status is MappingStatus.INVALID_DEPTH
    assert bad.tree is None and bad.phenotype is None


def test_node_ceiling_counts_as_depth_invalid():
    g = parse_grammar("<s> ::= <s><s> | a")
    genome = Genome(tuple([0] * 50))
    r = map_genome(g, genome, max_wraps=0, max_depth=1000, max_nodes=20)
    assert r.status is MappingStatus.INVALID_DEPTH


def test_valid_tree_respects_depth_contract(canonical_grammar):
    rng = np.random.default_rng(7)
    for _ in range(200):
        genome = Genome(tuple(rng.integers(0, 100_000, size=60).tolist()))
        r = map_genome(canonical_grammar, genome, max_wraps=1, max_depth=8)
        if r.status is MappingStatus.VALID:
            assert tree_depth(r.tree) <= 8
            assert phenotype_of(r.tree) == r.phenotype
            assert r.wraps_used <= 1


# --- structural helpers ------------------------------------------------------

def test_phenotype_of_incomplete_tree():
    dangling = DerivationTree(Symbol("e", is_terminal=False))
    with pytest.raises(IncompleteTree):
        phenotype_of(dangling)


def test_phenotype_of_single_terminal():
    leaf = DerivationTree(Symbol("a", is_terminal=True))
    assert phenotype_of(leaf) == "a"
    assert tree_depth(leaf) == 1


def test_tree_depth_recomputes():
    # stored depth fields are ignored; only the structure counts
    leaf = DerivationTree(Symbol("a", is_terminal=True), depth=99)
    root = DerivationTree(Symbol("s", is_terminal=False), production_index=0,
                          children=[leaf], depth=42)
    assert tree_depth(root) == 2


# --- properties --------------------------------------------------------------

genomes = st.lists(st.integers(0, 99_999), min_size=1, max_size=40).map(
    lambda cs: Genome(tuple(cs))
)


@settings(max_examples=200, deadline=None)
@given(genomes)
def test_mapping_is_deterministic(canonical_grammar, genome):
    a = map_genome(canonical_grammar, genome, max_wraps=1, max_depth=17)
    b = map_genome(canonical_grammar, genome, max_wraps=1, max_depth=17)
    assert a.status is b.status
    assert a.phenotype == b.phenotype
    assert a.codons_used == b.codons_used
    assert a.wraps_used == b.wraps_used


def _replay_choices(tree, grammar):
    """Preorder (leftmost) walk yielding (k, chosen index) per expansion."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.symbol.is_terminal:
            continue
        k = len(grammar.rules[node.symbol.text])
        yield k, node.production_index
        for child in reversed(node.children):
            stack.append(child)


@settings(max_examples=200, deadline=None)
@given(genomes)
def test_mod_rule_replay(canonical_grammar, genome):
    r = map_genome(canonical_grammar, genome, max_wraps=1, max_depth=17)
    if r.status is not MappingStatus.VALID:
        return
    position = 0
    consumed = 0
    for k, chosen in _replay_choices(r.tree, canonical_grammar):
        if k == 1:
            assert chosen == 0
            continue
        codon = genome.codons[position % len(genome)]
        assert chosen == codon % k
        position += 1
        consumed += 1
    assert consumed == r.codons_used


@settings(max_examples=200, deadline=None)
@given(genomes, st.lists(st.integers(0, 99_999), min_size=1, max_size=10))
def test_unused_codon_neutrality(canonical_grammar, genome, extra):
    r = map_genome(canonical_grammar, genome, max_wraps=1, max_depth=17)
    if r.status is not MappingStatus.VALID or r.wraps_used != 0:
        return
    extended = Genome(genome.codons + tuple(extra))
    r2 = map_genome(canonical_grammar, extended, max_wraps=1, max_depth=17)
    assert r2.status is MappingStatus.VALID
    assert r2.phenotype == r.phenotype
    assert r2.codons_used == r.codons_used
