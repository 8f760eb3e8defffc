"""BNF grammar model: parsing, validation, and minimum derivation depths.

A grammar file is a sequence of rules of the form

    <name> ::= alternative | alternative | ...

A rule body may span several lines; it ends at the next rule header.
Lines whose first non-blank character is ``#`` are comments.  The first
rule defines the start symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    EmptyProduction,
    GrammarSyntaxError,
    InfiniteGrammar,
    NoRules,
    UndefinedNonterminal,
    UnknownNonterminal,
    UnterminatedNonterminal,
)

_RULE_HEADER = re.compile(r"<([^<>|]*)>\s*::=")


@dataclass(frozen=True)
class Symbol:
    """One grammar symbol: a terminal string or a nonterminal name."""

    text: str
    is_terminal: bool

    def __post_init__(self):
        if self.is_terminal:
            if not self.text or self.text.strip() == "":
                raise ValueError("terminal symbols must contain visible text")
        else:
            if not self.text or any(ch in self.text for ch in "<>|"):
                raise ValueError(f"invalid nonterminal name {self.text!r}")

    def __str__(self) -> str:
        return self.text if self.is_terminal else f"<{self.text}>"


@dataclass(frozen=True)
class Production:
    """One alternative of a rule: a non-empty sequence of symbols."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ValueError("a production needs at least one symbol")

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols)


@dataclass(frozen=True)
class Grammar:
    """Parsed grammar: start symbol, rules, and per-rule minimum depths."""

    start: str
    rules: dict[str, tuple[Production, ...]]
    min_depth: dict[str, int] = field(compare=False)

    @property
    def nonterminals(self) -> tuple[str, ...]:
        return tuple(self.rules)


def _tokenize_alternative(rule: str, text: str) -> Production:
    """Split one alternative into terminal runs and <nonterminal> refs."""
    symbols: list[Symbol] = []
    # strip only the boundary whitespace of the alternative; interior
    # whitespace between tokens is significant terminal text
    body = text.strip()
    if not body:
        raise EmptyProduction(rule)
    i = 0
    while i < len(body):
        if body[i] == "<":
            j = body.find(">", i + 1)
            if j < 0:
                raise UnterminatedNonterminal(
                    f"rule <{rule}>: '<' at column {i} has no matching '>'"
                )
            name = body[i + 1 : j]
            if not name or "<" in name:
                raise UnterminatedNonterminal(
                    f"rule <{rule}>: malformed nonterminal {body[i : j + 1]!r}"
                )
            symbols.append(Symbol(name, is_terminal=False))
            i = j + 1
        else:
            j = body.find("<", i)
            if j < 0:
                j = len(body)
            run = body[i:j]
            if run.strip():
                symbols.append(Symbol(run, is_terminal=True))
            # whitespace-only run between two nonterminals: separator, dropped
            i = j
    if not symbols:
        raise EmptyProduction(rule)
    return Production(tuple(symbols))


def parse_grammar(text: str) -> Grammar:
    """Parse BNF text into a validated :class:`Grammar`."""
    # drop comment lines before structural parsing
    lines = [
        "" if line.lstrip().startswith("#") else line
        for line in text.splitlines()
    ]
    body = "\n".join(lines)

    headers = list(_RULE_HEADER.finditer(body))
    if not headers:
        raise NoRules("grammar text defines no rules")
    preamble = body[: headers[0].start()]
    if preamble.strip():
        raise GrammarSyntaxError(
            f"unexpected text before first rule: {preamble.strip()[:40]!r}"
        )

    rules: dict[str, list[Production]] = {}
    order: list[str] = []
    for k, match in enumerate(headers):
        name = match.group(1).strip()
        if not name:
            raise GrammarSyntaxError("rule with empty name '<> ::= ...'")
        end = headers[k + 1].start() if k + 1 < len(headers) else len(body)
        rhs = body[match.end() : end]
        if name not in rules:
            rules[name] = []
            order.append(name)
        for alt in rhs.split("|"):
            rules[name].append(_tokenize_alternative(name, alt))

    frozen = {name: tuple(prods) for name, prods in rules.items()}
    for prods in frozen.values():
        for prod in prods:
            for sym in prod.symbols:
                if not sym.is_terminal and sym.text not in frozen:
                    raise UndefinedNonterminal(sym.text)

    grammar = Grammar(start=order[0], rules=frozen, min_depth={})
    grammar.min_depth.update(_compute_min_depths(frozen))
    return grammar


def _compute_min_depths(rules: dict[str, tuple[Production, ...]]) -> dict[str, int]:
    """Fixpoint of: depth(nt) = 1 + min over prods of max child depth.

    Terminals contribute depth 0.  A nonterminal that never converges can
    never finish a derivation, which makes the grammar unusable.
    """
    INF = float("inf")
    depth: dict[str, float] = {name: INF for name in rules}
    changed = True
    while changed:
        changed = False
        for name, prods in rules.items():
            best = INF
            for prod in prods:
                worst = 0.0
                for sym in prod.symbols:
                    if not sym.is_terminal:
                        worst = max(worst, depth[sym.text])
                best = min(best, 1 + worst)
            if best < depth[name]:
                depth[name] = best
                changed = True
    for name, d in depth.items():
        if d == INF:
            raise InfiniteGrammar(name)
    return {name: int(d) for name, d in depth.items()}


def min_depths(grammar: Grammar) -> dict[str, int]:
    """Minimum full-derivation-tree depth for each nonterminal."""
    return dict(grammar.min_depth)


def production_count(grammar: Grammar, nonterminal: str) -> int:
    """How many alternatives the rule for ``nonterminal`` has."""
    try:
        return len(grammar.rules[nonterminal])
    except KeyError:
        raise UnknownNonterminal(nonterminal) from None


def format_grammar(grammar: Grammar) -> str:
    """Render a grammar back to rule-per-line BNF text."""
    out = []
    for name, prods in grammar.rules.items():
        alts = " | ".join(str(p) for p in prods)
        out.append(f"<{name}> ::= {alts}")
    return "\n".join(out) + "\n"
