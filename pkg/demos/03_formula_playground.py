"""Parsing, evaluating, and printing formula strings.

The expression language is exactly what the grammar can emit, plus a few
conveniences for formulas written by hand: ln/log, juxtaposed products,
unary minus, and the x[:, 0] spelling of the variable.
"""

import numpy as np

from gramevo import evaluate, evaluate_array, format_expr, parse_formula
from gramevo.errors import FormulaSyntaxError


def main() -> None:
    # a hand-written approximation of the prime-counting function,
    # checked at two points
    formula = (
        "x/(ln(x/(ln(ln(92.89-sin(x)+x*x+sin(x)-64.03*sqrt(x)"
        "*ln(exp(sin(89.77))))*sqrt(sin(19.94))))))"
    )
    expr = parse_formula(formula)
    for x in (100.0, 1400.0):
        print(f"f({x:g}) = {evaluate(expr, x):.4f}")

    # vectorized evaluation over an array
    xs = np.array([2.0, 10.0, 100.0, 1000.0])
    print("batch:", np.round(evaluate_array(expr, xs), 3))

    # protected operators never raise and target specific fallbacks:
    # pdiv(a, 0) is 1, plog(0) is 0, psqrt takes |a| first
    print("\npdiv(3, 0)  =", evaluate(parse_formula("pdiv(3.0, 0.0)"), 0.0))
    print("plog(0)     =", evaluate(parse_formula("plog(0.0)"), 0.0))
    print("psqrt(-9)   =", evaluate(parse_formula("psqrt(0.0-9.0)"), 0.0))

    # the unprotected spellings keep IEEE semantics instead
    print("ln(-1)      =", evaluate(parse_formula("ln(0.0-1.0)"), 0.0))

    # juxtaposition multiplies, as in typeset math
    print("\n'2 sqrt(x) x' at x=4:",
          evaluate(parse_formula("2 sqrt(x) x"), 4.0))

    # format_expr prints with minimal parentheses and canonical names
    tree = parse_formula("np.sin(x[:, 0]) + (2.50 * (x))")
    print("formatted:", format_expr(tree))

    # parse errors carry a character position
    try:
        parse_formula("x +")
    except FormulaSyntaxError as err:
        print("error demo:", err)


if __name__ == "__main__":
    main()
