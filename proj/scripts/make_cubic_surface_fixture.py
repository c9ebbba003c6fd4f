#!/usr/bin/env python3
"""Generate the lines-on-a-cubic-surface fixture.

A general cubic surface in P^3 has 20 coefficients c0..c19 (one per cubic
monomial in X, Y, Z, W; monomials ordered by exponent tuple, lexicographically
descending from X^3). A line spanned by v = (1, 0, k1, k2) and
w = (0, 1, k3, k4) lies on the surface exactly when the restriction of the
cubic to r*v + s*w vanishes identically, i.e. when the coefficients of
r^3, r^2 s, r s^2, s^3 are all zero. Those four coefficient polynomials in
k1..k4 (linear in c0..c19) are the fixture's equations; the cover over the
20-dimensional coefficient space has the 27 lines as its generic fiber.

Writes fixtures/cubic-surface-lines.json next to this script's repository.
Requires sympy.
"""

import itertools
import json
import pathlib

import sympy


def main() -> None:
    X, Y, Z, W = sympy.symbols("X Y Z W")
    k1, k2, k3, k4 = sympy.symbols("k1 k2 k3 k4")
    r, s = sympy.symbols("r s")

    exponents = sorted(
        (e for e in itertools.product(range(4), repeat=4) if sum(e) == 3),
        reverse=True,
    )
    coeffs = sympy.symbols(f"c0:{len(exponents)}")
    cubic = sum(
        c * X**a * Y**b * Z**cc * W**d
        for c, (a, b, cc, d) in zip(coeffs, exponents)
    )

    point = {
        X: r,
        Y: s,
        Z: r * k1 + s * k3,
        W: r * k2 + s * k4,
    }
    restricted = sympy.expand(cubic.subs(point))
    poly = sympy.Poly(restricted, r, s)
    equations = []
    for i in range(4):
        coeff = poly.coeff_monomial(r ** (3 - i) * s**i)
        equations.append(str(sympy.expand(coeff)).replace("**", "^"))

    fixture = {
        "variables": ["k1", "k2", "k3", "k4"],
        "parameters": [f"c{i}" for i in range(len(exponents))],
        "equations": equations,
        "extended": True,
        "expect": {
            "branch_degree": 32,
            "cover_degree": 27,
            "order": 51840,
            "transitive": True,
            "primitive": True,
            "classification": "other",
        },
    }

    out = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "cubic-surface-lines.json"
    out.write_text(json.dumps(fixture, indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
