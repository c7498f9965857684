"""Independent reference computations used to derive expected values.

Nothing here imports the package under test: each oracle recomputes a
quantity by the most direct method available (brute force over subsets,
symbolic series expansion, substitution into polynomials).
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import sympy as sp

t = sp.symbols("t")


# -- linear algebra ---------------------------------------------------


def span_size(rows: list[list[int]]) -> int:
    """Number of distinct GF(2) combinations of ``rows``; equals 2**rank."""
    seen = set()
    for coeffs in product((0, 1), repeat=len(rows)):
        acc = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % 2 for j in range(len(rows[0]) if rows else 0))
        seen.add(acc)
    return len(seen)


def brute_rank(rows: list[list[int]]) -> int:
    return span_size(rows).bit_length() - 1 if rows else 0


def brute_kernel_size(rows: list[list[int]], ncols: int) -> int:
    count = 0
    for v in product((0, 1), repeat=ncols):
        if all(sum(a * b for a, b in zip(r, v)) % 2 == 0 for r in rows):
            count += 1
    return count


# -- integers ---------------------------------------------------------


def legendre_nu2(n: int) -> int:
    """2-adic valuation of n! by dividing out every factor of two."""
    total = 0
    for k in range(1, n + 1):
        while k % 2 == 0:
            total += 1
            k //= 2
    return total


# -- groups (permutations as tuples, composition right to left) ---------


def compose(p, q):
    return tuple(p[i] for i in q)


def closure(gens, degree):
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def brute_elementary_abelian_count(elems: set) -> int:
    """Count elementary abelian 2-subgroups by closing every commuting set of involutions."""
    degree = len(next(iter(elems)))
    ident = tuple(range(degree))
    invols = [x for x in elems if x != ident and compose(x, x) == ident]
    seen = set()
    for size in range(0, 6):
        for basis in combinations(invols, size):
            if any(compose(a, b) != compose(b, a) for a in basis for b in basis):
                continue
            sub = frozenset(closure(list(basis), degree))
            if len(sub) == 2**size:
                seen.add(sub)
    return len(seen)


def sym_group(n: int) -> set:
    return set(permutations(range(n)))


# -- series -----------------------------------------------------------


def coeffs(expr, n: int) -> list[int]:
    s = sp.series(expr, t, 0, n + 1).removeO()
    poly = sp.Poly(s, t)
    return [int(poly.coeff_monomial(t**k)) for k in range(n + 1)]


def quad_expr(s):
    return (s**2 + s.subs(t, t**2)) / 2 + t / (1 - t) * s.subs(t, t**2)


def sym_expr(s):
    return (s**2 + s.subs(t, t**2)) / 2


def a4x_expr(s):
    s2 = s.subs(t, t**2)
    s4 = s.subs(t, t**4)
    return s4 / (1 - t) ** 2 + sp.Rational(3, 2) / (1 - t) * (s2**2 - s4) + sp.Rational(1, 4) * (s**4 - 3 * s2**2 + 2 * s4)


def pipeline_expr(m: int):
    """Symbolic ``(S_m, T_m, A_m)`` for the Sym(2^m) / alternating Sylows."""
    s = 1 / (1 - t)
    tau = sp.Integer(0)
    for _ in range(m - 1):
        s, tau = quad_expr(s), quad_expr(s) - (sym_expr(s) - sym_expr(tau))
    a = (1 - t) * s + (1 + t) * tau
    return s, tau, a


# -- Steenrod squares on polynomials ----------------------------------


def total_square_poly(exponents: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Total square of a monomial via the ring map ``u_j -> u_j + u_j^2``.

    Returns the mod-2 coefficients keyed by exponent vectors.
    """
    gens = sp.symbols(f"x0:{len(exponents)}")
    expr = sp.Integer(1)
    for x, a in zip(gens, exponents):
        expr *= (x + x**2) ** a
    poly = sp.Poly(sp.expand(expr), *gens) if gens else None
    if poly is None:
        return {(): 1}
    return {m: int(c) % 2 for m, c in poly.terms() if int(c) % 2}
