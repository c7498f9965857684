"""Signed permutations, the 2-Sylow of W(H4), and the maps alpha_m.

A signed permutation of ``n`` letters is stored as a permutation of ``2n``
points: letter ``l`` with sign ``+`` is point ``2l``, with sign ``-`` point
``2l + 1``.  Composition is then ordinary composition of permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import UnsupportedError
from .groups import FiniteGroup, Permutation, sylow_alternating, sylow_symmetric


def signed_permutation(perm: tuple[int, ...], signs: tuple[int, ...]) -> Permutation:
    """Letter ``l`` goes to letter ``perm[l]`` with sign ``(-1)**signs[l]``."""
    img = [0] * (2 * len(perm))
    for l, (target, s) in enumerate(zip(perm, signs)):
        img[2 * l] = 2 * target + s
        img[2 * l + 1] = 2 * target + (1 - s)
    return Permutation(tuple(img))


def underlying_permutation(p: Permutation) -> Permutation:
    """The permutation of letters obtained by forgetting signs."""
    if p.degree % 2:
        raise ValueError("a signed permutation acts on an even number of points")
    for l in range(p.degree // 2):
        if p(2 * l) // 2 != p(2 * l + 1) // 2:
            raise ValueError("not a signed permutation: a letter pair was split")
    return Permutation(tuple(p(2 * l) // 2 for l in range(p.degree // 2)))


def signed_model(base: FiniteGroup) -> frozenset[Permutation]:
    """All signed permutations whose underlying permutation lies in ``base``."""
    n = base.degree
    return frozenset(
        signed_permutation(pi.images, signs) for pi in base.elements for signs in product((0, 1), repeat=n)
    )


# -- the W(H4) Sylow -------------------------------------------------

# quaternion units 1, i, j, k; _QMUL[a][b] = (sign bit, index) of e_a * e_b
_QMUL = (
    ((0, 0), (0, 1), (0, 2), (0, 3)),
    ((0, 1), (1, 0), (0, 3), (1, 2)),
    ((0, 2), (1, 3), (1, 0), (0, 1)),
    ((0, 3), (0, 2), (1, 1), (1, 0)),
)


def _left(q: int) -> Permutation:
    perm, signs = zip(*((_QMUL[q][l][1], _QMUL[q][l][0]) for l in range(4)))
    return signed_permutation(perm, signs)


def _right(q: int) -> Permutation:
    perm, signs = zip(*((_QMUL[l][q][1], _QMUL[l][q][0]) for l in range(4)))
    return signed_permutation(perm, signs)


def h4_sylow() -> FiniteGroup:
    """``S_2 x| (Q8 x Q8) / <(-1,-1)>`` acting on the quaternions by ``x -> q1 x q2^-1``
    and by conjugation ``x -> x-bar``, as signed permutations of ``(1, i, j, k)``."""
    conj = signed_permutation((0, 1, 2, 3), (0, 1, 1, 1))
    gens = [_left(1), _left(2), _right(1), _right(2), conj]
    return FiniteGroup(8, gens, label="h4-sylow")


def h4_projection_image(g: FiniteGroup | None = None) -> set[Permutation]:
    g = g or h4_sylow()
    return {underlying_permutation(x) for x in g.elements}


def h4_sign_kernel(g: FiniteGroup | None = None) -> list[Permutation]:
    """Elements acting diagonally (pure sign changes)."""
    g = g or h4_sylow()
    return [x for x in g.elements if underlying_permutation(x).is_identity()]


# -- alpha_m ----------------------------------------------------------

_ALPHA_RANGE = (2, 3)


def _alpha2_table() -> dict[tuple[int, ...], Permutation]:
    """``alpha_2`` on the Sylow of Sym(4): ``k(v) t^s -> diag((-1)^v) swap^s``."""
    t = Permutation.from_cycles(4, [(1, 2)])
    a = Permutation.from_cycles(4, [(1, 3), (2, 4)])
    b = Permutation.from_cycles(4, [(1, 4), (2, 3)])
    ident = Permutation.identity(4)
    table = {}
    for v1, v2, s in product((0, 1), repeat=3):
        k = (a if v1 else ident) * (b if v2 else ident)
        g = k * t if s else k
        table[g.images] = signed_permutation((0, 1), (v1, v2)) * signed_permutation((1, 0) if s else (0, 1), (0, 0))
    return table


def alpha_map(m: int, g: Permutation) -> Permutation:
    """Image of ``g`` in the Sylow of ``Sym(2^m)`` under ``alpha_m``.

    ``g`` permutes the blocks of four consecutive points by some ``pi`` and acts
    inside block ``b`` by ``h_b``; the image applies ``alpha_2(h_b)`` blockwise
    and then moves blocks by ``pi``.
    """
    if m not in _ALPHA_RANGE:
        raise UnsupportedError(f"alpha_m is implemented for m in {_ALPHA_RANGE}, got {m}")
    if g.degree != 2**m:
        raise ValueError(f"expected a permutation of {2 ** m} points")
    table = _alpha2_table()
    img = [0] * g.degree
    for blk in range(g.degree // 4):
        start = g(4 * blk)
        target = start // 4
        h = tuple(g(4 * blk + x) - 4 * target for x in range(4))
        if any(not 0 <= y < 4 for y in h):
            raise ValueError("permutation does not preserve the blocks of four points")
        ah = table[h]
        for y in range(4):
            img[4 * blk + y] = 4 * target + ah(y)
    return Permutation(tuple(img))


@dataclass
class AlphaReport:
    m: int
    homomorphism: bool
    bijective: bool
    signature_compatible: bool
    kernel_bijective: bool
    source_order: int
    target_order: int

    @property
    def ok(self) -> bool:
        return self.homomorphism and self.bijective and self.signature_compatible and self.kernel_bijective


def alpha_iso_report(m: int) -> AlphaReport:
    if m not in _ALPHA_RANGE:
        raise UnsupportedError(f"alpha_m is implemented for m in {_ALPHA_RANGE}, got {m}")
    src = sylow_symmetric(2**m)
    base = sylow_symmetric(2 ** (m - 1))
    target = signed_model(base)
    images = {x: alpha_map(m, x) for x in src.elements}
    gens = list(src.generators)
    homomorphism = all(images[x * y] == images[x] * images[y] for x in src.elements for y in gens)
    bijective = len(set(images.values())) == src.order and set(images.values()) == target
    signature_compatible = all(x.sign() == underlying_permutation(images[x]).sign() for x in src.elements)
    alt_src = [x for x in src.elements if x.sign() == 0]
    alt_target = signed_model(sylow_alternating(2 ** (m - 1)))
    kernel_bijective = {images[x] for x in alt_src} == alt_target and len(alt_src) == len(alt_target)
    return AlphaReport(m, homomorphism, bijective, signature_compatible, kernel_bijective, src.order, len(target))


def alpha_iso_check(m: int) -> bool:
    return alpha_iso_report(m).ok


def h4_matches_alt8() -> bool:
    """The H4 Sylow and ``alpha_3`` of the A_8 Sylow are the same set of signed permutations.

    Both are then isomorphic to the Klein group acting on ``{+-1}^4``.
    """
    h4 = h4_sylow()
    a8 = sylow_alternating(8)
    model = signed_model(sylow_alternating(4))
    image = {alpha_map(3, x) for x in a8.elements}
    return h4.element_set == model and image == model and len(image) == a8.order
