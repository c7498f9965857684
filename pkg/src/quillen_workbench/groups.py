"""Permutation groups, the 2-Sylow constructions, and elementary abelian 2-subgroups.

Points are stored 0-based internally; generator files and printed output use
the usual 1-based numbering.  Products compose right to left:
``(p * q)(x) = p(q(x))``.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ResourceLimitError, SpecParseError
from .f2 import F2Matrix

DEFAULT_MAX_ORDER = 2**15
DEFAULT_MAX_SUBGROUPS = 5000


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> Permutation:
        return cls(tuple(int(i) - 1 for i in images))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 1-based cycles, e.g. ``[(1, 2), (3, 4)]``."""
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        a = self.images
        return Permutation(tuple(a[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def conjugate(self, g: Permutation) -> Permutation:
        """``g * self * g^-1``."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        """0 for even permutations, 1 for odd ones (signature as an element of Z/2)."""
        return sum(len(c) - 1 for c in self.cycles()) & 1

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.images]

    def __repr__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cyc)


def _fast_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[i] for i in b)


class FiniteGroup:
    """A permutation group, enumerated eagerly up to ``max_order`` elements."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation],
        *,
        max_order: int = DEFAULT_MAX_ORDER,
        label: str = "",
    ):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.label = label
        self.max_order = max_order
        self._elements = self._enumerate(max_order)
        self.element_set = frozenset(self._elements)

    def _enumerate(self, cap: int) -> tuple[Permutation, ...]:
        ident = tuple(range(self.degree))
        seen = {ident}
        queue = deque([ident])
        gens = [g.images for g in self.generators]
        while queue:
            x = queue.popleft()
            for g in gens:
                y = _fast_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise ResourceLimitError(
                            f"group {self.label or '?'} exceeds the order cap {cap}"
                        )
                    queue.append(y)
        return tuple(Permutation(t) for t in sorted(seen))

    @classmethod
    def from_elements(
        cls, degree: int, elements: Iterable[Permutation], *, label: str = "", max_order: int = DEFAULT_MAX_ORDER
    ) -> FiniteGroup:
        """Group on a known element set (assumed closed); picks a small generating set."""
        elems = sorted(set(elements))
        target = set(elems)
        gens: list[Permutation] = []
        span = {Permutation.identity(degree)}
        for x in elems:
            if x in span:
                continue
            gens.append(x)
            span = set(cls(degree, gens, max_order=max_order).element_set)
        group = cls(degree, gens, label=label, max_order=max_order)
        if group.element_set != target:
            raise ValueError("element set is not closed under products")
        return group

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return self._elements

    @property
    def order(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.element_set

    def __iter__(self):
        return iter(self._elements)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def center(self) -> list[Permutation]:
        return [z for z in self._elements if all(z * g == g * z for g in self.generators)]

    def involutions(self) -> list[Permutation]:
        return [x for x in self._elements if not x.is_identity() and (x * x).is_identity()]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, degree={self.degree}, order={self.order})"


# -- standard groups --------------------------------------------------


def nu2_factorial(n: int) -> tuple[int, int]:
    """2-adic valuation of ``n!`` and the binary digit sum of ``n``; ``nu2 = n - alpha``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    alpha = bin(n).count("1")
    return n - alpha, alpha


def trivial_group(degree: int = 1) -> FiniteGroup:
    return FiniteGroup(degree, [], label=f"trivial:{degree}")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    return FiniteGroup(n, [Permutation(tuple((i + 1) % n for i in range(n)))], label=f"cyclic:{n}")


def symmetric_group(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    from math import factorial

    if factorial(n) > max_order:
        raise ResourceLimitError(f"sym:{n} has order {factorial(n)} > cap {max_order}")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [(1, 2)]))
        gens.append(Permutation.from_cycles(n, [tuple(range(1, n + 1))]))
    return FiniteGroup(max(n, 0), gens, max_order=max_order, label=f"sym:{n}")


def alternating_group(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    from math import factorial

    if n >= 2 and factorial(n) // 2 > max_order:
        raise ResourceLimitError(f"alt:{n} has order {factorial(n) // 2} > cap {max_order}")
    gens = [Permutation.from_cycles(n, [(1, 2, k)]) for k in range(3, n + 1)]
    return FiniteGroup(max(n, 0), gens, max_order=max_order, label=f"alt:{n}")


def direct_product(groups: Sequence[FiniteGroup], *, label: str = "", max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Product acting on consecutive disjoint blocks of points, in the given order."""
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for h in g.generators:
            img = list(range(degree))
            for i, j in enumerate(h.images):
                img[offset + i] = offset + j
            gens.append(Permutation(tuple(img)))
        offset += g.degree
    return FiniteGroup(degree, gens, max_order=max_order, label=label)


def _wreath_generators(gens: Sequence[Permutation], k: int) -> list[Permutation]:
    # the second copy is the swap-conjugate of the first, so its generators are redundant
    out = [Permutation(h.images + tuple(range(k, 2 * k))) for h in gens]
    out.append(Permutation(tuple(range(k, 2 * k)) + tuple(range(k))))
    return out


def wreath_with_z2(g: FiniteGroup, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """``S_2 wr G`` on ``2 * degree`` points: ``G x G`` on the two halves plus the half swap.

    Point ``k`` of copy ``i`` (1-based) becomes ``k + (i - 1) * degree``.
    """
    if 2 * g.order**2 > max_order:
        raise ResourceLimitError(f"wreath product of order {2 * g.order ** 2} exceeds cap {max_order}")
    return FiniteGroup(
        2 * g.degree, _wreath_generators(g.generators, g.degree), max_order=max_order, label=f"S2wr({g.label})"
    )


def _sylow_power_generators(m: int) -> list[Permutation]:
    gens: list[Permutation] = []
    for k in range(m):
        gens = _wreath_generators(gens, 2**k)
    return gens


def sylow_symmetric(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """The 2-Sylow of ``Sym(n)``: a product of iterated wreath products, one per binary digit.

    Factors are laid out largest first on consecutive blocks of points.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    nu2, _ = nu2_factorial(n)
    if 2**nu2 > max_order:
        raise ResourceLimitError(f"sylow-sym:{n} has order 2^{nu2} > cap {max_order}")
    gens = []
    offset = 0
    for m in [m for m in range(n.bit_length() - 1, -1, -1) if (n >> m) & 1]:
        for h in _sylow_power_generators(m):
            img = list(range(n))
            for i, j in enumerate(h.images):
                img[offset + i] = offset + j
            gens.append(Permutation(tuple(img)))
        offset += 2**m
    return FiniteGroup(n, gens, max_order=max_order, label=f"sylow-sym:{n}")


def sylow_alternating(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Even elements of :func:`sylow_symmetric`; trivial for ``n < 4``."""
    s = sylow_symmetric(n, max_order=max_order)
    odd = [x for x in s.generators if x.sign()]
    if not odd:
        return FiniteGroup(s.degree, s.generators, label=f"sylow-alt:{n}", max_order=max_order)
    # Schreier generators for the transversal {1, o}
    o = odd[0]
    oi = o.inverse()
    gens = []
    for x in s.generators:
        if x.sign():
            gens += [x * oi, o * x]
        else:
            gens += [x, o * x * oi]
    group = FiniteGroup(s.degree, gens, label=f"sylow-alt:{n}", max_order=max_order)
    if 2 * group.order != s.order:
        raise ArithmeticError("sign kernel has the wrong order")
    return group


def dihedral_group(two_n: int) -> FiniteGroup:
    """Dihedral group of order ``two_n``.

    For ``n >= 3`` it acts on the ``n`` vertices of a polygon.  ``D_2`` acts on
    two points and ``D_4 = Z/2 x Z/2`` on four, since neither is faithful on
    ``n`` points.
    """
    if two_n < 2 or two_n % 2:
        raise ValueError("dihedral order must be an even number >= 2")
    n = two_n // 2
    label = f"dihedral:{two_n}"
    if n == 1:
        return FiniteGroup(2, [Permutation((1, 0))], label=label)
    if n == 2:
        return FiniteGroup(
            4, [Permutation.from_cycles(4, [(1, 2), (3, 4)]), Permutation.from_cycles(4, [(1, 3), (2, 4)])], label=label
        )
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    ref = Permutation(tuple((-i) % n for i in range(n)))
    return FiniteGroup(n, [rot, ref], label=label)


def wreath_index_valuation(n: int) -> int:
    """2-adic valuation of ``[Sym(2n) : {+-1}^n x| Sym(n)]``, i.e. of ``(2n)! / (2^n n!)``; always 0."""
    if n < 1:
        raise ValueError("n must be positive")
    return nu2_factorial(2 * n)[0] - n - nu2_factorial(n)[0]


# -- elementary abelian subgroups ------------------------------------


@dataclass(eq=False)
class ElementaryAbelianSubgroup:
    parent: FiniteGroup = field(repr=False)
    basis: tuple[Permutation, ...]
    elements: frozenset[Permutation] = field(repr=False)
    key: tuple[tuple[int, ...], ...] = field(repr=False)
    coords: dict[Permutation, int] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def from_elements(cls, parent: FiniteGroup, elements: Iterable[Permutation]) -> ElementaryAbelianSubgroup:
        elems = sorted(set(elements))
        # canonical basis: greedy over the sorted element list
        basis: list[Permutation] = []
        span = {elems[0]} if elems else set()
        ident = parent.identity()
        span = {ident}
        coords = {ident: 0}
        for x in elems:
            if x in span:
                continue
            bit = 1 << len(basis)
            new = {}
            for y, c in coords.items():
                new[x * y] = c | bit
            coords.update(new)
            span = set(coords)
            basis.append(x)
        if span != set(elems):
            raise ValueError("elements do not form an elementary abelian 2-group")
        key = tuple(e.images for e in elems)
        return cls(parent, tuple(basis), frozenset(elems), key, coords)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ElementaryAbelianSubgroup) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def conjugate_key(self, g: Permutation) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(e.conjugate(g).images for e in self.elements))

    def is_valid(self) -> bool:
        elems = list(self.elements)
        return (
            len(elems) == 2**self.rank
            and all((x * x).is_identity() for x in elems)
            and all(x * y == y * x for x in elems for y in elems)
        )


def elementary_abelian_subgroups(
    g: FiniteGroup, max_rank: int = 6, *, max_subgroups: int = DEFAULT_MAX_SUBGROUPS
) -> list[ElementaryAbelianSubgroup]:
    """All elementary abelian 2-subgroups of rank <= ``max_rank``, trivial one included.

    Sorted by (rank, canonical key).
    """
    involutions = g.involutions()
    trivial = ElementaryAbelianSubgroup.from_elements(g, [g.identity()])
    found = {trivial.key: trivial}
    layer = [trivial]
    for _ in range(max_rank):
        nxt: dict[tuple, ElementaryAbelianSubgroup] = {}
        for sub in layer:
            for t in involutions:
                if t in sub.elements or any(t * b != b * t for b in sub.basis):
                    continue
                elems = set(sub.elements) | {t * x for x in sub.elements}
                key = tuple(sorted(e.images for e in elems))
                if key in nxt:
                    continue
                nxt[key] = ElementaryAbelianSubgroup.from_elements(g, elems)
                if len(found) + len(nxt) > max_subgroups:
                    raise ResourceLimitError(f"more than {max_subgroups} elementary abelian subgroups")
        if not nxt:
            break
        found.update(nxt)
        layer = list(nxt.values())
    return sorted(found.values(), key=lambda s: (s.rank, s.key))


def induced_maps(
    g: FiniteGroup, e: ElementaryAbelianSubgroup, e2: ElementaryAbelianSubgroup
) -> dict[F2Matrix, Permutation]:
    """Distinct linear maps ``E -> E'`` given by ``x -> c x c^-1`` with ``c E c^-1`` inside ``E'``.

    Each map is returned with one witnessing conjugator ``c``.
    """
    out: dict[F2Matrix, Permutation] = {}
    if e.rank > e2.rank:
        return out
    for c in g.elements:
        cols = []
        for b in e.basis:
            y = b.conjugate(c)
            coord = e2.coords.get(y)
            if coord is None:
                break
            cols.append(coord)
        else:
            m = F2Matrix.from_columns(cols, e2.rank)
            out.setdefault(m, c)
    return out


def conjugation_morphisms(
    g: FiniteGroup, e: ElementaryAbelianSubgroup, e2: ElementaryAbelianSubgroup
) -> list[F2Matrix]:
    maps = induced_maps(g, e, e2)
    return sorted(maps, key=lambda m: (m.rows,))


def conjugacy_classes(
    g: FiniteGroup, subgroups: Sequence[ElementaryAbelianSubgroup]
) -> list[list[ElementaryAbelianSubgroup]]:
    """Partition ``subgroups`` into conjugacy classes; each class starts with its minimal key."""
    by_key = {s.key: s for s in subgroups}
    seen: set = set()
    classes = []
    for s in sorted(subgroups, key=lambda s: (s.rank, s.key)):
        if s.key in seen:
            continue
        orbit = {s.key}
        queue = deque([s])
        while queue:
            cur = queue.popleft()
            for h in g.generators:
                k = cur.conjugate_key(h)
                if k not in orbit:
                    orbit.add(k)
                    queue.append(by_key[k])
        seen |= orbit
        classes.append([by_key[k] for k in sorted(orbit)])
    return classes


# -- group spec mini-language ----------------------------------------


def load_generator_file(path: str | os.PathLike, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Read ``{"degree": k, "generators": [[images...], ...]}`` with 1-based images."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        degree = int(data["degree"])
        gens = [Permutation.from_one_based(g) for g in data["generators"]]
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise SpecParseError(f"bad generator file {path}: {exc}") from exc
    for p in gens:
        if p.degree != degree:
            raise SpecParseError(f"generator {p.one_based()} does not have degree {degree}")
    return FiniteGroup(degree, gens, max_order=max_order, label=f"gens:{path}")


def parse_group_spec(spec: str, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from ``sym:N``, ``alt:N``, ``sylow-sym:N``, ``sylow-alt:N``,
    ``dihedral:2N``, ``h4-sylow`` or ``gens:<path>``."""
    spec = spec.strip()
    if spec == "h4-sylow":
        from .coxeter import h4_sylow

        return h4_sylow()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise SpecParseError(f"unrecognised group spec {spec!r}")
    if kind == "gens":
        return load_generator_file(arg, max_order=max_order)
    try:
        n = int(arg)
    except ValueError as exc:
        raise SpecParseError(f"expected an integer in {spec!r}") from exc
    if n < 0:
        raise SpecParseError(f"negative size in {spec!r}")
    builders = {
        "sym": symmetric_group,
        "alt": alternating_group,
        "sylow-sym": sylow_symmetric,
        "sylow-alt": sylow_alternating,
    }
    if kind in builders:
        group = builders[kind](n, max_order=max_order)
    elif kind == "dihedral":
        try:
            group = dihedral_group(n)
        except ValueError as exc:
            raise SpecParseError(str(exc)) from exc
        if group.order > max_order:
            raise ResourceLimitError(f"{spec} exceeds the order cap {max_order}")
    else:
        raise SpecParseError(f"unknown group family {kind!r}")
    group.label = spec
    return group
