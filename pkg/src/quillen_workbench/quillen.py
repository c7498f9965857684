"""The Quillen category of elementary abelian 2-subgroups and the limit of their cohomology.

An element of the limit in degree ``n`` is a family ``(x_E)`` of degree-``n``
polynomials, one for each object, with ``x_E = f*(x_E')`` for every morphism
``f: E -> E'``.  The limit is computed degreewise as the kernel of the stacked
constraint rows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .errors import ResourceLimitError
from .f2 import F2Matrix, RowReducer, kernel_matrix
from .groups import (
    ElementaryAbelianSubgroup,
    FiniteGroup,
    conjugacy_classes,
    elementary_abelian_subgroups,
)
from .modules import cohomology_elementary_abelian, restriction_matrices

DEFAULT_MAX_RANK = 6
DEFAULT_MAX_OBJECTS = 5000
DEFAULT_MAX_MORPHISMS = 100_000


@dataclass
class QuillenObject:
    rank: int
    subgroup: ElementaryAbelianSubgroup | None = field(default=None, repr=False)
    class_size: int = 1


@dataclass(frozen=True)
class Morphism:
    src: int
    dst: int
    matrix: F2Matrix  # rank(dst) x rank(src)


@dataclass
class QuillenDiagram:
    label: str
    mode: str
    objects: list[QuillenObject]
    morphisms: list[Morphism]

    def validate(self) -> list[str]:
        from .f2 import rank

        bad = []
        for k, m in enumerate(self.morphisms):
            r_src, r_dst = self.objects[m.src].rank, self.objects[m.dst].rank
            if m.matrix.shape != (r_dst, r_src):
                bad.append(f"morphism {k} has shape {m.matrix.shape}")
            elif rank(m.matrix) != r_src:
                bad.append(f"morphism {k} is not injective")
        return bad


def _dim(rank_: int, n: int) -> int:
    if rank_ == 0:
        return int(n == 0)
    return comb(n + rank_ - 1, rank_ - 1)


def _coords_matrix(basis, target: ElementaryAbelianSubgroup) -> F2Matrix | None:
    cols = []
    for b in basis:
        c = target.coords.get(b)
        if c is None:
            return None
        cols.append(c)
    return F2Matrix.from_columns(cols, target.rank)


def build_quillen_diagram(
    g: FiniteGroup,
    mode: str = "skeleton",
    max_rank: int = DEFAULT_MAX_RANK,
    *,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
) -> QuillenDiagram:
    """Objects and morphisms of the Quillen category.

    ``full``: every subgroup, with covering inclusions and conjugation by each
    generator (composites are implied).  ``skeleton``: one object per
    conjugacy class and every distinct induced map between representatives.
    """
    if mode not in ("skeleton", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    subs = elementary_abelian_subgroups(g, max_rank, max_subgroups=max_objects)
    classes = conjugacy_classes(g, subs)
    size_of = {s.key: len(cls) for cls in classes for s in cls}
    morphisms: dict[tuple[int, int, F2Matrix], None] = {}

    def add(src: int, dst: int, mat: F2Matrix) -> None:
        if src == dst and mat == F2Matrix.identity(mat.ncols):
            return
        morphisms[(src, dst, mat)] = None
        if len(morphisms) > max_morphisms:
            raise ResourceLimitError(f"more than {max_morphisms} morphisms")

    if mode == "full":
        objects = [QuillenObject(s.rank, s, size_of[s.key]) for s in subs]
        where = {s.key: k for k, s in enumerate(subs)}
        by_rank: dict[int, list[int]] = {}
        for k, s in enumerate(subs):
            by_rank.setdefault(s.rank, []).append(k)
        for k, s in enumerate(subs):
            for k2 in by_rank.get(s.rank + 1, []):
                mat = _coords_matrix(s.basis, subs[k2])
                if mat is not None:
                    add(k, k2, mat)
            for h in g.generators:
                images = [b.conjugate(h) for b in s.basis]
                k2 = where[s.conjugate_key(h)]
                add(k, k2, _coords_matrix(images, subs[k2]))
    else:
        reps = [cls[0] for cls in classes]
        objects = [QuillenObject(r.rank, r, len(cls)) for r, cls in zip(reps, classes)]
        inverses = [c.inverse() for c in g.elements]
        for i, e in enumerate(reps):
            # distinct images of the basis under conjugation
            image_sets = {
                tuple(c * b * ci for b in e.basis) for c, ci in zip(g.elements, inverses)
            }
            for j, e2 in enumerate(reps):
                if e2.rank < e.rank:
                    continue
                for images in image_sets:
                    mat = _coords_matrix(images, e2)
                    if mat is not None:
                        add(i, j, mat)
    mlist = [Morphism(s, d, m) for (s, d, m) in sorted(morphisms, key=lambda t: (t[0], t[1], t[2].rows))]
    return QuillenDiagram(g.label, mode, objects, mlist)


@dataclass
class LimitTable:
    group: str
    mode: str
    degrees: list[int]
    dims: list[int]
    objects: list[tuple[int, int]]
    morphism_count: int
    basis: dict[int, list[tuple[int, ...]]] | None = None

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "mode": self.mode,
            "degrees": self.degrees,
            "dims": self.dims,
            "objects": [{"rank": r, "class_size": c} for r, c in self.objects],
            "morphism_count": self.morphism_count,
        }


def _offsets(diagram: QuillenDiagram, n: int) -> list[int]:
    offs = [0]
    for obj in diagram.objects:
        offs.append(offs[-1] + _dim(obj.rank, n))
    return offs


def _constraint_rows(diagram: QuillenDiagram, n: int, max_degree: int):
    offs = _offsets(diagram, n)
    for m in diagram.morphisms:
        fstar = restriction_matrices(m.matrix, max_degree)[n]  # H^n(dst) -> H^n(src)
        s0, d0 = offs[m.src], offs[m.dst]
        for k, row in enumerate(fstar.rows):
            yield (1 << (s0 + k)) ^ (row << d0)


def limit_dims(diagram: QuillenDiagram, max_degree: int, *, with_basis: bool = False) -> LimitTable:
    dims = []
    basis: dict[int, list[tuple[int, ...]]] = {}
    for n in range(max_degree + 1):
        offs = _offsets(diagram, n)
        total = offs[-1]
        reducer = RowReducer()
        for row in _constraint_rows(diagram, n, max_degree):
            reducer.add(row)
        dims.append(total - reducer.rank)
        if with_basis:
            ker = kernel_matrix(reducer.matrix(total))
            vecs = []
            for j in range(ker.ncols):
                bits = ker.column_bits(j)
                vecs.append(
                    tuple((bits >> offs[k]) & ((1 << (offs[k + 1] - offs[k])) - 1) for k in range(len(diagram.objects)))
                )
            basis[n] = vecs
    return LimitTable(
        diagram.label,
        diagram.mode,
        list(range(max_degree + 1)),
        dims,
        [(o.rank, o.class_size) for o in diagram.objects],
        len(diagram.morphisms),
        basis if with_basis else None,
    )


def quillen_limit(
    g: FiniteGroup, max_degree: int, mode: str = "skeleton", max_rank: int = DEFAULT_MAX_RANK, *, with_basis: bool = False
) -> LimitTable:
    return limit_dims(build_quillen_diagram(g, mode, max_rank), max_degree, with_basis=with_basis)


def is_compatible(diagram: QuillenDiagram, family: tuple[int, ...], n: int, max_degree: int) -> bool:
    """Whether ``family`` (one bit vector per object, degree ``n``) satisfies every constraint."""
    for m in diagram.morphisms:
        fstar = restriction_matrices(m.matrix, max_degree)[n]
        if fstar.apply_bits(family[m.dst]) != family[m.src]:
            return False
    return True


def steenrod_stability_check(table: LimitTable, diagram: QuillenDiagram, max_degree: int) -> list[str]:
    """Apply each ``Sq^i`` componentwise to every basis family and test the constraints."""
    if table.basis is None:
        raise ValueError("steenrod_stability_check needs a table computed with with_basis=True")
    top = min(max_degree, max(table.degrees))
    rings = {r: cohomology_elementary_abelian(r, top) for r in {o.rank for o in diagram.objects}}
    bad = []
    for n in range(top + 1):
        for k, fam in enumerate(table.basis[n]):
            for i in range(1, top - n + 1):
                image = tuple(
                    rings[o.rank].sq_matrix(i, n).apply_bits(x) for o, x in zip(diagram.objects, fam)
                )
                if not is_compatible(diagram, image, n + i, top):
                    bad.append(f"Sq^{i} of basis element {k} in degree {n}")
    return bad


def composite_spot_check(diagram: QuillenDiagram, table: LimitTable, trials: int, seed: int = 0) -> list[str]:
    """Composites of random composable pairs of morphisms are respected by the limit basis."""
    if table.basis is None:
        raise ValueError("needs a table with basis")
    rng = random.Random(seed)
    outgoing: dict[int, list[Morphism]] = {}
    for m in diagram.morphisms:
        outgoing.setdefault(m.src, []).append(m)
    firsts = [m for m in diagram.morphisms if outgoing.get(m.dst)]
    bad = []
    if not firsts:
        return bad
    top = max(table.degrees)
    for _ in range(trials):
        f = rng.choice(firsts)
        g = rng.choice(outgoing[f.dst])
        comp = g.matrix @ f.matrix
        for n in table.degrees:
            fstar = restriction_matrices(comp, top)[n]
            for fam in table.basis[n]:
                if fstar.apply_bits(fam[g.dst]) != fam[f.src]:
                    bad.append(f"composite {f.src}->{f.dst}->{g.dst} in degree {n}")
    return bad


def skeleton_vs_full_check(g: FiniteGroup, max_degree: int, *, max_order: int = 64) -> bool:
    if g.order > max_order:
        raise ResourceLimitError(f"full-mode comparison limited to order {max_order}")
    skel = quillen_limit(g, max_degree, "skeleton")
    full = quillen_limit(g, max_degree, "full")
    return skel.dims == full.dims


def dihedral_diagram(n: int) -> QuillenDiagram:
    """Skeleton diagram for the dihedral group of order ``2n``, written down directly.

    For ``n`` divisible by 4: two non-conjugate rank-2 subgroups, each with basis
    two reflections whose product is the central involution, the swap of those
    reflections, and the central ``Z/2`` included diagonally into both.
    """
    if n < 1:
        raise ValueError("n must be positive")
    trivial = QuillenObject(0)
    if n % 2 == 1:
        objects = [trivial, QuillenObject(1)]
        morphisms = [Morphism(0, 1, F2Matrix.zero(1, 0))]
    elif n % 4 == 2:
        objects = [trivial, QuillenObject(2)]
        morphisms = [Morphism(0, 1, F2Matrix.zero(2, 0))]
    else:
        swap = F2Matrix.from_lists([[0, 1], [1, 0]])
        diag = F2Matrix.from_lists([[1], [1]])
        objects = [trivial, QuillenObject(1), QuillenObject(2), QuillenObject(2)]
        morphisms = [
            Morphism(0, 1, F2Matrix.zero(1, 0)),
            Morphism(1, 2, diag),
            Morphism(1, 3, diag),
            Morphism(2, 2, swap),
            Morphism(3, 3, swap),
        ]
    return QuillenDiagram(f"dihedral-closed-form:{2 * n}", "closed-form", objects, morphisms)


def dihedral_closed_form(n: int, max_degree: int) -> LimitTable:
    return limit_dims(dihedral_diagram(n), max_degree)
