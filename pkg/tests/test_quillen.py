from __future__ import annotations

import json
import random
from math import comb

import pytest

from quillen_workbench.coxeter import h4_sylow
from quillen_workbench.errors import ResourceLimitError
from quillen_workbench.groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    parse_group_spec,
    sylow_alternating,
    sylow_symmetric,
)
from quillen_workbench.modules import cohomology_elementary_abelian
from quillen_workbench.quillen import (
    Morphism,
    QuillenDiagram,
    build_quillen_diagram,
    composite_spot_check,
    dihedral_closed_form,
    dihedral_diagram,
    is_compatible,
    limit_dims,
    quillen_limit,
    skeleton_vs_full_check,
    steenrod_stability_check,
)

N = 6


def klein():
    return dihedral_group(4)


def quaternion():
    # left multiplication by i and j on the unit quaternions
    gens = h4_sylow().generators[:2]
    return FiniteGroup(8, gens, label="Q8")


def _object_dim(rank, n):
    return int(n == 0) if rank == 0 else comb(n + rank - 1, rank - 1)


# -- diagrams ---------------------------------------------------------


def test_klein_skeleton():
    d = build_quillen_diagram(klein())
    assert [o.rank for o in d.objects] == [0, 1, 1, 1, 2]
    assert all(o.class_size == 1 for o in d.objects)
    # abelian: no non-identity self-maps, only inclusions
    assert all(m.src != m.dst for m in d.morphisms)
    assert all(d.objects[m.src].rank < d.objects[m.dst].rank for m in d.morphisms)
    assert d.validate() == []


def test_quaternion_skeleton():
    g = quaternion()
    assert g.order == 8
    d = build_quillen_diagram(g)
    assert [o.rank for o in d.objects] == [0, 1]
    assert [(m.src, m.dst) for m in d.morphisms] == [(0, 1)]


def test_dihedral_skeleton_has_two_rank_two_classes():
    d = build_quillen_diagram(dihedral_group(8))
    assert [o.rank for o in d.objects].count(2) == 2
    # each rank-2 class carries the swap fixing the central involution
    selfmaps = [m for m in d.morphisms if m.src == m.dst]
    assert len(selfmaps) == 2


@pytest.mark.parametrize("spec", ["dihedral:8", "sylow-sym:4", "sylow-sym:6", "sylow-alt:8", "h4-sylow"])
@pytest.mark.parametrize("mode", ["skeleton", "full"])
def test_diagrams_are_valid(spec, mode):
    d = build_quillen_diagram(parse_group_spec(spec), mode)
    assert d.validate() == []
    if mode == "full":
        assert sum(o.class_size for o in build_quillen_diagram(parse_group_spec(spec)).objects) == len(d.objects)


def test_unknown_mode():
    with pytest.raises(ValueError):
        build_quillen_diagram(klein(), "bogus")


def test_caps_fail_loudly():
    g = sylow_symmetric(8)
    with pytest.raises(ResourceLimitError):
        build_quillen_diagram(g, max_objects=10)
    with pytest.raises(ResourceLimitError):
        build_quillen_diagram(g, max_morphisms=5)
    with pytest.raises(ResourceLimitError):
        skeleton_vs_full_check(g, 2)


# -- limit dimensions -------------------------------------------------


def test_limit_examples():
    assert quillen_limit(cyclic_group(4), N).dims == [1] * (N + 1)
    assert quillen_limit(klein(), N).dims == [d + 1 for d in range(N + 1)]
    assert quillen_limit(dihedral_group(8), N).dims == [d + 1 for d in range(N + 1)]
    assert quillen_limit(quaternion(), N).dims == [1] * (N + 1)


def test_trivial_group_limit():
    g = FiniteGroup(2, [], label="trivial")
    assert quillen_limit(g, 4).dims == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("spec", ["dihedral:4", "dihedral:8", "dihedral:16", "sylow-sym:4", "sylow-sym:6", "sylow-alt:8"])
def test_skeleton_agrees_with_full(spec):
    assert skeleton_vs_full_check(parse_group_spec(spec), N)


def test_sylow_alt8_limit_matches_series():
    from quillen_workbench.series import series_sylow_alt_pipeline

    _, _, a3 = series_sylow_alt_pipeline(3, N)
    table = quillen_limit(sylow_alternating(8), N)
    assert table.dims == a3.to_list()
    assert table.dims[1] == 3 and table.dims[2] == 7


def test_dims_bounded_by_objects():
    d = build_quillen_diagram(sylow_symmetric(8))
    table = limit_dims(d, N)
    assert table.dims[0] == 1
    for n in range(N + 1):
        assert table.dims[n] <= sum(_object_dim(o.rank, n) for o in d.objects)


def _shuffled(d: QuillenDiagram, rng: random.Random) -> QuillenDiagram:
    order = list(range(len(d.objects)))
    rng.shuffle(order)
    new_index = {old: new for new, old in enumerate(order)}
    objects = [d.objects[old] for old in order]
    morphisms = [Morphism(new_index[m.src], new_index[m.dst], m.matrix) for m in d.morphisms]
    rng.shuffle(morphisms)
    return QuillenDiagram(d.label, d.mode, objects, morphisms)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_limit_independent_of_ordering(seed):
    d = build_quillen_diagram(sylow_symmetric(6))
    base = limit_dims(d, N).dims
    assert limit_dims(_shuffled(d, random.Random(seed)), N).dims == base


# -- basis families ---------------------------------------------------


@pytest.mark.parametrize("spec", ["dihedral:8", "sylow-sym:8", "h4-sylow"])
def test_basis_families_are_compatible(spec):
    d = build_quillen_diagram(parse_group_spec(spec))
    table = limit_dims(d, 5, with_basis=True)
    for n in range(6):
        assert len(table.basis[n]) == table.dims[n]
        for fam in table.basis[n]:
            assert is_compatible(d, fam, n, 5)


def test_stability_example_on_klein():
    d = build_quillen_diagram(klein())
    table = limit_dims(d, 4, with_basis=True)
    top = len(d.objects) - 1
    ring = cohomology_elementary_abelian(2, 4)
    u1, u2 = (1 << ring.labels[1].index("u1")), (1 << ring.labels[1].index("u2"))
    # the family whose top component is u1 + u2
    fam = None
    for mask in range(1, 1 << len(table.basis[1])):
        acc = [0] * len(d.objects)
        for k, f in enumerate(table.basis[1]):
            if mask >> k & 1:
                acc = [a ^ b for a, b in zip(acc, f)]
        if acc[top] == u1 | u2:
            fam = tuple(acc)
    assert fam is not None
    image = tuple(
        cohomology_elementary_abelian(o.rank, 4).sq_matrix(1, 1).apply_bits(x) for o, x in zip(d.objects, fam)
    )
    squares = (1 << ring.labels[2].index("u1^2")) | (1 << ring.labels[2].index("u2^2"))
    assert image[top] == squares
    assert is_compatible(d, image, 2, 4)


@pytest.mark.parametrize("spec", ["dihedral:4", "dihedral:8", "sylow-sym:8", "sylow-alt:8"])
def test_steenrod_stability(spec):
    d = build_quillen_diagram(parse_group_spec(spec))
    table = limit_dims(d, N, with_basis=True)
    assert steenrod_stability_check(table, d, N) == []


def test_stability_needs_basis():
    d = build_quillen_diagram(klein())
    with pytest.raises(ValueError):
        steenrod_stability_check(limit_dims(d, 3), d, 3)


@pytest.mark.parametrize("seed", [0, 5])
def test_composite_spot_check(seed):
    d = build_quillen_diagram(sylow_symmetric(8))
    table = limit_dims(d, 4, with_basis=True)
    assert composite_spot_check(d, table, trials=40, seed=seed) == []


# -- dihedral closed form ---------------------------------------------


def test_dihedral_closed_form_examples():
    assert dihedral_closed_form(3, N).dims == [1] * (N + 1)
    assert dihedral_closed_form(2, N).dims == [d + 1 for d in range(N + 1)]
    assert dihedral_closed_form(4, N).dims == [d + 1 for d in range(N + 1)]
    with pytest.raises(ValueError):
        dihedral_diagram(0)


@pytest.mark.parametrize("n", range(1, 11))
def test_dihedral_closed_form_matches_group(n):
    assert dihedral_closed_form(n, N).dims == quillen_limit(dihedral_group(2 * n), N).dims


def test_limit_table_json():
    data = json.loads(json.dumps(quillen_limit(klein(), 3).to_json()))
    assert set(data) == {"group", "mode", "degrees", "dims", "objects", "morphism_count"}
    assert data["degrees"] == [0, 1, 2, 3]
    assert data["objects"][0] == {"rank": 0, "class_size": 1}
