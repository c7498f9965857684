from __future__ import annotations

import pytest

from quillen_workbench.coxeter import (
    alpha_iso_check,
    alpha_iso_report,
    alpha_map,
    h4_matches_alt8,
    h4_projection_image,
    h4_sign_kernel,
    h4_sylow,
    signed_model,
    signed_permutation,
    underlying_permutation,
)
from quillen_workbench.errors import UnsupportedError
from quillen_workbench.groups import Permutation, sylow_alternating, sylow_symmetric


def test_signed_permutation_encoding():
    p = signed_permutation((1, 0), (1, 0))  # e1 -> -e2, e2 -> e1
    assert p.images == (3, 2, 0, 1)
    assert underlying_permutation(p) == Permutation((1, 0))
    with pytest.raises(ValueError):
        underlying_permutation(Permutation((1, 2, 0, 3)))


def test_h4_sylow_order_and_projection():
    g = h4_sylow()
    assert g.order == 64
    assert h4_projection_image(g) == set(sylow_alternating(4).elements)
    assert len(h4_sign_kernel(g)) == 16


def test_h4_contains_the_quaternion_actions():
    g = h4_sylow()
    minus_one = signed_permutation((0, 1, 2, 3), (1, 1, 1, 1))
    assert minus_one in g
    # left multiplication by i has order 4 and squares to -1
    li = g.generators[0]
    assert li.order() == 4 and li * li == minus_one


@pytest.mark.parametrize("m", [2, 3])
def test_alpha_iso(m):
    report = alpha_iso_report(m)
    assert report.homomorphism and report.bijective
    assert report.signature_compatible and report.kernel_bijective
    assert report.source_order == report.target_order == 2 ** (2**m - 1)
    assert alpha_iso_check(m)


def test_alpha2_is_onto_dihedral_model():
    images = {alpha_map(2, x) for x in sylow_symmetric(4).elements}
    assert images == signed_model(sylow_symmetric(2))
    assert len(images) == 8


@pytest.mark.parametrize("m", [0, 1, 4])
def test_alpha_out_of_range(m):
    with pytest.raises(UnsupportedError):
        alpha_iso_check(m)


def test_h4_matches_alternating_sylow():
    assert h4_matches_alt8()
