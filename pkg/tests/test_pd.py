import pytest

from railstick.pd import PDCode, PDError, braid_closure, reduce_pd


def test_pdcode_validates_edge_multiplicity():
    with pytest.raises(PDError):
        PDCode(((1, 2, 3, 4),), (1,))


def test_braid_closure_trefoil_shape():
    pd = braid_closure((1, 1, 1))
    assert len(pd.crossings) == 3
    assert pd.n_components() == 1


def test_braid_closure_hopf():
    pd = braid_closure((1, 1))
    assert pd.n_components() == 2


def test_reduce_kills_kinks():
    pd = braid_closure((1, -1))  # R2 pair on two strands
    red = reduce_pd(pd)
    assert not red.crossings
    assert red.free_loops == 2


def test_mirror_flips_signs():
    pd = braid_closure((1, 1, 1))
    assert sorted(pd.mirror().signs) == sorted(-s for s in pd.signs)


def test_linking_profile_of_hopf():
    pd = braid_closure((1, 1))
    prof = pd.linking_profile()
    assert prof and all(abs(x) == 1 for x in prof)
