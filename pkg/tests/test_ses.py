import random

import pytest
from hypothesis import given, settings, strategies as st

from abext.abelian import cyclic, free_group, hom_group, hom_identity, make_hom
from abext.ses import (
    SES,
    NotComplex,
    NotExact,
    NotInjective,
    NotSurjective,
    PathData,
    PathDataError,
    find_path_data,
    identity_loop,
    identity_path,
    make_ses,
    retakh_from_hom,
    retakh_to_hom,
    trivial_ses,
)

from corpus import G, ambient_sequences, random_ses, random_unimodular, represent

Z2, Z4 = cyclic(2), cyclic(4)


def nonsplit():
    return ambient_sequences()[0]


def test_validation_errors_are_distinct():
    with pytest.raises(NotInjective):
        make_ses(Z2, Z4, Z2, make_hom(Z2, Z4, [[0]]), make_hom(Z4, Z2, [[1]]))
    with pytest.raises(NotSurjective):
        make_ses(Z2, Z4, Z2, make_hom(Z2, Z4, [[2]]), make_hom(Z4, Z2, [[0]]))
    V = G("Z/2 + Z/2")
    with pytest.raises(NotComplex):
        make_ses(Z2, V, Z2, make_hom(Z2, V, [[1], [0]]), make_hom(V, Z2, [[1, 1]]))
    Z = free_group(1)
    with pytest.raises(NotExact):
        # a complex whose image 4Z is smaller than the kernel 2Z
        make_ses(Z, Z, cyclic(2), make_hom(Z, Z, [[4]]), make_hom(Z, cyclic(2), [[1]]))


def test_trivial_ses_is_valid():
    for B, A in [(Z2, Z4), (free_group(1), Z2), (G("0"), Z2), (Z2, G("0"))]:
        S = trivial_ses(B, A)
        SES(S.left, S.middle, S.right, S.inclusion, S.projection)


def test_path_data_verification():
    S = nonsplit()
    pd = identity_path(S)
    assert pd.verify()
    # multiplication by 3 fixes both maps: a nontrivial self-equivalence
    three = make_hom(Z4, Z4, [[3]])
    assert PathData.unverified(S, S, three, three).verify()
    wrong_inverse = PathData.unverified(S, S, hom_identity(Z4), three)
    assert not wrong_inverse.verify()
    with pytest.raises(PathDataError):
        PathData(S, S, make_hom(Z4, Z4, [[2]]), make_hom(Z4, Z4, [[2]]))


def test_split_and_nonsplit_are_different_components():
    S = nonsplit()
    T = trivial_ses(Z2, Z2)
    assert find_path_data(S, T) is None
    assert find_path_data(T, T).verify()


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_re_presented_sequence_is_equivalent(seed):
    rng = random.Random(seed)
    S = random_ses(rng, shuffle=False)
    U = random_unimodular(rng, S.middle.gens)
    S2 = represent(S, U)
    pd = find_path_data(S, S2)
    assert pd is not None and pd.verify()
    back = pd.reverse()
    assert back.verify()
    loop = pd.then(back)
    assert loop.src == S and loop.tgt == S and loop.verify()


def test_retakh_examples():
    f = make_hom(Z4, Z2, [[1]])
    loop = retakh_from_hom(f)
    assert retakh_to_hom(loop).equals(f)
    assert retakh_to_hom(identity_loop(Z4, Z2)).is_zero()


@pytest.mark.parametrize("B,A", [(Z2, Z2), (Z4, Z2), (Z2, Z4), (G("Z/2 + Z/2"), Z2), (cyclic(6), cyclic(3))])
def test_retakh_composition_is_addition(B, A):
    H = hom_group(B, A)
    homs = [H.hom(v) for v in H.base.elements()]
    for f in homs:
        for g in homs:
            composed = retakh_from_hom(f).compose(retakh_from_hom(g))
            assert retakh_to_hom(composed).equals(f + g)
