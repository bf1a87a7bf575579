import pytest

from dgkunneth.checks import all_ok
from dgkunneth.field import Field
from dgkunneth.genlab import (
    CorpusProfile,
    generate_corpus,
    noninjectivity_witness,
)
from dgkunneth.dgmodule import validate_module

Q = Field.rationals()
F101 = Field.prime(101)


@pytest.fixture(params=[Q, F101], ids=["Q", "F101"])
def k(request):
    return request.param


def test_witness_dimensions_and_membership(k):
    w = noninjectivity_witness(k)
    assert w.source_dim == 2
    assert w.target_dim == 1
    assert any(x != k.zero for x in w.element)
    assert all(x == k.zero for x in w.image)
    assert w.surjective
    assert all_ok(w.checks)


def test_corpus_instances_all_validate(k):
    prof = CorpusProfile(field=k, instance_count=25, seed=9)
    for inst in generate_corpus(prof):
        assert validate_module(inst.m) == []
        assert validate_module(inst.n) == []
        assert max(inst.m.dims.values()) <= prof.max_per_degree_dim
        assert max(inst.n.dims.values()) <= prof.max_per_degree_dim


def test_corpus_family_coverage(k):
    prof = CorpusProfile(field=k, instance_count=60, seed=5)
    corpus = generate_corpus(prof)
    fams = {inst.family for inst in corpus}
    # ordinary, graded-commutative, noncommutative and contractible all appear
    assert "exterior" in fams or "koszul_dg" in fams
    assert "upper_triangular" in fams
    assert "exterior_contractible" in fams
    assert fams & {"field", "dual_numbers", "truncated_poly3"}
    # zero-cohomology modules occur alongside cohomologically nontrivial pairs
    from dgkunneth.resolve import sup_cohomology
    zero_h = sum(1 for i in corpus
                 if sup_cohomology(i.m) is None or sup_cohomology(i.n) is None)
    both = sum(1 for i in corpus
               if sup_cohomology(i.m) is not None and sup_cohomology(i.n) is not None)
    assert zero_h > 0 and both > 0


def test_profile_validation():
    with pytest.raises(Exception):
        CorpusProfile(field=F101, instance_count=0)
    with pytest.raises(Exception):
        CorpusProfile(field=F101, family_mix={"nonsense": 1.0})
    with pytest.raises(Exception):
        CorpusProfile(field=F101, family_mix={"exterior": 0.0})
