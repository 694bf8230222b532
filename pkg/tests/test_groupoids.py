import pytest

from gpdlab import groups
from gpdlab.groupoids import (GroupoidError, GroupoidFunctor, arrow_name,
                              codiscrete, connected_components, delooping,
                              discrete, disjoint_union, find_isomorphism,
                              hom_bijection_holds, identity_functor,
                              is_cofibration, is_equivalence, is_isomorphic,
                              pair_mor, pair_obj, product, relabel,
                              standard_groupoid, validate_functor,
                              validate_groupoid, vertex_group)

import oracles


B1 = discrete(["*"])
BZ2 = delooping(groups.cyclic(2))
C2 = codiscrete(["a", "b"])
D2 = discrete(["a", "b"])
D3 = discrete(["a", "b", "c"])
C3 = codiscrete(["a", "b", "c"])
Z2xC2 = product(BZ2, C2)


def inclusion_BZ2_Z2xC2():
    return GroupoidFunctor(BZ2, Z2xC2, {"*": pair_obj("*", "a")},
                           {m: pair_mor(m, "a>a") for m in BZ2.morphism_ids})


def collapse_C2_B1():
    return GroupoidFunctor(C2, B1, {"a": "*", "b": "*"},
                           {m: arrow_name("*", "*") for m in C2.morphism_ids})


class TestValidation:
    def test_codiscrete_pair_is_valid(self):
        assert validate_groupoid(C2).ok
        assert C2.n_morphisms == 4

    def test_z2_delooping_is_valid(self):
        assert validate_groupoid(BZ2).ok

    def test_missing_inverse_is_an_axiom_violation(self):
        from gpdlab.groupoids import ConcreteGroupoid
        g = ConcreteGroupoid(
            ["*"], [("e", "*", "*"), ("s", "*", "*")],
            {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"},
            {"*": "e"}, {"e": "e"})
        rep = validate_groupoid(g)
        assert not rep.ok
        assert any("missing inverse" in msg and "s" in msg for msg in rep.axioms)
        assert not rep.structural

    def test_unknown_identifier_is_structural(self):
        from gpdlab.groupoids import ConcreteGroupoid
        g = ConcreteGroupoid(["*"], [("e", "*", "ghost")], {("e", "e"): "e"},
                             {"*": "e"}, {"e": "e"})
        rep = validate_groupoid(g)
        assert rep.structural
        assert not rep.ok


class TestComponents:
    def test_union_of_loop_and_pair(self):
        g = disjoint_union(BZ2, C2)
        comps = connected_components(g)
        assert sorted(len(m) for _, m in comps) == [1, 2]

    def test_codiscrete_three_is_connected(self):
        assert len(connected_components(C3)) == 1

    def test_discrete_three_has_three_classes(self):
        assert len(connected_components(D3)) == 3

    def test_base_is_first_in_input_order(self):
        comps = connected_components(C2)
        assert comps[0][0] == "a"


class TestVertexGroup:
    def test_codiscrete_pair_has_trivial_vertex_group(self):
        assert vertex_group(C2, "a").order == 1

    def test_z2_delooping(self):
        assert vertex_group(BZ2, "*").order == 2

    def test_connected_two_object_z2(self):
        # oracle: raw loop enumeration
        x = pair_obj("*", "a")
        loops, table = oracles.brute_force_loops(Z2xC2, x)
        assert len(loops) == 2
        vg = vertex_group(Z2xC2, x)
        assert vg.order == 2
        assert vg.table == {k: v for k, v in table.items()}

    def test_unknown_object(self):
        with pytest.raises(GroupoidError):
            vertex_group(C2, "zz")

    def test_vertex_groups_in_one_component_isomorphic(self):
        for g in (C3, Z2xC2, product(delooping(groups.symmetric3()), C2)):
            for base, members in connected_components(g):
                tables = [vertex_group(g, x).as_group_table() for x in members]
                assert all(groups.group_isomorphic(tables[0], t) for t in tables[1:])


class TestPredicates:
    def test_identity_is_cofibration(self):
        assert is_cofibration(identity_functor(C2))

    def test_skeleton_inclusion_is_cofibration(self):
        assert is_cofibration(inclusion_BZ2_Z2xC2())

    def test_collapse_is_not_cofibration(self):
        assert not is_cofibration(collapse_C2_B1())

    def test_collapse_is_equivalence(self):
        rep = is_equivalence(collapse_C2_B1())
        assert rep.ok

    def test_z2_collapse_is_not_faithful(self):
        F = GroupoidFunctor(BZ2, B1, {"*": "*"},
                            {m: arrow_name("*", "*") for m in BZ2.morphism_ids})
        rep = is_equivalence(F)
        assert not rep.ok
        assert "not faithful" in rep.failures

    def test_point_inclusion_into_pair_is_equivalence(self):
        F = GroupoidFunctor(B1, C2, {"*": "a"},
                            {arrow_name("*", "*"): arrow_name("a", "a")})
        assert validate_functor(F).ok
        assert is_equivalence(F).ok

    def test_inclusion_missing_component_not_essentially_surjective(self):
        g = disjoint_union(BZ2, C2)
        F = GroupoidFunctor(BZ2, g, {"*": "0.*"},
                            {m: "0." + m for m in BZ2.morphism_ids})
        rep = is_equivalence(F)
        assert "not essentially surjective" in rep.failures

    def test_hom_bijections_for_equivalences(self):
        for F in (collapse_C2_B1(), identity_functor(Z2xC2),
                  inclusion_BZ2_Z2xC2()):
            if is_equivalence(F).ok:
                assert hom_bijection_holds(F)


class TestBuilders:
    def test_codiscrete_three_has_nine_morphisms(self):
        assert C3.n_morphisms == 9

    def test_s3_delooping_has_six_morphisms(self):
        g = delooping(groups.symmetric3())
        assert g.n_morphisms == 6
        assert validate_groupoid(g).ok

    def test_union_of_points_is_discrete_pair(self):
        g = disjoint_union(B1, B1)
        assert is_isomorphic(g, D2)

    def test_non_group_table_is_rejected(self):
        with pytest.raises(groups.GroupTableError):
            groups.GroupTable(["e", "s"], {("e", "e"): "e", ("e", "s"): "s",
                                           ("s", "e"): "s", ("s", "s"): "s"})

    def test_dispatcher(self):
        assert standard_groupoid("codiscrete", n=3).n_morphisms == 9
        assert standard_groupoid("discrete", objects=["x"]).n_morphisms == 1
        got = standard_groupoid("product", left=BZ2, right=C2)
        assert got.n_morphisms == 8
        with pytest.raises(GroupoidError):
            standard_groupoid("mystery")

    def test_product_counts(self):
        assert Z2xC2.n_objects == 2
        assert Z2xC2.n_morphisms == 8
        assert validate_groupoid(Z2xC2).ok


class TestIsomorphism:
    def test_relabelled_copy_is_isomorphic(self):
        g = relabel(Z2xC2, {x: "o" + x for x in Z2xC2.objects},
                    {m: "n" + m for m in Z2xC2.morphism_ids})
        assert is_isomorphic(Z2xC2, g)

    def test_distinguishes_group_structure(self):
        assert not is_isomorphic(delooping(groups.cyclic(4)),
                                 delooping(groups.klein4()))
        assert not is_isomorphic(C2, D2)

    def test_returns_actual_maps(self):
        omap, mmap = find_isomorphism(C2, codiscrete(["x", "y"]))
        assert set(omap.values()) == {"x", "y"}
        assert len(set(mmap.values())) == 4


class TestFunctorValidation:
    def test_rejects_broken_composition(self):
        F = GroupoidFunctor(C2, C2, {"a": "a", "b": "b"},
                            {arrow_name("a", "a"): arrow_name("a", "a"),
                             arrow_name("b", "b"): arrow_name("b", "b"),
                             arrow_name("a", "b"): arrow_name("a", "b"),
                             arrow_name("b", "a"): arrow_name("b", "a")})
        assert validate_functor(F).ok
        BZ3 = delooping(groups.cyclic(3))
        bad = GroupoidFunctor(BZ3, BZ3, {"*": "*"},
                              {"g0": "g0", "g1": "g1", "g2": "g1"})
        rep = validate_functor(bad)
        assert not rep.ok

    def test_structural_error_for_missing_image(self):
        F = GroupoidFunctor(C2, C2, {"a": "a"}, {})
        rep = validate_functor(F)
        assert rep.structural
