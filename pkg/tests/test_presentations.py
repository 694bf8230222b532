import pytest

from gpdlab import groups
from gpdlab.groupoids import (GroupoidError, GroupoidFunctor, NonCofibrationError,
                              arrow_name, codiscrete, delooping, discrete,
                              identity_functor, is_isomorphic, validate_groupoid,
                              vertex_group)
from gpdlab.presentations import (Concretization, PresentedGroupoid, Unknown,
                                  concretize, pushout_along_cofibration,
                                  validate_presentation)

import oracles

B1 = discrete(["*"])
BZ2 = delooping(groups.cyclic(2))
C2 = codiscrete(["a", "b"])
D2 = discrete(["a", "b"])


def pair_inclusion():
    return GroupoidFunctor(D2, C2, {"a": "a", "b": "b"},
                           {arrow_name("a", "a"): arrow_name("a", "a"),
                            arrow_name("b", "b"): arrow_name("b", "b")})


class TestConcretize:
    def test_involution_presentation_realizes_z2(self):
        p = PresentedGroupoid(("x",), (("s", "x", "x"),), ((("s", "s"), ()),))
        conc = concretize(p, bound=10)
        assert isinstance(conc, Concretization)
        assert conc.groupoid.n_morphisms == 2
        assert is_isomorphic(conc.groupoid, BZ2)

    def test_free_loop_is_unknown(self):
        p = PresentedGroupoid(("x",), (("s", "x", "x"),), ())
        out = concretize(p, bound=100)
        assert isinstance(out, Unknown)

    def test_empty_presentation_realizes_point(self):
        p = PresentedGroupoid(("x",), (), ())
        conc = concretize(p, bound=10)
        assert conc.groupoid.n_morphisms == 1
        assert is_isomorphic(conc.groupoid, B1)

    def test_nonpositive_bound_is_an_error(self):
        p = PresentedGroupoid(("x",), (), ())
        with pytest.raises(GroupoidError):
            concretize(p, bound=0)

    def test_inverse_generator_reachability(self):
        # one generator between two objects: realization is the codiscrete pair
        p = PresentedGroupoid(("x", "y"), (("t", "x", "y"),), ())
        conc = concretize(p, bound=10)
        assert is_isomorphic(conc.groupoid, C2)

    def test_validation_rejects_mismatched_relation(self):
        p = PresentedGroupoid(("x", "y"), (("t", "x", "y"),),
                              ((("t",), ()),))
        rep = validate_presentation(p)
        assert not rep.ok


class TestGroupPresentations:
    # words multiply left to right: (a, b) stands for a then-compose b-first,
    # i.e. the product a * b in a one-object groupoid

    def test_symmetric_group_presentation(self):
        p = PresentedGroupoid(
            ("x",), (("s", "x", "x"), ("t", "x", "x")),
            ((("s", "s"), ()), (("t", "t", "t"), ()),
             (("s", "t", "s", "t"), ())))
        conc = concretize(p, bound=50)
        assert isinstance(conc, Concretization)
        assert conc.groupoid.n_morphisms == 6
        vg = vertex_group(conc.groupoid, "x")
        assert groups.group_isomorphic(vg.as_group_table(), groups.symmetric3())

    def test_dihedral_presentation(self):
        p = PresentedGroupoid(
            ("x",), (("r", "x", "x"), ("f", "x", "x")),
            ((("r",) * 4, ()), (("f", "f"), ()), (("r", "f", "r", "f"), ())))
        conc = concretize(p, bound=50)
        assert conc.groupoid.n_morphisms == 8
        vg = vertex_group(conc.groupoid, "x")
        assert groups.group_isomorphic(vg.as_group_table(), groups.dihedral(4))

    def test_quaternion_presentation(self):
        # i^4 = 1, j^2 = i^2, j i j^{-1} = i^{-1} as positive word pairs
        p = PresentedGroupoid(
            ("x",), (("i", "x", "x"), ("j", "x", "x")),
            ((("i",) * 4, ()), (("j", "j"), ("i", "i")),
             (("j", "i"), ("i", "i", "i", "j"))))
        conc = concretize(p, bound=50)
        assert conc.groupoid.n_morphisms == 8
        vg = vertex_group(conc.groupoid, "x")
        assert groups.group_isomorphic(vg.as_group_table(), groups.quaternion8())

    def test_two_object_loop_presentation(self):
        p = PresentedGroupoid(
            ("x", "y"), (("s", "x", "x"), ("t", "x", "y")),
            ((("s", "s"), ()),))
        conc = concretize(p, bound=50)
        from gpdlab.groupoids import product, codiscrete
        want = product(delooping(groups.cyclic(2)), codiscrete(["a", "b"]))
        assert is_isomorphic(conc.groupoid, want)

    def test_full_table_presentations_of_random_groups(self):
        # presenting a group by its whole multiplication table realizes it
        from gpdlab.fixtures import rng_from_seed
        rng = rng_from_seed(99)
        zoo = [groups.cyclic(5), groups.klein4(), groups.dihedral(5),
               groups.alternating4(), groups.cyclic(9)]
        for table in zoo:
            gens = tuple((a, "x", "x") for a in table.elements)
            rels = tuple((((a, b), (table.mult[(a, b)],)))
                         for a in table.elements for b in table.elements)
            p = PresentedGroupoid(("x",), gens, rels)
            conc = concretize(p, bound=4 * len(table))
            assert conc, table.name
            assert conc.groupoid.n_morphisms == len(table), table.name
            vg = vertex_group(conc.groupoid, "x")
            assert groups.group_isomorphic(vg.as_group_table(), table), table.name

    def test_coincidence_cascade(self):
        # forcing one generator trivial collapses the whole cyclic tower
        p = PresentedGroupoid(
            ("x",), (("a", "x", "x"), ("b", "x", "x")),
            ((("a", "a"), ("b",)), (("b", "b"), ("a",)), (("a",), ())))
        conc = concretize(p, bound=20)
        assert conc.groupoid.n_morphisms == 1


class TestPushout:
    def test_circle_stays_a_presentation(self):
        inc = pair_inclusion()
        po = pushout_along_cofibration(inc, inc)
        assert len(po.presentation.objects) == 2
        out = concretize(po.presentation, bound=100)
        assert isinstance(out, Unknown)
        # evidence of the infinite vertex group: the explored morphism set
        # keeps growing past the bound
        assert out.created > 100

    def test_pushout_along_identity_is_other_leg(self):
        inc = pair_inclusion()
        po = pushout_along_cofibration(identity_functor(D2), inc)
        conc = concretize(po.presentation, bound=100)
        assert is_isomorphic(conc.groupoid, C2)

    def test_collapse_of_z2_along_point(self):
        i = GroupoidFunctor(B1, BZ2, {"*": "*"}, {arrow_name("*", "*"): "g0"})
        po = pushout_along_cofibration(i, identity_functor(B1))
        conc = concretize(po.presentation, bound=100)
        assert is_isomorphic(conc.groupoid, BZ2)

    def test_rejects_non_cofibration(self):
        collapse = GroupoidFunctor(C2, B1, {"a": "*", "b": "*"},
                                   {m: arrow_name("*", "*")
                                    for m in C2.morphism_ids})
        with pytest.raises(NonCofibrationError):
            pushout_along_cofibration(collapse, identity_functor(C2))

    def test_other_leg_structure_map_is_object_injective(self):
        # cofibrations are stable under pushout
        i = GroupoidFunctor(B1, BZ2, {"*": "*"}, {arrow_name("*", "*"): "g0"})
        f = GroupoidFunctor(B1, C2, {"*": "a"},
                            {arrow_name("*", "*"): arrow_name("a", "a")})
        po = pushout_along_cofibration(i, f)
        assert po.from_other_leg.objects_injective()

    def test_universal_property_small(self):
        i = GroupoidFunctor(B1, BZ2, {"*": "*"}, {arrow_name("*", "*"): "g0"})
        f = GroupoidFunctor(B1, C2, {"*": "a"},
                            {arrow_name("*", "*"): arrow_name("a", "a")})
        po = pushout_along_cofibration(i, f)
        conc = concretize(po.presentation, bound=200)
        assert isinstance(conc, Concretization)
        assert validate_groupoid(conc.groupoid).ok
        targets = [B1, BZ2, C2]
        checked = oracles.check_pushout_universal_property(i, f, po, conc, targets)
        assert checked > 0
