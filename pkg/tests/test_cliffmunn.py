from collections import Counter
from fractions import Fraction
from math import comb, factorial

import pytest

from monoidrep.elements import (
    PartialBijection,
    Transformation,
    full_transformation_monoid,
    symmetric_group,
    symmetric_inverse_monoid,
)
from monoidrep.green import maximal_subgroup, transversal, Transversal
from monoidrep.lattice import make_lattice, sgl_monoid
from monoidrep.linrep import (
    Representation,
    Subspace,
    char_equal,
    commutant_dim,
    direct_sum,
    iso_test,
    mapping_rep,
    mapping_rep_by_kind,
    one_dim_invariant_lines,
    restrict_rep,
    rref,
    spin,
    trivial_rep,
)
from monoidrep.specht import partitions, specht_rep, tabloid_module
from monoidrep.cliffmunn import (
    ApexError,
    CatalogError,
    annihilator,
    apex,
    cm_catalog,
    cm_roundtrip_check,
    composition_leq,
    decompose,
    induce,
    induce_raw,
    induce_sgl,
    monoid_green,
    reduce_rep,
    renner_permutohedron_catalog,
    semisimple_predicate,
    support_jclasses,
)

F = Fraction


@pytest.fixture(scope="module")
def i3():
    return symmetric_inverse_monoid(3)


@pytest.fixture(scope="module")
def i3_map(i3):
    return mapping_rep(i3)


@pytest.fixture(scope="module")
def t3():
    return full_transformation_monoid(3)


@pytest.fixture(scope="module")
def t3_map(t3):
    return mapping_rep(t3)


@pytest.fixture(scope="module")
def i3_catalog(i3):
    return cm_catalog(i3)


@pytest.fixture(scope="module")
def renner3():
    return renner_permutohedron_catalog(3)


def rank_of_class(monoid, classes, j):
    return monoid.elements[classes.jclasses[j][0]].rank


class TestReduce:
    def test_partial_reflection_reduces_to_permuting_coordinates(self, i3, i3_map):
        for m in (1, 2, 3):
            e = i3.index(PartialBijection.partial_identity(3, range(1, m + 1)))
            red = reduce_rep(i3_map, e)
            assert red.rep.dim == m
            assert len(red.group) == factorial(m)
            # the permuting-coordinates character counts fixed points
            for k, el in enumerate(red.group.elements):
                fixed = sum(1 for d, i in el.pairs if d == i)
                assert red.rep.character()[k] == fixed

    def test_zero_idempotent_kills_everything(self, i3, i3_map):
        red = reduce_rep(i3_map, i3.index(PartialBijection.zero(3)))
        assert red.rep is None
        assert red.carrier.dim == 0

    def test_t3_hyperplane_reduces_to_reflectional(self, t3, t3_map):
        w = spin(t3_map, [(1, -1, 0)])
        wrep = restrict_rep(t3_map, w)
        e = t3.index(Transformation([1, 2, 2]))  # rank 2, fig-14 pattern
        red = reduce_rep(wrep, e)
        assert red.rep.dim == 1
        assert sorted(set(red.rep.character())) == [F(-1), F(1)]

    def test_reduce_at_identity_restricts_to_units(self, i3, i3_map):
        red = reduce_rep(i3_map, i3.identity_index)
        assert red.rep.dim == 3
        assert len(red.group) == 6
        for el in red.group.elements:
            assert red.rep.matrix_of(el) == i3_map.matrix_of(el)

    def test_requires_idempotent(self, i3, i3_map):
        with pytest.raises(ValueError):
            reduce_rep(i3_map, i3.index(PartialBijection(3, [(1, 2)])))

    def test_choice_of_idempotent_invariance(self, i3, i3_map):
        # reductions at J-related idempotents are isomorphic group reps
        classes, _ = monoid_green(i3)
        for j in range(len(classes.jclasses)):
            idems = [i for i in classes.jclasses[j] if i3.table[i, i] == i]
            reds = [reduce_rep(i3_map, e) for e in idems]
            dims = {r.rep.dim if r.rep else 0 for r in reds}
            assert len(dims) == 1
            chars = {tuple(sorted(r.rep.character())) for r in reds if r.rep}
            assert len(chars) <= 1


class TestApex:
    def test_i3_mapping_rep_apex_j1(self, i3, i3_map):
        classes, _ = monoid_green(i3)
        apx, support = apex(i3_map)
        assert rank_of_class(i3, classes, apx) == 1
        assert sorted(rank_of_class(i3, classes, j) for j in support) == [1, 2, 3]

    def test_t3_hyperplane_apex_j2(self, t3, t3_map):
        classes, _ = monoid_green(t3)
        w = spin(t3_map, [(1, -1, 0)])
        apx, support = apex(restrict_rep(t3_map, w))
        assert rank_of_class(t3, classes, apx) == 2

    def test_trivial_rep_apex_is_bottom(self, i3):
        classes, _ = monoid_green(i3)
        apx, support = apex(trivial_rep(i3))
        assert rank_of_class(i3, classes, apx) == 0
        assert len(support) == len(classes.jclasses)

    def test_support_consistent_across_idempotents(self, i3, i3_map):
        # support_jclasses already insists all idempotents in a class agree
        support = support_jclasses(i3_map)
        assert len(support) == 3

    def test_sum_with_trivial_keeps_interval(self, i3, i3_map):
        # the trivial summand acts nonzero everywhere, so the union of
        # supports is still the full chain with minimum the zero class
        classes, _ = monoid_green(i3)
        two = direct_sum(i3_map, trivial_rep(i3))
        apx, support = apex(two)
        assert rank_of_class(i3, classes, apx) == 0

    def test_incomparable_apexes_rejected(self, renner3):
        # a sum of irreducibles at the incomparable (2,1) and (1,2) classes
        # has two minimal support classes, so no apex exists
        monoid, cat, report = renner3
        a = next(en for en in cat if en.apex_label == "(2,1)")
        b = next(en for en in cat if en.apex_label == "(1,2)")
        with pytest.raises(ApexError):
            apex(direct_sum(a.rep, b.rep))


class TestInduceExamples:
    def test_trivial_at_zero_gives_trivial(self, i3):
        classes, _ = monoid_green(i3)
        e = i3.index(PartialBijection.zero(3))
        g = maximal_subgroup(i3, classes, e)
        rep = induce(i3, e, trivial_rep(g))
        assert rep.dim == 1
        assert all(c == 1 for c in rep.character())

    def test_trivial_at_j1_gives_partial_reflection(self, i3, i3_map):
        classes, _ = monoid_green(i3)
        e = i3.index(PartialBijection.partial_identity(3, [1]))
        g = maximal_subgroup(i3, classes, e)
        rep = induce(i3, e, trivial_rep(g))
        assert rep.dim == 3
        assert char_equal(rep.character(), i3_map.character())

    def test_trivial_at_constants_raw_is_mapping_rep(self, t3, t3_map):
        classes, _ = monoid_green(t3)
        e = t3.index(Transformation([1, 1, 1]))
        g = maximal_subgroup(t3, classes, e)
        raw = induce_raw(t3, e, trivial_rep(g))
        assert raw.rep.dim == 3
        assert char_equal(raw.rep.character(), t3_map.character())

    def test_t3_annihilator_is_hyperplane(self, t3):
        classes, _ = monoid_green(t3)
        e = t3.index(Transformation([1, 1, 1]))
        g = maximal_subgroup(t3, classes, e)
        raw = induce_raw(t3, e, trivial_rep(g))
        ann = annihilator(raw)
        assert ann.dim == 2
        assert ann.contains((1, -1, 0)) and ann.contains((0, 1, -1))
        quotient = induce(t3, e, trivial_rep(g))
        assert quotient.dim == 1
        assert all(c == 1 for c in quotient.character())

    def test_in_annihilators_vanish(self, i3, i3_catalog):
        for entry in i3_catalog:
            raw = induce_raw(i3, entry.idempotent, entry.group_rep)
            assert annihilator(raw).dim == 0

    def test_specht_inductions_have_expected_dims(self, i3):
        classes, _ = monoid_green(i3)
        for m in (1, 2, 3):
            e = i3.index(PartialBijection.partial_identity(3, range(1, m + 1)))
            group = maximal_subgroup(i3, classes, e)
            for lam in partitions(m):
                sd = specht_rep(lam, tuple(range(1, m + 1)))
                sym = sd.rep.monoid
                mats = []
                for el in group.elements:
                    perm_images = [el.apply(x) for x in range(1, m + 1)]
                    from monoidrep.elements import Permutation
                    mats.append(sd.rep.matrices[sym.index(Permutation(perm_images))])
                grp_rep = Representation(group, mats)
                rep = induce(i3, e, grp_rep)
                assert rep.dim == comb(3, m) * sd.rep.dim

    def test_unit_irreps_extend_by_zero(self, i3):
        classes, _ = monoid_green(i3)
        e = i3.identity_index
        group = maximal_subgroup(i3, classes, e)
        units = set(group.elements)
        refl = specht_rep((2, 1))
        sym = refl.rep.monoid
        mats = []
        for el in group.elements:
            from monoidrep.elements import Permutation
            mats.append(refl.rep.matrices[sym.index(Permutation([el.apply(x) for x in (1, 2, 3)]))])
        rep = induce(i3, e, Representation(group, mats))
        assert rep.dim == 2
        for k, el in enumerate(i3.elements):
            if el in units:
                assert not rep.matrices[k].is_zero()
            else:
                assert rep.matrices[k].is_zero()

    def test_transversal_independence(self, i3):
        classes, _ = monoid_green(i3)
        e = i3.index(PartialBijection.partial_identity(3, [1, 2]))
        g = maximal_subgroup(i3, classes, e)
        base = transversal(i3, classes, e)
        raw1 = induce_raw(i3, e, trivial_rep(g))
        # perturb: pick the other member of each non-identity H-class
        new_reps = []
        for h, rep in zip(base.hclass_ids, base.reps):
            members = classes.hclasses[h]
            if rep == e:
                new_reps.append(e)
            else:
                new_reps.append(max(members))
        perturbed = Transversal(e, tuple(new_reps), base.hclass_ids)
        raw2 = induce_raw(i3, e, trivial_rep(g), trans=perturbed)
        assert raw2.transversal != raw1.transversal
        assert iso_test(raw1.rep, raw2.rep, certified_semisimple=True)[0] == "iso"


@pytest.fixture(scope="module")
def subsets3():
    lat, action = make_lattice("subsets", 3)
    monoid, ctx = sgl_monoid(action)
    return lat, action, monoid, ctx


class TestInduceSGL:
    def test_matches_generic_induce_elementwise(self, subsets3):
        lat, action, monoid, ctx = subsets3
        classes, _ = monoid_green(monoid)
        for aval in [(1,), (1, 2), (1, 2, 3)]:
            a = lat.index(aval)
            e = monoid.index(ctx.idempotent(a))
            g = maximal_subgroup(monoid, classes, e)
            fast = induce_sgl(monoid, ctx, a, trivial_rep(g))
            slow = induce(monoid, e, trivial_rep(g))
            assert fast.matrices == slow.matrices

    def test_partial_reflection_through_pairs(self, subsets3, i3_map):
        lat, action, monoid, ctx = subsets3
        classes, _ = monoid_green(monoid)
        a = lat.index((1,))
        e = monoid.index(ctx.idempotent(a))
        g = maximal_subgroup(monoid, classes, e)
        rep = induce_sgl(monoid, ctx, a, trivial_rep(g))
        assert sorted(rep.character()) == sorted(i3_map.character())

    def test_low_elements_act_as_zero(self, subsets3):
        lat, action, monoid, ctx = subsets3
        classes, _ = monoid_green(monoid)
        a = lat.index((1, 2))
        e = monoid.index(ctx.idempotent(a))
        g = maximal_subgroup(monoid, classes, e)
        rep = induce_sgl(monoid, ctx, a, trivial_rep(g))
        for k, el in enumerate(monoid.elements):
            if len(el.lattice_element()) < 2:
                assert rep.matrices[k].is_zero()

    def test_higher_partial_identities_fix_blocks(self, subsets3):
        lat, action, monoid, ctx = subsets3
        classes, _ = monoid_green(monoid)
        a = lat.index((1,))
        e = monoid.index(ctx.idempotent(a))
        g = maximal_subgroup(monoid, classes, e)
        rep = induce_sgl(monoid, ctx, a, trivial_rep(g))
        idc = monoid.index(ctx.idempotent(lat.index((1, 3))))
        mat = rep.matrices[idc]
        # fixes the {1}- and {3}-blocks, kills the {2}-block
        diag = [mat.rows[i][i] for i in range(3)]
        assert diag.count(F(1)) == 2 and not mat.is_zero()


class TestSemisimplePredicate:
    def test_in_char0(self, i3):
        assert semisimple_predicate(i3, 0).status == "semisimple"

    def test_s3_char3(self):
        report = semisimple_predicate(symmetric_group(3), 3)
        assert report.status == "not_semisimple"
        assert "6" in report.reason

    def test_s3_char5(self):
        assert semisimple_predicate(symmetric_group(3), 5).status == "semisimple"

    def test_in_char2(self, i3):
        assert semisimple_predicate(i3, 2).status == "not_semisimple"

    def test_t3_unknown(self, t3):
        report = semisimple_predicate(t3, 0)
        assert report.status == "unknown"
        assert "inverse" in report.reason

    def test_rejects_bad_characteristic(self, i3):
        with pytest.raises(ValueError):
            semisimple_predicate(i3, 1)


class TestNonSemisimplicityWitness:
    def test_t3_mapping_rep_cannot_decompose(self, t3, t3_map):
        # W is invariant, no line is, so W has no invariant complement:
        # a complement would be 1-dimensional and the eigenline search is
        # complete for lines
        w = spin(t3_map, [(1, -1, 0)])
        assert 0 < w.dim < t3_map.dim
        assert one_dim_invariant_lines(t3_map) == ()
        assert commutant_dim(t3_map) == 1  # the trap: scalar commutant anyway
        with pytest.raises(ValueError):
            decompose(t3_map)


class TestDecompose:
    def test_sn_mapping_splits_into_trivial_and_reflectional(self):
        for n in (2, 3, 4):
            v = mapping_rep_by_kind("Sn", n)
            factors = decompose(v)
            assert sorted(f.dim for f in factors) == [1, n - 1]
            triv = next(f for f in factors if f.dim == 1)
            assert all(c == 1 for c in triv.character())

    def test_tabloid_hook_module(self):
        for n in (3, 4):
            tm = tabloid_module((n - 1, 1), range(1, n + 1))
            factors = decompose(tm)
            chars = sorted(tuple(f.character()) for f in factors)
            expected = sorted([
                tuple(specht_rep((n,)).rep.character()),
                tuple(specht_rep((n - 1, 1)).rep.character()),
            ])
            assert chars == expected

    def test_double_of_irreducible(self):
        v = specht_rep((3, 1)).rep
        factors = decompose(direct_sum(v, v))
        assert len(factors) == 2
        assert all(char_equal(f.character(), v.character()) for f in factors)

    @pytest.mark.parametrize("n", [3, 4])
    def test_jordan_holder_seed_stability(self, n):
        tm = tabloid_module((n - 1, 1), range(1, n + 1))
        refl = specht_rep((n - 1, 1)).rep
        big = direct_sum(tm, refl)
        a = Counter(tuple(f.character()) for f in decompose(big))
        b = Counter(tuple(f.character()) for f in decompose(big, seed_order="reversed"))
        assert a == b

    def test_catalog_matching(self, i3, i3_map, i3_catalog):
        entries = decompose(i3_map, catalog=i3_catalog)
        assert len(entries) == 1
        assert entries[0].dim == 3


class TestEquation22Property:
    def test_sum_of_translates_is_invariant(self, i3, i3_map):
        # V + V has a diagonal G_e-subrepresentation inside e(V + V);
        # the sum of its transversal translates must be I_n-invariant
        classes, _ = monoid_green(i3)
        big = direct_sum(i3_map, i3_map)
        e = i3.index(PartialBijection.partial_identity(3, [1]))
        trans = transversal(i3, classes, e)
        phi_e = big.matrices[e]
        carrier = rref(phi_e).image
        assert carrier.dim == 2
        diag = [v for v in carrier.basis]
        seed = tuple(a + b for a, b in zip(diag[0], diag[1]))  # a diagonal vector
        vectors = []
        for s in trans.reps:
            m = big.matrices[s] * phi_e
            vectors.append(m.apply(seed))
        u = Subspace.from_vectors(big.dim, vectors)
        assert 0 < u.dim < big.dim
        for m in big.matrices:
            for v in u.basis:
                assert u.contains(m.apply(v))


class TestCatalogs:
    def test_i3_catalog(self, i3, i3_catalog):
        assert len(i3_catalog) == 7
        assert sorted(en.dim for en in i3_catalog) == [1, 1, 1, 2, 3, 3, 3]
        assert sum(en.dim ** 2 for en in i3_catalog) == 34

    def test_i3_labels(self, i3_catalog):
        got = {(en.apex_label, en.label) for en in i3_catalog}
        assert got == {
            ("J0", ()),
            ("J1", (1,)),
            ("J2", (2,)), ("J2", (1, 1)),
            ("J3", (3,)), ("J3", (2, 1)), ("J3", (1, 1, 1)),
        }

    def test_i4_catalog(self):
        i4 = symmetric_inverse_monoid(4)
        cat = cm_catalog(i4)
        assert len(cat) == 12
        assert sum(en.dim ** 2 for en in cat) == 209

    def test_i1_catalog(self):
        cat = cm_catalog(symmetric_inverse_monoid(1))
        assert sorted(en.dim for en in cat) == [1, 1]

    def test_roundtrips_i3(self, i3, i3_catalog):
        for en in i3_catalog:
            assert cm_roundtrip_check(i3, en)

    def test_roundtrips_i4(self):
        i4 = symmetric_inverse_monoid(4)
        for en in cm_catalog(i4):
            assert cm_roundtrip_check(i4, en)

    def test_subsets_pairs_catalog_matches_i3(self, i3_catalog):
        lat, action = make_lattice("subsets", 3)
        monoid, ctx = sgl_monoid(action)
        cat = cm_catalog(monoid)
        assert sorted(en.dim for en in cat) == sorted(en.dim for en in i3_catalog)
        assert sum(en.dim ** 2 for en in cat) == 34
        for en in cat:
            assert cm_roundtrip_check(monoid, en)

    def test_apex_of_each_entry_is_its_class(self, i3, i3_catalog):
        for en in i3_catalog:
            apx, support = apex(en.rep)
            assert apx == en.apex
            # support is the upward interval above the apex
            _, poset = monoid_green(i3)
            expected = {j for j in range(poset.count) if poset.leq[en.apex, j]}
            assert set(support) == expected

    def test_set_partitions3_catalog(self):
        # the definitional subgroups at the middle classes are trivial, so
        # each contributes one entry; completeness still holds at order 16
        lat, action = make_lattice("set_partitions", 3)
        monoid, ctx = sgl_monoid(action)
        cat = cm_catalog(monoid)
        assert sum(en.dim ** 2 for en in cat) == 16
        assert sorted(en.dim for en in cat) == [1, 1, 1, 2, 3]
        for en in cat:
            assert cm_roundtrip_check(monoid, en)

    def test_set_partitions4_unrecognized(self):
        lat, action = make_lattice("set_partitions", 4)
        monoid, ctx = sgl_monoid(action)
        with pytest.raises(CatalogError):
            cm_catalog(monoid)

    def test_tn_refused(self, t3):
        with pytest.raises(CatalogError):
            cm_catalog(t3)


class TestRenner:
    def test_n3_catalog(self, renner3):
        monoid, cat, report = renner3
        assert report.order == 79
        assert len(cat) == 9
        assert sorted(en.dim for en in cat) == [1, 1, 1, 2, 3, 3, 3, 3, 6]
        assert sum(en.dim ** 2 for en in cat) == 79
        assert report.poset_matches_compositions
        assert report.young_orders_match
        assert set(report.jclass_types) == {(), (1, 1, 1), (1, 2), (2, 1), (3,)}
        for en in cat:
            assert cm_roundtrip_check(monoid, en)

    def test_n4_structure_report(self):
        monoid, cat, report = renner_permutohedron_catalog(4)
        assert cat is None
        assert report.order == 1801
        assert len(report.jclass_types) == 9
        assert report.poset_matches_compositions
        assert report.young_orders_match

    def test_composition_order(self):
        assert composition_leq((1, 1, 1), (2, 1))
        assert composition_leq((1, 1, 1), (1, 2))
        assert not composition_leq((2, 1), (1, 2))
        assert composition_leq((2, 1), (3,))
        assert composition_leq((), (2, 1))
        assert not composition_leq((2, 1), ())
