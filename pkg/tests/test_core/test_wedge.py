"""
楔形分类测试
"""
import pytest
from sympy.polys.domains import QQ

from core.entities.errors import ContractViolation, ValidationError
from core.entities.iso_type import IsoType
from core.entities.lie_algebra import LieElement
from core.entities.subspace import Subspace
from core.entities.wedge_model import WedgeInput
from core.services.jordan_algebra import JordanFactory, standard_frame
from core.services.lie_core import is_abelian, is_subalgebra
from core.services.realizations import frame_sum_element
from core.services.wedge_classifier import (
    canonical_pattern, compute_wedge, cone_section_span, enumerate_table, enumeration_patterns,
    identify_iso_type, nontube_restriction_check, reduced_coords, tube_subalgebra,
)

HALF = QQ(1, 2)


def key(text):
    return IsoType.parse(text).key()


@pytest.fixture(scope="module")
def su22(factory):
    return factory.build("su", (2, 2))


class TestReduction:

    def test_reduced_coords(self):
        assert reduced_coords([QQ(3, 2), -HALF, 1, 0]) == (0, -HALF, 0, 0)

    def test_reduction_preserves_wedge(self, classifier, su22):
        a = classifier.classify(classifier.input_for(su22, "cayley", [QQ(3, 2), HALF]))
        b = classifier.classify(classifier.input_for(su22, "cayley", [0, HALF]))
        assert a.g_tau_h == b.g_tau_h
        assert a.h0 == (0, HALF)
        assert a.trace[0]["step"] == "reduce_h"

    def test_coordinate_count(self, su22):
        with pytest.raises(ContractViolation):
            WedgeInput(su22, su22.involution("cayley"), (HALF,))


class TestClassify:

    def test_full_algebra(self, classifier, su22):
        res = classifier.classify(classifier.input_for(su22, "cayley", [HALF, HALF]))
        assert res.g_tau_h.is_full()
        assert res.iso.key() == key("su(2,2)")
        assert res.c_plus.dim == 4
        assert res.c_minus.dim == 4

    def test_structure(self, classifier, su22):
        res = classifier.classify(classifier.input_for(su22, "cayley", [HALF, 0]))
        g = su22.algebra
        assert res.iso.key() == key("sl2")
        assert is_abelian(g, res.c_plus)
        assert is_abelian(g, res.c_minus)
        assert is_subalgebra(g, res.g_tau_h)

    def test_mixed_signs(self, classifier, su22):
        res = classifier.classify(classifier.input_for(su22, "cayley", [HALF, -HALF]))
        assert res.iso.key() == key("sl2+sl2")

    def test_symmetric_in_sign(self, classifier, su22):
        a = classifier.classify(classifier.input_for(su22, "so", [HALF, 0]))
        b = classifier.classify(classifier.input_for(su22, "so", [-HALF, 0]))
        assert a.g_tau_h == b.g_tau_h

    def test_zero(self, classifier, factory):
        r = factory.build("su", (1, 1))
        res = classifier.classify(classifier.input_for(r, "cayley", [0]))
        assert res.is_zero
        assert res.iso.is_zero
        assert res.to_dict()["iso_display"] == "0"

    def test_to_dict(self, classifier, su22):
        data = classifier.classify(classifier.input_for(su22, "cayley", [HALF, HALF])).to_dict()
        assert data["schema_version"] == 1
        assert data["h"] == ["1/2", "1/2"]
        assert data["g_tau_h_dim"] == 15
        assert data["g_tau_h_dim"] == data["c_plus_dim"] + data["c_minus_dim"] + data["bracket_dim"]


class TestEnumerate:

    def test_patterns(self, su22):
        tau = su22.involution("cayley")
        assert canonical_pattern(tau, (-HALF, HALF)) == (HALF, -HALF)
        assert enumeration_patterns(tau) == [(HALF, HALF), (HALF, 0), (HALF, -HALF), (0, 0)]

    def test_sp4_cayley(self, classifier, factory):
        results = classifier.enumerate(factory.build("sp", (2,)), "cayley")
        found = {res.iso.key() for res in results if not res.is_zero}
        assert found == {key("sp(4)"), key("sl2"), key("sl2+sl2")}

    def test_partial_sums(self, classifier, factory):
        results = classifier.partial_sums(factory.build("so2", (3,)))
        assert [res.iso.key() for res in results] == [key("so(2,3)"), key("so(2,1)")]

    def test_tube_part(self, classifier, factory):
        assert classifier.tube_part(factory.build("su", (2, 1))).key() == key("sl2")


class TestPipelineParts:

    def test_tube_subalgebra_of_non_tube(self, factory):
        r = factory.build("su", (2, 1))
        gt = tube_subalgebra(r.algebra, frame_sum_element(r))
        assert gt.dim == 3
        assert is_subalgebra(r.algebra, gt)

    def test_tube_subalgebra_of_tube_is_full(self, factory):
        r = factory.build("sp", (2,))
        assert tube_subalgebra(r.algebra, frame_sum_element(r)).is_full()

    def test_tube_subalgebra_needs_grading(self, factory):
        r = factory.build("sp", (2,))
        with pytest.raises(ContractViolation):
            tube_subalgebra(r.algebra, LieElement.zero(r.algebra.dim))

    def test_cone_section(self):
        V = JordanFactory().build("sym", (2,))
        assert cone_section_span(V, Subspace.full(3)).is_full()
        assert cone_section_span(V, Subspace.span(3, [V.unit])).dim == 1

    def test_cone_section_rejects_non_subalgebra(self):
        V = JordanFactory().build("sym", (2,))
        c1, c2 = standard_frame(V).idempotents
        with pytest.raises(ValidationError):
            cone_section_span(V, Subspace.span(3, [tuple(a - b for a, b in zip(c1, c2))]))

    def test_identify_full_algebra(self, factory):
        r = factory.build("sp", (2,))
        g = r.algebra
        a_span = Subspace.span(g.dim, [a.coords for a in r.a_basis])
        assert identify_iso_type(g, Subspace.full(g.dim), a_span).key() == key("sp(4)")
        assert identify_iso_type(g, Subspace.zero(g.dim), a_span).is_zero

    def test_compute_wedge_matches_classifier(self, classifier, su22):
        inp = classifier.input_for(su22, "cayley", [HALF, 0])
        assert compute_wedge(inp).g_tau_h == classifier.classify(inp).g_tau_h

    def test_threads_do_not_change_results(self, factory):
        r = factory.build("sp", (2,))
        tau = r.involution("cayley")
        serial = [res.iso.key() for res in enumerate_table(r, tau, threads=1)]
        parallel = [res.iso.key() for res in enumerate_table(r, tau, threads=2)]
        assert serial == parallel

    def test_restriction_to_tube_part(self, factory):
        r = factory.build("su", (2, 1))
        gt, fixed = nontube_restriction_check(r, r.involution("so"))
        assert gt.key() == key("sl2")
        assert fixed.key() == key("so(1,1)")
