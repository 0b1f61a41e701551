"""
Jordan 代数测试：公理、Peirce 分解、锥判定、秩与类型、对合分类
"""
import pytest
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation, ValidationError
from core.entities.jordan_model import NONSPLIT, PEIRCE_REFLECTION, SPLIT_SIMPLE
from core.services.exact_linalg import identity, mat_equal
from core.services.jordan_algebra import (
    JordanFactory, apply_linear, build_direct, check_jordan_axioms, classify_involution,
    entrywise_involution, frame_from_grid, identify_jordan_type, in_cone_closure, jordan_rank,
    left_mult, make_jordan, peirce, peirce_components, peirce_frame, product, realization_jordan,
    square, standard_frame, subalgebra_Vj,
)


def diag(values):
    return DomainMatrix({k: {k: QQ(v)} for k, v in enumerate(values)}, (len(values), len(values)), QQ)


@pytest.fixture(scope="module")
def jordans():
    return JordanFactory()


class TestConstruction:

    @pytest.mark.parametrize("family, params, dim, rank", [
        ("sym", (2,), 3, 2),
        ("sym", (3,), 6, 3),
        ("hermC", (2,), 4, 2),
        ("hermH", (2,), 6, 2),
        ("hermC", (3,), 9, 3),
        ("mink", (5,), 5, 2),
    ])
    def test_dimensions(self, jordans, family, params, dim, rank):
        V = jordans.build(family, params)
        assert V.dim == dim
        assert jordan_rank(V) == rank
        check_jordan_axioms(V)

    @pytest.mark.slow
    def test_albert_algebra(self, jordans):
        V = jordans.build("hermO3")
        assert V.dim == 27
        check_jordan_axioms(V, samples=4)
        assert identify_jordan_type(V).display() == "Herm(3,O)"

    def test_octonion_order_limit(self, jordans):
        with pytest.raises(ContractViolation):
            jordans.build("hermO3", (4,))

    @pytest.mark.parametrize("family, params", [("foo", (2,)), ("sym", ()), ("mink", (0,))])
    def test_invalid(self, jordans, family, params):
        with pytest.raises(ContractViolation):
            jordans.build(family, params)

    def test_bad_unit(self):
        with pytest.raises(ValidationError):
            make_jordan(1, {(0, 0): {0: 1}}, (2,), diag([1]))

    def test_indefinite_inner_product(self):
        with pytest.raises(ValidationError):
            make_jordan(1, {(0, 0): {0: 1}}, (1,), diag([-1]))


class TestPeirce:

    def test_single_idempotent(self, jordans):
        V = jordans.build("sym", (2,))
        v0, v_half, v1 = peirce(V, (1, 0, 0))
        assert (v0.dim, v_half.dim, v1.dim) == (1, 1, 1)

    def test_not_idempotent(self, jordans):
        V = jordans.build("sym", (2,))
        with pytest.raises(ContractViolation):
            peirce(V, (2, 0, 0))

    @pytest.mark.parametrize("family, params, off", [
        ("sym", (3,), [1, 1, 1]),
        ("hermC", (3,), [2, 2, 2]),
        ("hermH", (2,), [4]),
        ("mink", (5,), [3]),
    ])
    def test_frame_blocks(self, jordans, family, params, off):
        V = jordans.build(family, params)
        decomposition = peirce_frame(V, standard_frame(V))
        assert decomposition.off_dims() == off
        assert all(s.dim == 1 for s in decomposition.diagonal)

    def test_components_sum_to_element(self, jordans):
        V = jordans.build("sym", (3,))
        decomposition = peirce_frame(V, standard_frame(V))
        x = (1, 2, 3, 4, 5, 6)
        parts = peirce_components(decomposition, x)
        total = [sum(p[k] for p in parts.values()) for k in range(V.dim)]
        assert total == list(x)
        assert parts[(0,)] == (1, 0, 0, 0, 0, 0)


class TestCone:

    def test_membership(self, jordans):
        V = jordans.build("sym", (2,))
        assert in_cone_closure(V, V.unit)
        assert in_cone_closure(V, (1, 0, 0))
        assert in_cone_closure(V, (1, 1, 1))
        assert not in_cone_closure(V, (1, -1, 0))
        assert not in_cone_closure(V, (0, 0, 1))

    def test_squares_are_in_cone(self, jordans):
        V = jordans.build("hermC", (2,))
        x = (1, -2, 3, -1)
        assert in_cone_closure(V, square(V, x))

    def test_minkowski_cone(self, jordans):
        V = jordans.build("mink", (3,))
        assert in_cone_closure(V, (2, 1, 1))
        assert in_cone_closure(V, (1, 1, 0))
        assert not in_cone_closure(V, (1, 1, 1))
        assert not in_cone_closure(V, (1, 2, 0))


class TestTypes:

    @pytest.mark.parametrize("family, params, label", [
        ("sym", (3,), "Sym(3,R)"),
        ("hermC", (3,), "Herm(3,C)"),
        ("mink", (5,), "M^5"),
        ("sym", (1,), "R"),
    ])
    def test_identify(self, jordans, family, params, label):
        assert identify_jordan_type(jordans.build(family, params)).display() == label


class TestInvolutions:

    def test_peirce_reflection(self, jordans):
        V = jordans.build("sym", (2,))
        info = classify_involution(V, diag([1, 1, -1]), frame=standard_frame(V))
        assert info.classification == PEIRCE_REFLECTION
        assert info.fixed_rank == 2

    def test_split_simple(self, jordans):
        V = jordans.build("hermC", (2,))
        info = classify_involution(V, entrywise_involution(V), frame=standard_frame(V))
        assert info.classification == SPLIT_SIMPLE
        assert info.fixed_label() == "M^3"

    def test_nonsplit(self, jordans):
        V = jordans.build("mink", (4,))
        info = classify_involution(V, diag([1, -1, -1, -1]))
        assert info.classification == NONSPLIT
        assert info.fixed_rank == 1

    def test_not_automorphism(self, jordans):
        V = jordans.build("sym", (2,))
        with pytest.raises(ContractViolation):
            classify_involution(V, diag([1, -1, 1]))

    def test_entrywise_requires_complex_entries(self, jordans):
        with pytest.raises(ContractViolation):
            entrywise_involution(jordans.build("sym", (2,)))


class TestOperators:

    def test_build_direct(self):
        assert build_direct("sym", (2,)).dim == 3

    def test_unit_acts_as_identity(self, jordans):
        V = jordans.build("hermC", (2,))
        assert mat_equal(left_mult(V, V.unit), identity(V.dim))

    def test_left_mult_matches_product(self, jordans):
        V = jordans.build("sym", (3,))
        x, y = (1, 2, 0, -1, 3, 1), (0, 1, -1, 2, 0, 1)
        assert apply_linear(left_mult(V, x), y) == product(V, x, y)


class TestFromGrading:

    @pytest.mark.parametrize("case, dim", [(("sp", (2,)), 3), (("su", (2, 2)), 4), (("so2", (4,)), 4)])
    def test_tube_realizations(self, factory, case, dim):
        r = factory.build(*case)
        V = realization_jordan(r)
        assert V.dim == dim
        assert jordan_rank(V) == 2
        frame = frame_from_grid(r, V)
        assert frame.rank == 2
        assert peirce_frame(V, frame).off_dims() == [dim - 2]

    def test_non_tube_is_not_three_graded(self, factory):
        with pytest.raises(ContractViolation):
            realization_jordan(factory.build("su", (2, 1)))

    def test_no_standard_frame(self, factory):
        V = realization_jordan(factory.build("sp", (2,)))
        with pytest.raises(ContractViolation):
            standard_frame(V)


class TestSubalgebraVj:

    @pytest.mark.parametrize("j, dim", [(1, 1), (2, 3), (3, 6)])
    def test_sym3(self, jordans, j, dim):
        V = jordans.build("sym", (3,))
        W = subalgebra_Vj(V, standard_frame(V), j)
        assert W.dim == dim
        assert jordan_rank(W) == j

    def test_hermitian_block(self, jordans):
        V = jordans.build("hermC", (3,))
        assert subalgebra_Vj(V, standard_frame(V), 2).dim == 4

    def test_out_of_range(self, jordans):
        V = jordans.build("sym", (2,))
        with pytest.raises(ContractViolation):
            subalgebra_Vj(V, standard_frame(V), 0)
