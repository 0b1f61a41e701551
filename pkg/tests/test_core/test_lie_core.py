"""
李代数核心运算测试
"""
import pytest
from sympy.polys.domains import QQ

from core.entities.errors import ContractViolation, ValidationError
from core.entities.lie_algebra import LieElement, LinearAutomorphism
from core.entities.subspace import Subspace
from core.services.exact_linalg import matrix
from core.services.lie_core import (
    ad_matrix, apply_map, bracket, centralizer, centroid, exp_i_pi_ad, grading_of,
    ideal_decomposition, is_abelian, is_involutive_automorphism, is_semisimple, is_subalgebra,
    killing_form, killing_matrix, make_algebra, restricted_root_data, subalgebra_generated,
)

# sl(2,R)：基 h, e, f
SL2 = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}


def sl2():
    return make_algebra(3, SL2, label="sl2")


def sl2_pair():
    structure = dict(SL2)
    for (i, j), out in SL2.items():
        structure[(i + 3, j + 3)] = {k + 3: v for k, v in out.items()}
    return make_algebra(6, structure, label="sl2+sl2")


def sl2_pair_mixed():
    """sl2 ⊕ sl2 取基 u_i = e_i + f_i, v_i = e_i − f_i，每个基向量都跨两个理想"""
    structure = {}
    for (i, j), out in SL2.items():
        structure[(i, j)] = dict(out)
        structure[(i + 3, j + 3)] = dict(out)
        structure[(i, j + 3)] = {k + 3: v for k, v in out.items()}
        structure[(j, i + 3)] = {k + 3: -v for k, v in out.items()}
    return make_algebra(6, structure, label="sl2+sl2 mixed")


def sl2_complex():
    """sl(2,C) 作为 6 维实代数：基 x_i 与 i·x_i"""
    structure = {}
    for (i, j), out in SL2.items():
        structure[(i, j)] = dict(out)
        structure[(i + 3, j + 3)] = {k: -v for k, v in out.items()}
        structure[(i, j + 3)] = {k + 3: v for k, v in out.items()}
        structure[(j, i + 3)] = {k + 3: -v for k, v in out.items()}
    return make_algebra(6, structure, label="sl2(C)")


def unit(dim, i):
    return LieElement.unit(dim, i)


class TestConstruction:

    def test_bracket(self):
        g = sl2()
        assert bracket(g, unit(3, 1), unit(3, 2)) == unit(3, 0)
        assert bracket(g, unit(3, 2), unit(3, 1)) == -unit(3, 0)

    def test_jacobi_failure(self):
        with pytest.raises(ValidationError):
            make_algebra(3, {(0, 1): {0: 1}, (0, 2): {0: 1}, (1, 2): {1: 1}})

    def test_structure_must_be_upper(self):
        with pytest.raises(ContractViolation):
            make_algebra(2, {(1, 0): {0: 1}})


class TestKilling:

    def test_killing_sl2(self):
        k = killing_matrix(sl2())
        assert k.to_Matrix().tolist() == [[8, 0, 0], [0, 0, 4], [0, 4, 0]]

    def test_semisimple(self):
        assert is_semisimple(sl2())
        heisenberg = make_algebra(3, {(0, 1): {2: 1}})
        assert not is_semisimple(heisenberg)


class TestGradings:

    def test_grading_of_h(self):
        g = sl2()
        grading = grading_of(g, unit(3, 0))
        assert grading.spectrum == [-2, 0, 2]
        assert grading.part(2) == Subspace.span(3, [(0, 1, 0)])
        assert grading.part(1).is_zero()

    def test_exp_i_pi_ad(self):
        g = sl2()
        phi = exp_i_pi_ad(g, unit(3, 0).scale(QQ(1, 2)))
        assert apply_map(phi, unit(3, 0)) == unit(3, 0)
        assert apply_map(phi, unit(3, 1)) == -unit(3, 1)
        assert apply_map(phi, unit(3, 2)) == -unit(3, 2)

    def test_exp_requires_integer_spectrum(self):
        g = sl2()
        with pytest.raises(ContractViolation):
            exp_i_pi_ad(g, unit(3, 0).scale(QQ(1, 4)))


class TestSubspaces:

    def test_abelian_and_subalgebra(self):
        g = sl2()
        borel = Subspace.span(3, [(1, 0, 0), (0, 1, 0)])
        assert is_subalgebra(g, borel)
        assert not is_abelian(g, borel)
        assert is_abelian(g, Subspace.span(3, [(0, 1, 0)]))
        assert not is_subalgebra(g, Subspace.span(3, [(0, 1, 0), (0, 0, 1)]))

    def test_centralizer(self):
        g = sl2()
        cartan = Subspace.span(3, [(1, 0, 0)])
        assert centralizer(g, cartan) == cartan

    def test_root_data(self):
        data = restricted_root_data(sl2(), [unit(3, 0)])
        assert data.centralizer_dim == 1
        assert sorted(data.roots.values()) == [1, 1]
        assert sorted(k[0] for k in data.roots) == [-2, 2]

    def test_root_data_requires_commuting(self):
        with pytest.raises(ContractViolation):
            restricted_root_data(sl2(), [unit(3, 0), unit(3, 1)])


class TestIdeals:

    def test_simple(self):
        assert ideal_decomposition(sl2()) == [Subspace.full(3)]

    def test_direct_sum(self):
        ideals = ideal_decomposition(sl2_pair())
        assert [s.dim for s in ideals] == [3, 3]
        first = Subspace.span(6, [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)])
        assert first in ideals

    def test_direct_sum_in_mixed_basis(self):
        ideals = ideal_decomposition(sl2_pair_mixed())
        assert [s.dim for s in ideals] == [3, 3]
        first = Subspace.span(6, [(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)])
        second = Subspace.span(6, [(1, 0, 0, -1, 0, 0), (0, 1, 0, 0, -1, 0), (0, 0, 1, 0, 0, -1)])
        assert first in ideals and second in ideals

    def test_complex_simple_stays_whole(self):
        assert ideal_decomposition(sl2_complex()) == [Subspace.full(6)]

    @pytest.mark.parametrize("build, expected", [
        (sl2, 1), (sl2_pair, 2), (sl2_pair_mixed, 2), (sl2_complex, 2),
    ])
    def test_centroid_dim(self, build, expected):
        g = build()
        basis = centroid(g)
        assert len(basis) == expected
        x = LieElement.unit(g.dim, 1) + LieElement.unit(g.dim, 5 % g.dim)
        for t in basis:
            assert t * ad_matrix(g, x) == ad_matrix(g, x) * t

    def test_not_semisimple(self):
        heisenberg = make_algebra(3, {(0, 1): {2: 1}})
        with pytest.raises(ContractViolation):
            ideal_decomposition(heisenberg)


class TestForms:

    def test_killing_form(self):
        g = sl2()
        assert killing_form(g, unit(3, 0), unit(3, 0)) == 8
        assert killing_form(g, unit(3, 1), unit(3, 2)) == 4
        assert killing_form(g, unit(3, 1), unit(3, 1)) == 0

    @pytest.mark.parametrize("rows, dim", [
        ([(0, 1, 0), (0, 0, 1)], 3),
        ([(1, 0, 0), (0, 1, 0)], 2),
        ([(1, 0, 0)], 1),
    ])
    def test_generated_subalgebra(self, rows, dim):
        g = sl2()
        generated = subalgebra_generated(g, Subspace.span(3, rows))
        assert generated.dim == dim
        assert is_subalgebra(g, generated)


class TestAutomorphisms:

    def test_chevalley_involution(self):
        phi = LinearAutomorphism(matrix([[-1, 0, 0], [0, 0, -1], [0, -1, 0]]), "chevalley")
        assert is_involutive_automorphism(sl2(), phi)

    def test_not_involutive(self):
        phi = LinearAutomorphism(matrix([[1, 0, 0], [0, 2, 0], [0, 0, QQ(1, 2)]]), "scale")
        assert not is_involutive_automorphism(sl2(), phi)

    def test_not_automorphism(self):
        phi = LinearAutomorphism(matrix([[1, 0, 0], [0, -1, 0], [0, 0, 1]]), "flip")
        assert not is_involutive_automorphism(sl2(), phi)

    def test_dimension_mismatch(self):
        phi = LinearAutomorphism(matrix([[1, 0], [0, 1]]), "small")
        assert not is_involutive_automorphism(sl2(), phi)
