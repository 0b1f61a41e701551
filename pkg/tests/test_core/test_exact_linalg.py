"""
精确线性代数与子空间测试
"""
import pytest
from sympy.polys.domains import QQ

from core.entities.errors import ContractViolation, SpectrumError
from core.entities.scalar import HALF, format_qq, is_half_odd, to_qq
from core.entities.subspace import Subspace
from core.services.exact_linalg import (
    eigen_decomposition, intersect, is_pd_symmetric, is_psd_symmetric, kernel, matrix,
    eigenspace, rational_eigenvalues, restrict, rref, simultaneous_eigenspaces, solve,
)


class TestScalar:

    def test_parse_and_format(self):
        assert to_qq("1/2") == HALF
        assert to_qq("-3/6") == -HALF
        assert format_qq(QQ(3, 4)) == "3/4"
        assert format_qq(QQ(4, 2)) == "2"

    @pytest.mark.parametrize("text", ["1/0", "abc", "1.5"])
    def test_parse_rejects(self, text):
        with pytest.raises(ContractViolation):
            to_qq(text)

    def test_bool_rejected(self):
        with pytest.raises(ContractViolation):
            to_qq(True)

    def test_half_odd(self):
        assert is_half_odd("3/2")
        assert is_half_odd("-1/2")
        assert not is_half_odd(1)
        assert not is_half_odd("1/3")


class TestSubspace:

    def test_span_is_canonical(self):
        a = Subspace.span(3, [(1, 1, 0), (2, 2, 0)])
        b = Subspace.span(3, [(3, 3, 0)])
        assert a.dim == 1
        assert a == b
        assert a.rows == ((1, 1, 0),)

    def test_membership_and_coordinates(self):
        plane = Subspace.span(3, [(1, 0, 1), (0, 1, 1)])
        assert plane.contains((2, 3, 5))
        assert not plane.contains((0, 0, 1))
        assert plane.coordinates((2, 3, 5)) == (2, 3)

    def test_join_and_intersect(self):
        xy = Subspace.span(3, [(1, 0, 0), (0, 1, 0)])
        yz = Subspace.span(3, [(0, 1, 0), (0, 0, 1)])
        assert xy.join(yz).is_full()
        assert intersect(xy, yz) == Subspace.span(3, [(0, 1, 0)])

    def test_rejects_non_rref(self):
        with pytest.raises(ContractViolation):
            Subspace(2, ((2, 0),))

    def test_length_mismatch(self):
        with pytest.raises(ContractViolation):
            Subspace.span(3, [(1, 0)])

    def test_dict_round_trip(self):
        s = Subspace.span(3, [(1, "1/2", 0)])
        assert Subspace.from_dict(s.to_dict()) == s


class TestMatrices:

    def test_kernel(self):
        k = kernel(matrix([[1, 1, 0], [0, 0, 1]]))
        assert k.dim == 1
        assert k.contains((1, -1, 0))

    def test_solve(self):
        assert solve(matrix([[2, 0], [0, 4]]), [1, 1]) == (HALF, QQ(1, 4))
        assert solve(matrix([[1, 1], [1, 1]]), [1, 2]) is None

    def test_rational_eigenvalues(self):
        assert rational_eigenvalues(matrix([[0, 1], [1, 0]])) == [-1, 1]

    def test_eigen_decomposition(self):
        parts = eigen_decomposition(matrix([[2, 0, 0], [0, 3, 0], [0, 0, 3]]))
        assert sorted(parts) == [2, 3]
        assert parts[QQ(3)].dim == 2

    def test_irrational_spectrum(self):
        with pytest.raises(SpectrumError):
            rational_eigenvalues(matrix([[0, -1], [1, 0]]))

    def test_not_diagonalizable(self):
        with pytest.raises(SpectrumError):
            rational_eigenvalues(matrix([[1, 1], [0, 1]]))

    def test_missing_candidates_report_residual(self):
        with pytest.raises(SpectrumError) as info:
            eigen_decomposition(matrix([[1, 0], [0, 2]]), candidates=[1])
        assert info.value.residual_dim == 1

    def test_restrict_to_invariant_subspace(self):
        m = matrix([[2, 0, 0], [0, 3, 0], [0, 0, 5]])
        sub = Subspace.span(3, [(0, 1, 0), (0, 0, 1)])
        r = restrict(m, sub)
        assert r.to_Matrix().tolist() == [[3, 0], [0, 5]]

    def test_restrict_rejects_non_invariant(self):
        m = matrix([[0, 1], [1, 0]])
        with pytest.raises(ContractViolation):
            restrict(m, Subspace.span(2, [(1, 0)]))


class TestPositivity:

    def test_psd(self):
        assert is_psd_symmetric(matrix([[1, 1], [1, 1]]))
        assert not is_pd_symmetric(matrix([[1, 1], [1, 1]]))
        assert is_pd_symmetric(matrix([[2, 1], [1, 2]]))
        assert not is_psd_symmetric(matrix([[1, 2], [2, 1]]))

    def test_zero_pivot_with_coupling(self):
        assert not is_psd_symmetric(matrix([[0, 1], [1, 0]]))

    def test_non_symmetric_rejected(self):
        with pytest.raises(ContractViolation):
            is_psd_symmetric(matrix([[1, 2], [0, 1]]))


class TestEchelonAndEigen:

    def test_rref_keeps_shape(self):
        reduced = rref(matrix([[2, 4], [1, 2], [0, 1]]))
        assert reduced.shape == (3, 2)
        assert reduced.to_list() == [[1, 0], [0, 1], [0, 0]]

    def test_eigenspace(self):
        space = eigenspace(matrix([[2, 1], [0, 3]]), 3)
        assert space.dim == 1
        assert space.contains((1, 1))

    def test_eigenspace_requires_square(self):
        with pytest.raises(ContractViolation):
            eigenspace(matrix([[1, 0, 0], [0, 1, 0]]), 1)

    def test_simultaneous(self):
        a = matrix([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
        b = matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
        blocks = simultaneous_eigenspaces([a, b])
        dims = {tuple(int(v) for v in key): space.dim for key, space in blocks.items()}
        assert dims == {(1, 1): 1, (1, -1): 1, (-1, -1): 1}
        assert blocks[(QQ(1), QQ(-1))].contains((0, 1, 0))

    def test_simultaneous_rejects_non_commuting(self):
        with pytest.raises(ContractViolation):
            simultaneous_eigenspaces([matrix([[0, 1], [0, 0]]), matrix([[0, 0], [1, 0]])])

    def test_simultaneous_empty_family(self):
        assert simultaneous_eigenspaces([], dim=3) == {(): Subspace.full(3)}
        line = Subspace.span(3, [(1, 1, 0)])
        assert simultaneous_eigenspaces([], ambient=line) == {(): line}
        with pytest.raises(ContractViolation):
            simultaneous_eigenspaces([])
