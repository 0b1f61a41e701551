"""
KKT 构造测试
"""
import pytest

from core.entities.errors import ContractViolation
from core.entities.realization_model import CLASS_CAYLEY, CLASS_SPLIT
from core.services.exact_linalg import identity, mat_equal
from core.services.iso_catalog import simple_dim
from core.services.jordan_algebra import JordanFactory, entrywise_involution
from core.services.kkt import extend_involution_to_lie, kkt_lie, kkt_partner
from core.services.lie_core import bracket, fixed_space, is_involutive_automorphism, is_semisimple


@pytest.fixture(scope="module")
def jordans():
    return JordanFactory()


@pytest.mark.parametrize("family, params, dim, der, partner", [
    ("sym", (1,), 3, 0, "sl2"),
    ("sym", (2,), 10, 1, "sp(4)"),
    ("hermC", (2,), 15, 3, "su(2,2)"),
    ("mink", (3,), 10, 1, "sp(4)"),
    ("mink", (4,), 15, 3, "su(2,2)"),
    ("sym", (3,), 21, 3, "sp(6)"),
])
def test_dimensions_match_partner(jordans, family, params, dim, der, partner):
    V = jordans.build(family, params)
    K = kkt_lie(V)
    assert K.algebra.dim == dim
    assert K.derivation_dim == der
    t = kkt_partner(V)
    assert t.display() == partner
    assert simple_dim(t) == dim


def test_grading_and_triple(jordans):
    V = jordans.build("sym", (2,))
    K = kkt_lie(V)
    h, x, y = K.triple()
    assert bracket(K.algebra, h, x) == x.scale(2)
    assert bracket(K.algebra, h, y) == y.scale(-2)
    assert bracket(K.algebra, x, y) == h
    assert is_semisimple(K.algebra)


class TestExtension:

    def test_identity_extends_to_identity(self, jordans):
        V = jordans.build("sym", (2,))
        K = kkt_lie(V)
        phi = extend_involution_to_lie(K, identity(V.dim))
        assert mat_equal(phi.matrix, identity(K.algebra.dim))

    def test_entrywise_conjugation(self, jordans):
        V = jordans.build("hermC", (2,))
        K = kkt_lie(V)
        phi = extend_involution_to_lie(K, entrywise_involution(V), label="conj")
        assert is_involutive_automorphism(K.algebra, phi)
        assert 7 <= fixed_space(phi.matrix).dim < K.algebra.dim


class TestRealization:

    def test_sym(self, factory):
        r = factory.build("kkt:sym", (2,))
        assert r.algebra.dim == 10
        assert r.rank == 2
        assert r.tube
        assert [rec.name for rec in r.involutions] == ["cayley"]

    def test_herm_c_has_half_involution(self, factory):
        r = factory.build("kkt:hermC", (2,))
        found = [(rec.name, rec.tau_class) for rec in r.involutions]
        assert found == [("cayley", CLASS_CAYLEY), ("half", CLASS_SPLIT)]

    def test_reducible_minkowski(self, factory):
        with pytest.raises(ContractViolation):
            factory.build("kkt:mink", (2,))

    @pytest.mark.slow
    def test_e7(self, factory):
        r = factory.build("kkt:hermO3", ())
        assert r.algebra.dim == 133
        assert r.rank == 3
        assert r.iso.display() == "e7"
        assert r.extras["root_data"].multiplicities() == [1, 8]

    @pytest.mark.slow
    def test_e7_half_fixed_algebra(self, factory):
        r = factory.build("kkt:hermO3", ())
        half = r.involution("half")
        assert half.fixed_dim == 63
        assert half.fixed_algebra_label.display() == "su*(8)"
