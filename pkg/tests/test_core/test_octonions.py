"""
Cayley–Dickson 合成代数测试
"""
import pytest

from core.entities.errors import ContractViolation
from core.services.octonions import CompositionAlgebra, composition_algebra, octonions


@pytest.mark.parametrize("dim, commutative, associative", [
    (1, True, True),
    (2, True, True),
    (4, False, True),
    (8, False, False),
])
def test_properties(dim, commutative, associative):
    A = CompositionAlgebra(dim)
    assert A.is_commutative() is commutative
    assert A.is_associative() is associative
    A.check(samples=10, seed=3)


def test_invalid_dim():
    with pytest.raises(ContractViolation):
        CompositionAlgebra(3)


def test_imaginary_units_square_to_minus_one():
    O = octonions()
    for k in range(1, 8):
        e = O.unit(k)
        assert O.mul(e, e) == tuple(-v for v in O.unit(0))
        assert O.mul(e, O.conj(e)) == O.unit(0)


def test_norm_multiplicative():
    O = octonions()
    x = (1, 2, 0, -1, 3, 0, 1, -2)
    y = (0, 1, 1, 2, -1, 1, 0, 3)
    assert O.norm(O.mul(x, y)) == O.norm(x) * O.norm(y)


def test_octonion_associator_nonzero():
    O = octonions()
    assert any(O.associator(O.unit(1), O.unit(2), O.unit(4)))
    assert not any(O.associator(O.unit(1), O.unit(1), O.unit(2)))


def test_cached_instance():
    assert composition_algebra(4) is composition_algebra(4)
    assert composition_algebra(4).to_dict()["name"] == "H"
