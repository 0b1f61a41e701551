"""
矩阵实现与标准对合测试
"""
import pytest
from sympy.polys.domains import QQ

from core.entities.errors import ContractViolation, ParseError
from core.entities.realization_model import CLASS_CAYLEY, CLASS_NONSPLIT, CLASS_SPLIT
from core.entities.wedge_model import CaseSpec
from core.services.realizations import (
    flip_by_exponential, flips_wmin, half_spectrum_representative, is_integral_hyperbolic,
    standard_involutions, weyl_normalize,
)

HALF = QQ(1, 2)


class TestStructure:

    @pytest.mark.parametrize("family, params, dim, rank, tube", [
        ("su", (1, 1), 3, 1, True),
        ("su", (2, 1), 8, 1, False),
        ("su", (2, 2), 15, 2, True),
        ("sp", (2,), 10, 2, True),
        ("so2", (3,), 10, 2, True),
        ("so2", (4,), 15, 2, True),
        ("sostar", (3,), 15, 1, False),
        ("sl2", (2,), 6, 2, True),
    ])
    def test_dimensions(self, factory, family, params, dim, rank, tube):
        r = factory.build(family, params)
        assert r.algebra.dim == dim
        assert r.rank == rank
        assert r.tube is tube

    @pytest.mark.parametrize("family, params, mults", [
        ("su", (2, 1), [1, 2]),
        ("su", (2, 2), [1, 2]),
        ("sp", (2,), [1]),
        ("so2", (4,), [1, 2]),
    ])
    def test_multiplicities(self, factory, family, params, mults):
        r = factory.build(family, params)
        assert r.extras["root_data"].multiplicities() == mults

    def test_cached(self, factory):
        assert factory.build("su", (2, 2)) is factory.build("su", (2, 2))

    def test_to_dict(self, factory):
        data = factory.build("sp", (2,)).to_dict()
        assert data["algebra"] == "sp(4)"
        assert data["dim"] == 10
        assert [item["name"] for item in data["involutions"]] == ["cayley", "spc"]

    @pytest.mark.parametrize("family, params", [
        ("foo", (1,)), ("su", (1, 2)), ("so2", (2,)), ("sostar", (2,)), ("sp", ()),
    ])
    def test_invalid(self, factory, family, params):
        with pytest.raises(ContractViolation):
            factory.build(family, params)


class TestInvolutions:

    @pytest.mark.parametrize("family, params, expected", [
        ("su", (2, 2), [("cayley", CLASS_CAYLEY, 7), ("so", CLASS_SPLIT, 6), ("sp", CLASS_NONSPLIT, 10)]),
        ("su", (2, 1), [("so", CLASS_SPLIT, 3)]),
        ("sp", (2,), [("cayley", CLASS_CAYLEY, 4), ("spc", CLASS_NONSPLIT, 6)]),
        ("so2", (4,), [("cayley", CLASS_CAYLEY, 7), ("so1n", CLASS_NONSPLIT, 10),
                       ("so1a:2", CLASS_SPLIT, 6)]),
        ("sostar", (3,), [("soc", CLASS_SPLIT, 6)]),
    ])
    def test_catalog(self, factory, family, params, expected):
        r = factory.build(family, params)
        found = [(rec.name, rec.tau_class, rec.fixed_dim) for rec in r.involutions]
        assert found == expected
        assert all(rec.commutes_with_theta for rec in r.involutions)

    def test_alternate_name(self, factory):
        record = factory.build("so2", (4,)).involution("so1a:2")
        assert record.alternate == "so1a:2"

    def test_nonsplit_swaps_coroots(self, factory):
        record = factory.build("su", (2, 2)).involution("sp")
        assert record.coroot_perm == (1, 0)
        assert record.fixed_rank == 1

    def test_select_by_index(self, factory):
        r = factory.build("su", (2, 2))
        assert r.involution(1).name == "so"

    def test_catalog_is_cached(self, factory):
        r = factory.build("sp", (2,))
        assert standard_involutions(r) is r.involutions
        assert all(rec.phi.dim == r.algebra.dim for rec in standard_involutions(r))

    def test_missing(self, factory):
        r = factory.build("su", (2, 1))
        with pytest.raises(ContractViolation):
            r.involution("cayley")
        with pytest.raises(ContractViolation):
            r.involution(5)


class TestHyperbolic:

    def test_flip(self, factory):
        r = factory.build("su", (1, 1))
        assert flip_by_exponential(r, [HALF])
        assert flips_wmin(r, [HALF])
        assert not flip_by_exponential(r, [1])
        assert not flips_wmin(r, [1])

    def test_flip_requires_integral(self, factory):
        r = factory.build("su", (1, 1))
        with pytest.raises(ContractViolation):
            flip_by_exponential(r, [QQ(1, 4)])

    def test_non_tube_never_flips(self, factory):
        r = factory.build("su", (2, 1))
        assert not flips_wmin(r, [HALF])
        assert not is_integral_hyperbolic(r, [HALF])
        assert is_integral_hyperbolic(r, [1])

    def test_weyl_normalize(self):
        rep, perm = weyl_normalize([HALF, QQ(-3, 2), 0])
        assert rep == (QQ(3, 2), HALF, 0)
        assert perm == [(1, -1), (0, 1), (2, 1)]

    def test_half_spectrum_representative(self):
        assert half_spectrum_representative([QQ(3, 2), -HALF, QQ(5, 2)]) == (-HALF, -HALF, HALF)
        with pytest.raises(ContractViolation):
            half_spectrum_representative([1])


class TestCaseSpec:

    @pytest.mark.parametrize("text, family, params", [
        ("su:2,2", "su", (2, 2)),
        ("sp:3", "sp", (3,)),
        ("kkt:hermO3", "kkt:hermO3", ()),
        ("kkt:sym:2", "kkt:sym", (2,)),
    ])
    def test_parse_algebra(self, text, family, params):
        assert CaseSpec.parse_algebra(text) == (family, params)

    def test_bad_param_position(self):
        with pytest.raises(ParseError) as info:
            CaseSpec.parse_algebra("su:2,x")
        assert info.value.position == 5

    @pytest.mark.parametrize("text", ["", "su:1:2", "s-u:2"])
    def test_bad_algebra(self, text):
        with pytest.raises(ParseError):
            CaseSpec.parse_algebra(text)

    def test_tau_and_h(self):
        spec = CaseSpec.parse("sp:2", "slc", "1/2,-3/2")
        assert spec.tau == "spc"
        assert spec.h == (HALF, QQ(-3, 2))
        assert CaseSpec.parse("sp:2", "1").tau == 1
        assert CaseSpec.parse("sp:2", None, "enumerate").enumerate_all

    @pytest.mark.parametrize("h, position", [("1/2,a", 4), ("1/0", 0), ("0.5", 0)])
    def test_bad_h(self, h, position):
        with pytest.raises(ParseError) as info:
            CaseSpec.parse("sp:2", "cayley", h)
        assert info.value.position == position
