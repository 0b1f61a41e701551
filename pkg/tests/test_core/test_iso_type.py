"""
同构类型标签与签名目录测试
"""
import pytest

from core.entities.errors import ContractViolation, ParseError
from core.entities.iso_type import IsoType, SimpleType, named_type
from core.services.iso_catalog import (
    IsoCatalog, signature_of, simple_dim, su_signature, tube_signature,
)


def key(text):
    return IsoType.parse(text).key()


class TestParse:

    @pytest.mark.parametrize("text", ["sl2", "sp(4)", "su(3,1)", "so*(10)", "su*(8)", "so(2,5)", "e7", "sl2+sl2"])
    def test_display_round_trip(self, text):
        assert IsoType.parse(text).display() == text

    def test_zero(self):
        iso = IsoType.parse("0")
        assert iso.is_zero
        assert iso.display() == "0"

    def test_su_orders_parameters(self):
        assert IsoType.parse("su(1,3)").display() == "su(3,1)"

    def test_position_of_bad_summand(self):
        with pytest.raises(ParseError) as info:
            IsoType.parse("sl2+foo(3)")
        assert info.value.position == 4

    @pytest.mark.parametrize("text", ["sp(3)", "so*(7)", "su*(5)", "sl2(1)", "su(a,b)", "so(3,5)"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            IsoType.parse(text)


class TestIsomorphisms:

    @pytest.mark.parametrize("a, b", [
        ("sl2", "sp(2)"),
        ("sl2", "su(1,1)"),
        ("sl2", "so(2,1)"),
        ("sp(4)", "so(2,3)"),
        ("su(2,2)", "so(2,4)"),
        ("so*(8)", "so(2,6)"),
        ("so*(6)", "su(3,1)"),
        ("so(2,2)", "sl2+sl2"),
        ("so(4,C)", "so(3,C)+so(3,C)"),
        ("su(2,2)+sl2", "sl2+so(2,4)"),
    ])
    def test_same_key(self, a, b):
        assert key(a) == key(b)

    def test_distinct(self):
        assert key("sp(6)") != key("su(3,3)")
        assert key("su(2,1)") != key("su(2,2)")

    def test_canonical_representative(self):
        assert IsoType.parse("so(2,4)").canonical().display() == "su(2,2)"
        assert IsoType.parse("so(1,1)").canonical().display() == "so(1,1)"

    def test_from_rank_and_peirce(self):
        assert SimpleType.from_rank_and_peirce(3, 8).display() == "e7"
        assert SimpleType.from_rank_and_peirce(2, 3).display() == "so(2,5)"
        with pytest.raises(ContractViolation):
            SimpleType.from_rank_and_peirce(3, 3)

    def test_invalid_params(self):
        with pytest.raises(ContractViolation):
            SimpleType("so2", (2,))
        with pytest.raises(ContractViolation):
            SimpleType("su", (1, 2))

    def test_named(self):
        iso = named_type("sl(2,C)+R")
        assert iso.display() == "sl(2,C)+R"

    def test_list_round_trip(self):
        iso = IsoType.parse("su(3,1)+sl2")
        assert IsoType.from_list(iso.to_list()) == iso


class TestCatalog:

    @pytest.fixture(scope="class")
    def catalog(self):
        return IsoCatalog(max_rank=4, max_peirce=8)

    @pytest.mark.parametrize("text, dim", [
        ("sl2", 3), ("sp(6)", 21), ("su(2,1)", 8), ("so*(10)", 45), ("su*(8)", 63),
        ("so(2,5)", 21), ("e7", 133),
    ])
    def test_simple_dim(self, text, dim):
        assert simple_dim(IsoType.parse(text).summands[0]) == dim

    def test_tube_lookup(self, catalog):
        found = catalog.lookup(tube_signature(2, 2))
        assert found.key() == SimpleType("su", (2, 2)).key()

    def test_non_tube_lookup(self, catalog):
        found = catalog.lookup(su_signature(3, 1))
        assert found.key() == ("su", 3, 1)

    @pytest.mark.parametrize("dim, rank, mults, text", [
        (10, 2, [1] * 8, "sp(4)"),
        (21, 3, [1] * 18, "sp(6)"),
        (21, 2, [1] * 4 + [3] * 4, "so(2,5)"),
    ])
    def test_split_peirce_one(self, catalog, dim, rank, mults, text):
        found = catalog.lookup(signature_of(dim, rank, mults))
        assert found.key() == IsoType.parse(text).summands[0].key()

    def test_sp4_signature(self, catalog):
        assert tube_signature(2, 1) == (10, 2, ((1, 8),))

    def test_e7_signature(self, catalog):
        assert catalog.signature(SimpleType("e7")) == (133, 3, ((1, 6), (8, 12)))
        assert catalog.lookup(signature_of(133, 3, [1] * 6 + [8] * 12)).display() == "e7"

    def test_sustar_signature(self, catalog):
        assert catalog.lookup(signature_of(63, 3, [4] * 12)).display() == "su*(8)"
        assert catalog.signature(SimpleType("sustar", (3,))) == (35, 2, ((4, 6),))

    def test_unknown(self, catalog):
        assert catalog.lookup((7, 1, ((5, 2),))) is None
