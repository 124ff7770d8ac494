import itertools
import json

import pytest

from gamma_torsion.errors import (
    CatalogMissError,
    GroupSpecError,
    GroupValidationError,
    InvalidInvariantError,
)
from gamma_torsion.groups import (
    FiniteGroup,
    as_subgroup,
    catalog,
    catalog_names,
    dihedral_8,
    direct_product,
    make_abelian,
    parse_group_spec,
    quaternion_8,
    subgroup_closure,
    sylow_subgroup,
    trivial_group,
    two_generator_presentation,
    with_redundant_relator,
)


def brute_force_d8_table():
    """Independent D8 model: pairs (i, j) = r^i s^j with s r = r^-1 s."""
    elems = [(i, j) for i in range(4) for j in range(2)]

    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + (k if j == 0 else -k)) % 4, (j + l) % 2)

    return elems, mul


def test_make_abelian_klein_four():
    g = make_abelian([2, 2])
    assert g.order == 4
    assert len(g.generators) == 2
    assert len(g.relators) == 3
    g.validate()
    assert g.is_abelian()


def test_make_abelian_order_16_name():
    g = make_abelian([4, 2, 2])
    assert g.order == 16
    assert g.name == "C4xC2xC2"
    g.validate()


def test_make_abelian_cyclic6():
    g = make_abelian([6])
    assert g.order == 6
    assert len(g.generators) == 1
    assert g.relators == [tuple((0, 1) for _ in range(6))]
    g.validate()


def test_make_abelian_rejects_small_factors():
    with pytest.raises(InvalidInvariantError):
        make_abelian([1, 2])
    with pytest.raises(InvalidInvariantError):
        make_abelian([])


def test_direct_product_matches_make_abelian():
    g = direct_product(make_abelian([2]), make_abelian([2]))
    h = make_abelian([2, 2])
    assert g.order == h.order == 4
    g.validate()
    # same table up to the identity relabeling (both use last-factor-fastest)
    assert g.cayley == h.cayley


def test_direct_product_q8_c2():
    g = direct_product(quaternion_8(), make_abelian([2]))
    assert g.order == 16
    assert g.name == "Q8xC2"
    g.validate()


def test_direct_product_with_trivial():
    h = dihedral_8()
    g = direct_product(trivial_group(), h)
    assert g.order == 8
    assert g.cayley == h.cayley


def test_evaluate_word_empty_is_identity():
    g = make_abelian([4])
    assert g.evaluate_word(()) == g.identity


def test_evaluate_word_relator_c4():
    g = make_abelian([4])
    assert g.evaluate_word(((0, 1),) * 4) == g.identity


def test_evaluate_word_d8_against_brute_force():
    g = dihedral_8()
    elems, mul = brute_force_d8_table()
    # s r s r must be the identity in the independent model too
    x = (0, 1)
    for step in [(1, 0), (0, 1), (1, 0)]:
        x = mul(x, step)
    assert x == (0, 0)
    assert g.evaluate_word(((1, 1), (0, 1), (1, 1), (0, 1))) == g.identity


def test_catalog_q8_table_verified():
    g = catalog("Q8")
    assert g.order == 8
    # i^2 == j^2 (= -1) and has order 2
    i = g.generators[0][1]
    j = g.generators[1][1]
    i2 = g.mul(i, i)
    assert i2 == g.mul(j, j)
    assert g.mul(i2, i2) == g.identity
    assert not g.is_abelian()


def test_catalog_all_validate():
    for name in catalog_names(16):
        g = catalog(name)
        g.validate()
        for w in g.relators:
            assert g.evaluate_word(w) == g.identity


def test_catalog_c1():
    g = catalog("C1")
    assert g.order == 1
    assert g.generators == []


def test_catalog_c2x4():
    g = catalog("C2xC2xC2xC2")
    assert g.order == 16


def test_catalog_miss_lists_names():
    with pytest.raises(CatalogMissError) as err:
        catalog("S3")
    assert "C4xC2" in str(err.value)


def test_catalog_names_count_order_16():
    names = catalog_names(16)
    # 25 abelian groups of order <= 16 (incl. C1) plus D8, Q8, D8xC2, Q8xC2
    assert len(names) == 29
    assert names[0] == "C1"
    assert "C4xC3" not in names  # C4xC3 = C12: only invariant-factor spellings


def test_parse_group_spec_composites():
    g = parse_group_spec("C2xD8")
    assert g.order == 16
    g.validate()
    with pytest.raises(GroupSpecError):
        parse_group_spec("S3")
    with pytest.raises(GroupSpecError):
        parse_group_spec("")


def test_sylow_c6():
    g = make_abelian([6])
    s2 = sylow_subgroup(g, 2)
    assert len(s2) == 2
    s3 = sylow_subgroup(g, 3)
    assert len(s3) == 3


def test_sylow_d8_is_whole_group():
    g = dihedral_8()
    assert sylow_subgroup(g, 2) == list(range(8))


def test_sylow_c12():
    g = make_abelian([12])
    assert len(sylow_subgroup(g, 2)) == 4
    assert len(sylow_subgroup(g, 3)) == 3


def test_subgroup_reindexing_validates():
    g = make_abelian([12])
    elems = sylow_subgroup(g, 2)
    sub = as_subgroup(g, elems)
    sub.group.validate()
    assert sub.group.order == 4
    assert sorted(sub.embedding) == elems
    # embedding respects multiplication
    for a in range(4):
        for b in range(4):
            assert (
                sub.embedding[sub.group.mul(a, b)]
                == g.mul(sub.embedding[a], sub.embedding[b])
            )


def test_associativity_exhaustive_small():
    for name in ["C4", "C2xC2", "D8", "Q8"]:
        g = catalog(name)
        for a, b, c in itertools.product(g.elements(), repeat=3):
            assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_direct_product_order_multiplicative():
    g = direct_product(catalog("C4"), catalog("C3"))
    assert g.order == 12
    g.validate()


def test_json_round_trip():
    g = catalog("D8")
    data = json.loads(json.dumps(g.to_json_dict()))
    h = FiniteGroup.from_json_dict(data)
    assert h.order == g.order
    assert h.cayley == g.cayley
    assert h.generators == g.generators
    assert h.relators == g.relators


def test_json_rejects_garbage():
    with pytest.raises(GroupSpecError):
        FiniteGroup.from_json_dict({"order": 2})


def test_json_rejects_non_group_table():
    data = {
        "order": 2,
        "cayley": [[0, 1], [1, 1]],
        "generators": [{"name": "a", "element": 1}],
        "relators": [],
    }
    with pytest.raises(GroupValidationError):
        FiniteGroup.from_json_dict(data)


def test_element_words_reach_everything():
    g = catalog("Q8xC2")
    words = g.element_words()
    for x in g.elements():
        assert g.evaluate_word(words[x]) == x


def test_redundant_relator_still_valid():
    g = with_redundant_relator(catalog("C2xC2"))
    g.validate()
    assert len(g.relators) == 4


def test_two_generator_presentation_degenerate():
    g = two_generator_presentation(3, 1)
    assert g.order == 3
    assert len(g.generators) == 2
    g.validate()


def test_subgroup_closure():
    g = dihedral_8()
    r = g.generators[0][1]
    assert len(subgroup_closure(g, [r])) == 4
