import pytest

from gaschuetz import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    quaternion8,
    sl_2_3,
    symmetric,
    wreath_cyclic,
)
from gaschuetz.constructors import elementary_semidirect, quaternion_matrices
from gaschuetz.engine import (
    FAILS,
    FAILS_RULES,
    HOLDS,
    UNDECIDED,
    Verdict,
    all_firings,
    explain,
    fired_statuses,
    verdict,
)
from gaschuetz.errors import GroupError


def test_verdict_rule_constants_enforced():
    with pytest.raises(GroupError):
        Verdict(HOLDS, "ZNthm")
    with pytest.raises(GroupError):
        Verdict(FAILS, "abelian")
    with pytest.raises(GroupError):
        Verdict(UNDECIDED, None, witness=object())


def test_abelian_holds():
    v = verdict(cyclic(6))
    assert (v.status, v.rule) == (HOLDS, "abelian")


def test_sylow_abelian_holds():
    for G in [symmetric(3), alternating(4), dihedral(10)]:
        v = verdict(G)
        assert (v.status, v.rule) == (HOLDS, "sylow-abelian")


def test_zn_fails():
    for G in [quaternion8(), dihedral(8), sl_2_3()]:
        v = verdict(G)
        assert (v.status, v.rule) == (FAILS, "ZNthm")


def test_s4_holds_via_rose():
    v = verdict(symmetric(4))
    assert (v.status, v.rule) == (HOLDS, "rose")


def test_frobenius_200_fails():
    N = elementary_semidirect(5, quaternion_matrices(5)).group
    v = verdict(N)
    assert v.status == FAILS
    assert v.rule in ("prop-special", "composite-2.8") and v.rule in FAILS_RULES


def test_wreath_s3_c2_fails_special():
    v = verdict(wreath_cyclic(symmetric(3), 2).group)
    assert (v.status, v.rule) == (FAILS, "prop-special")


def test_a6_fails_perfect():
    v = verdict(alternating(6))
    assert (v.status, v.rule) == (FAILS, "perfect-no-split")


def test_a5_holds_before_perfect_rule():
    # all Sylow subgroups of A5 are abelian, so the cheaper rule fires
    v = verdict(alternating(5))
    assert (v.status, v.rule) == (HOLDS, "sylow-abelian")


def test_perfect_split_branch_psl27():
    from gaschuetz.constructors import matrix_group
    from gaschuetz.structure import center, quotient

    SL27 = matrix_group([((1, 1), (0, 1)), ((1, 0), (1, 1))], 7)
    PSL, _ = quotient(SL27, center(SL27))
    assert PSL.order == 168
    v = verdict(PSL)
    assert (v.status, v.rule) == (HOLDS, "perfect-split")


def test_open_problem_group_undecided():
    N = direct_product(
        elementary_semidirect(3, quaternion_matrices(3)).group, cyclic(2)
    )
    v = verdict(N)
    assert v.status == UNDECIDED
    assert v.rule is None and v.witness is None


def test_metabelian_biconditional_never_undecided(small_catalog_groups):
    from gaschuetz.structure import is_metabelian

    for entry, G in small_catalog_groups:
        if G.order > 40:
            continue
        if is_metabelian(G):
            assert verdict(G).status != UNDECIDED, entry.name


def test_composite_rule_direct_factor():
    # S3 x S3 holds already at the Sylow rule; force composite on a
    # product whose factors hold for different reasons
    G = direct_product(symmetric(4), cyclic(5))
    v = verdict(G)
    assert v.status == HOLDS


def test_explain_mentions_facts():
    text = explain(verdict(quaternion8()))
    assert "ZNthm" in text and "order 2" in text
    text = explain(verdict(cyclic(6)))
    assert "abelian" in text
    N = direct_product(
        elementary_semidirect(3, quaternion_matrices(3)).group, cyclic(2)
    )
    text = explain(verdict(N))
    assert "undecided" in text


def test_mutual_exclusion_spot(small_catalog_groups):
    import random

    rng = random.Random(5)
    for entry, G in rng.sample(small_catalog_groups, 25):
        holds_fired, fails_fired = fired_statuses(all_firings(G))
        assert not (holds_fired and fails_fired), entry.name


def test_rules_two_and_three_disjoint(small_catalog_groups):
    from gaschuetz.structure import all_sylow_abelian
    from gaschuetz.engine import _zn_meet

    for entry, G in small_catalog_groups:
        if G.order > 36:
            continue
        if all_sylow_abelian(G):
            assert _zn_meet(G).order == 1, entry.name
