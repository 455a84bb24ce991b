"""Splice equation emission, congruence condition, genericity."""

from dataclasses import replace
from fractions import Fraction
from itertools import combinations
from random import Random

import pytest

from sforge import (
    ConditionsNotMetError,
    IntMatrix,
    NoNodesError,
    SemigroupConditionError,
    admissible_monomials,
    bci_exponents,
    build_splice_equations,
    check_equivariance,
    congruence_condition,
    determinant,
    generic_coefficients,
    leaf_characters,
    parse_polynomial,
    semigroup_condition,
    to_splice_diagram,
)
from sforge.corpus import (
    a_n,
    chain,
    e7,
    e8,
    quotient_cusp,
    random_negative_definite_tree,
    star,
    two_node_example,
)
from sforge.errors import NotQhsTreeError

from test_splice import engineered_failing_graph


def edge_toward(d, v, first_step):
    return next(
        e for e in d.incident_edges(v) if e.first_step(v) == first_step
    )


# -- admissible monomials -------------------------------------------------------


def test_admissible_monomials_paper_left_node():
    d = to_splice_diagram(two_node_example())
    wit = semigroup_condition(d)
    assert admissible_monomials(
        d, "n1", edge_toward(d, "n1", "z1"), witness=wit
    ) == [{"z1": 2}]
    assert admissible_monomials(
        d, "n2", edge_toward(d, "n2", "m"), witness=wit
    ) == [{"z1": 1, "z2": 4}, {"z1": 3, "z2": 1}]


def test_admissible_monomials_character_filter():
    g = e7()
    d = to_splice_diagram(g)
    chars = leaf_characters(g)
    wit = semigroup_condition(d)
    v = d.nodes[0]
    e = edge_toward(d, v, "x")
    trivial = (Fraction(0),)
    assert admissible_monomials(
        d, v, e, character=trivial, chars=chars, witness=wit
    ) == [{"x": 2}]
    unattained = (Fraction(1, 2),)
    assert (
        admissible_monomials(
            d, v, e, character=unattained, chars=chars, witness=wit
        )
        == []
    )


# -- congruence condition ---------------------------------------------------------


def test_congruence_e7_trivial_character():
    res = congruence_condition(e7())
    assert res.holds
    (chi,) = res.node_characters.values()
    assert chi == (Fraction(0),)


def test_congruence_trivial_group_zhs():
    res = congruence_condition(two_node_example())
    assert res.holds
    assert all(chi == () for chi in res.node_characters.values())


def test_congruence_quotient_cusp():
    res = congruence_condition(quotient_cusp(2, [2, 3]))
    assert res.holds
    assert set(res.node_monomials) == {"n1", "n2"}


def test_congruence_requires_semigroup():
    with pytest.raises(SemigroupConditionError):
        congruence_condition(engineered_failing_graph())


def test_congruence_refuses_no_node_graphs():
    with pytest.raises(NoNodesError):
        congruence_condition(a_n(3))


# -- generic coefficients ----------------------------------------------------------


def test_generic_coefficients_small():
    assert generic_coefficients(3) == IntMatrix([[1, 1, 1]])
    assert generic_coefficients(4) == IntMatrix(
        [[1, 1, 1, 1], [1, 2, 3, 4]]
    )


@pytest.mark.parametrize("delta", [3, 4, 5, 6])
def test_generic_coefficients_minors_nonzero(delta):
    m = generic_coefficients(delta)
    rows = delta - 2
    for cols in combinations(range(delta), rows):
        minor = IntMatrix([[m[i, j] for j in cols] for i in range(rows)])
        assert determinant(minor) != 0


def test_generic_coefficients_rejects_small_valency():
    with pytest.raises(ValueError):
        generic_coefficients(2)


# -- equation emission --------------------------------------------------------------


def test_paper_system_supports_and_unit_coefficients():
    pkg = build_splice_equations(two_node_example())
    assert pkg.variables == ("z1", "z2", "z3", "z4")
    assert [str(e) for e in pkg.equations] == [
        "z1^2 + z2^3 + z3*z4",
        "z1*z2^4 + z3^5 + z4^2",
    ]
    # both nodes have valency 3: generic rows are all ones, so setting
    # coefficients to 1 reproduces the paper system verbatim
    for ns in pkg.nodes:
        assert ns.coefficients == IntMatrix([[1, 1, 1]])


def test_e7_single_equation():
    pkg = build_splice_equations(e7())
    assert [str(e) for e in pkg.equations] == ["x^2 + y^3 + z^4"]
    ns = pkg.nodes[0]
    assert ns.weight == 24
    assert ns.variable_weights == {"x": 12, "y": 8, "z": 6}
    assert ns.character == (Fraction(0),)


def test_e8_single_equation():
    pkg = build_splice_equations(e8())
    assert [str(e) for e in pkg.equations] == ["x^2 + y^3 + z^5"]


def test_refusals():
    with pytest.raises(NoNodesError):
        build_splice_equations(chain([-2, -3]))
    with pytest.raises(ConditionsNotMetError) as err:
        build_splice_equations(engineered_failing_graph())
    assert "n2" in str(err.value)
    assert "toward k" in str(err.value)


def test_equation_count_is_t_minus_2():
    for g in (two_node_example(), e7(), quotient_cusp(3, [2, 3, 2])):
        pkg = build_splice_equations(g)
        assert len(pkg.equations) == len(pkg.variables) - 2


# -- BCI exponents -------------------------------------------------------------------


def test_bci_exponents_examples():
    assert bci_exponents(e7()) == (2, 3, 4)
    assert bci_exponents(e8()) == (2, 3, 5)
    g = star(-1, [[-2], [-3], [-7]], leaf_ids=["x", "y", "z"])
    assert bci_exponents(g) == (2, 3, 7)


def test_bci_exponents_need_one_node():
    with pytest.raises(ValueError):
        bci_exponents(two_node_example())


def test_one_node_support_is_pure_powers():
    rng = Random(77)
    checked = 0
    while checked < 10:
        g = random_negative_definite_tree(rng)
        try:
            d = to_splice_diagram(g)
        except NotQhsTreeError:
            continue
        if len(d.nodes) != 1:
            continue
        try:
            pkg = build_splice_equations(g)
        except ConditionsNotMetError:
            continue
        exps = bci_exponents(g)
        supports = set()
        for eq in pkg.equations:
            for m in eq.support_maps():
                supports.add(tuple(sorted(m.items())))
        assert supports == {
            ((w, p),) for w, p in zip(pkg.variables, exps)
        }
        checked += 1


# -- equivariance ---------------------------------------------------------------------


def test_built_packages_are_equivariant_by_independent_check():
    for g in (e7(), e8(), two_node_example(), quotient_cusp(2, [2, 3])):
        pkg = build_splice_equations(g)
        assert check_equivariance(pkg)


def test_tampered_e7_equation_fails():
    pkg = build_splice_equations(e7())
    bad = parse_polynomial("x^2 + y^2 + z^4", pkg.variables)
    node = replace(pkg.nodes[0], equations=(bad,))
    tampered = replace(pkg, nodes=(node,), equations=(bad,))
    assert not check_equivariance(tampered)


def test_hand_built_equivariant_equation_passes():
    pkg = build_splice_equations(e7())
    ok = parse_polynomial("x^2 - z^4", pkg.variables)
    node = replace(pkg.nodes[0], equations=(ok,))
    assert check_equivariance(replace(pkg, nodes=(node,), equations=(ok,)))


def test_equivariance_and_homogeneity_across_corpus(corpus):
    for name, g in corpus.items():
        try:
            pkg = build_splice_equations(g)
        except (NotQhsTreeError, NoNodesError, ConditionsNotMetError):
            continue
        assert check_equivariance(pkg), name
        for ns in pkg.nodes:
            for eq in ns.equations:
                assert eq.weighted_degree(ns.variable_weights) == ns.weight
            chars = {
                pkg.characters.monomial_character(m)
                for eq in ns.equations
                for m in eq.support_maps()
            }
            assert chars == {ns.character}, name


def test_zhs_semigroup_implies_congruence_on_corpus(corpus):
    from sforge import is_zhs

    seen = 0
    for name, g in corpus.items():
        try:
            d = to_splice_diagram(g)
        except NotQhsTreeError:
            continue
        if not d.has_nodes or not is_zhs(g, d):
            continue
        if not semigroup_condition(d).holds:
            continue
        assert congruence_condition(g).holds, name
        seen += 1
    assert seen >= 1
