"""Invariant generators, toric relations, bounded membership."""

from fractions import Fraction
from itertools import combinations_with_replacement
import pytest

from sforge import (
    CharacterAssignment,
    Polynomial,
    build_splice_equations,
    discriminant_group,
    invariant_generators,
    leaf_characters,
    membership_bounded,
    parse_polynomial,
    toric_relations,
)
from sforge.corpus import builtin_corpus, e7, e8
from sforge.invariants import ORDER_CAP

XYZ = ("x", "y", "z")


def char_assignment(leaves, orders, phases):
    return CharacterAssignment(
        leaf_ids=tuple(leaves),
        generator_orders=tuple(orders),
        phases=tuple(tuple(Fraction(p) for p in row) for row in phases),
    )


def exponent_set(basis):
    return set(basis.exponents)


# -- generators -------------------------------------------------------------------


def test_e7_generators_match_paper_set():
    ch = leaf_characters(e7())
    basis = invariant_generators(ch, 2)
    assert exponent_set(basis) == {
        (2, 0, 0),  # x^2
        (1, 0, 1),  # xz
        (0, 0, 2),  # z^2
        (0, 1, 0),  # y
    }
    assert basis.names == ("A", "B", "C", "D")
    assert basis.exponents == ((0, 0, 2), (0, 1, 0), (1, 0, 1), (2, 0, 0))


def test_trivial_group_generators_are_variables():
    ch = leaf_characters(e8())
    basis = invariant_generators(ch, 1)
    assert exponent_set(basis) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_z3_generators():
    ch = char_assignment(
        ("x", "y"), (3,), [[Fraction(1, 3), Fraction(1, 3)]]
    )
    basis = invariant_generators(ch, 3)
    assert exponent_set(basis) == {(3, 0), (2, 1), (1, 2), (0, 3)}


def test_generators_are_invariant_and_minimal():
    for g in (e7(), builtin_corpus()["quotient-cusp-2-3"]):
        ch = leaf_characters(g)
        order = discriminant_group(g).order
        basis = invariant_generators(ch, order)
        zero = (Fraction(0),) * len(ch.generator_orders)
        for exps in basis.exponents:
            mono = {v: e for v, e in zip(basis.variables, exps) if e}
            assert ch.monomial_character(mono) == zero
            # minimality: no other generator divides it
            for other in basis.exponents:
                if other != exps:
                    assert not all(a >= b for a, b in zip(exps, other))


def brute_force_minimal_invariants(ch, order):
    t = len(ch.leaf_ids)
    zero = (Fraction(0),) * len(ch.generator_orders)
    invariant = []
    for degree in range(1, order + 1):
        for combo in combinations_with_replacement(range(t), degree):
            exps = [0] * t
            for i in combo:
                exps[i] += 1
            mono = {v: e for v, e in zip(ch.leaf_ids, exps) if e}
            if ch.monomial_character(mono) == zero:
                invariant.append(tuple(exps))
    minimal = []
    for exps in invariant:
        if not any(
            other != exps and all(a >= b for a, b in zip(exps, other))
            for other in invariant
        ):
            minimal.append(exps)
    return set(minimal)


def test_generators_match_bruteforce_on_small_groups():
    cases = [
        char_assignment(("x", "y"), (4,), [[Fraction(1, 4), Fraction(3, 4)]]),
        char_assignment(
            ("x", "y", "z"),
            (2, 2),
            [
                [Fraction(1, 2), Fraction(0), Fraction(1, 2)],
                [Fraction(0), Fraction(1, 2), Fraction(1, 2)],
            ],
        ),
        char_assignment(("x", "y"), (5,), [[Fraction(1, 5), Fraction(2, 5)]]),
    ]
    for ch in cases:
        order = ch.order
        basis = invariant_generators(ch, order)
        assert exponent_set(basis) == brute_force_minimal_invariants(
            ch, order
        )


def test_completeness_every_invariant_monomial_factors(corpus):
    """Invariant monomials of degree <= |D| factor over the generators."""
    for name, g in corpus.items():
        if not g.is_qhs_tree():
            continue
        order = discriminant_group(g).order
        if order > 200:
            continue
        ch = leaf_characters(g)
        basis = invariant_generators(ch, order)
        gens = list(basis.exponents)
        zero = (Fraction(0),) * len(ch.generator_orders)
        t = len(ch.leaf_ids)

        def factors_over_gens(exps):
            if all(e == 0 for e in exps):
                return True
            return any(
                all(a >= b for a, b in zip(exps, g0))
                and factors_over_gens(
                    tuple(a - b for a, b in zip(exps, g0))
                )
                for g0 in gens
            )

        for degree in range(1, order + 1):
            for combo in combinations_with_replacement(range(t), degree):
                exps = [0] * t
                for i in combo:
                    exps[i] += 1
                mono = {v: e for v, e in zip(ch.leaf_ids, exps) if e}
                if ch.monomial_character(mono) == zero:
                    assert factors_over_gens(tuple(exps)), (name, exps)


def test_order_cap_refusal():
    ch = char_assignment(("x",), (2,), [[Fraction(1, 2)]])
    with pytest.raises(ValueError, match="cap"):
        invariant_generators(ch, ORDER_CAP + 1)


# -- toric relations ------------------------------------------------------------------


def test_e7_relation_is_the_paper_one():
    ch = leaf_characters(e7())
    basis = invariant_generators(ch, 2)
    rels = toric_relations(basis, 2)
    assert len(rels) == 1
    # A=z^2, B=y, C=xz, D=x^2 in canonical naming: AD - C^2 is the
    # paper's AC - B^2 after its renaming
    assert str(rels[0]) == "A*D - C^2"


def test_trivial_group_has_no_relations():
    ch = leaf_characters(e8())
    basis = invariant_generators(ch, 1)
    assert toric_relations(basis, 3) == []


def test_z3_relations():
    ch = char_assignment(
        ("x", "y"), (3,), [[Fraction(1, 3), Fraction(1, 3)]]
    )
    basis = invariant_generators(ch, 3)
    rels = {str(r) for r in toric_relations(basis, 2)}
    assert rels == {"A*C - B^2", "A*D - B*C", "B*D - C^2"}


def test_relations_vanish_under_parametrization(corpus):
    for name, g in corpus.items():
        if not g.is_qhs_tree():
            continue
        order = discriminant_group(g).order
        if order > 200:
            continue
        ch = leaf_characters(g)
        basis = invariant_generators(ch, order)
        mapping = {
            nm: basis.monomial(i) for i, nm in enumerate(basis.names)
        }
        for rel in toric_relations(basis, 2):
            assert rel.substitute(mapping).is_zero(), name


def test_bound_one_gives_no_relations():
    ch = leaf_characters(e7())
    basis = invariant_generators(ch, 2)
    assert toric_relations(basis, 1) == []


# -- membership -----------------------------------------------------------------------


def test_e7_membership_certificate_cofactor_z2():
    target = parse_polynomial("x^2*z^2 + y^3*z^2 + z^6", XYZ)
    gen = parse_polynomial("x^2 + y^3 + z^4", XYZ)
    cert = membership_bounded(target, [gen], 2)
    assert cert is not None
    assert [str(q) for q in cert.cofactors] == ["z^2"]
    check = Polynomial.zero(XYZ)
    for q, g0 in zip(cert.cofactors, [gen]):
        check = check + q * g0
    assert check == target


def test_generator_is_member_with_unit_cofactor():
    gen = parse_polynomial("x^2 + y^3 + z^4", XYZ)
    cert = membership_bounded(gen, [gen], 0)
    assert cert is not None
    assert [str(q) for q in cert.cofactors] == ["1"]


def test_low_degree_target_absent_at_small_bounds():
    gen = parse_polynomial("x^2 + y^3 + z^4", XYZ)
    x = parse_polynomial("x", XYZ)
    for bound in range(6):
        assert membership_bounded(x, [gen], bound) is None


def test_membership_with_two_generators():
    g1 = parse_polynomial("x^2 + y", XYZ)
    g2 = parse_polynomial("y^2 - z", XYZ)
    target = (
        parse_polynomial("z", XYZ) * g1
        + parse_polynomial("x + 1", XYZ) * g2
    )
    cert = membership_bounded(target, [g1, g2], 1)
    assert cert is not None
    total = Polynomial.zero(XYZ)
    for q, g0 in zip(cert.cofactors, [g1, g2]):
        total = total + q * g0
    assert total == target


def test_membership_via_splice_ideal_of_e7():
    pkg = build_splice_equations(e7())
    target = parse_polynomial("x^2*z^2 + y^3*z^2 + z^6", pkg.variables)
    cert = membership_bounded(target, list(pkg.equations), 2)
    assert cert is not None
    assert [str(q) for q in cert.cofactors] == ["z^2"]
