"""Discriminant group of the intersection pairing and its diagonal
action on the leaf coordinates.

The group is coker(E -> E*), presented through the Smith normal form of
the intersection matrix M: with U M V = D, the classes of U^{-1} e_i
for the nontrivial diagonal entries d_i generate, and a class acts on
the leaf variable z_w through the fractional part of its pairing with
the dual basis element e_w. All phases are exact rationals mod 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import NotQhsTreeError
from .graph import ResolutionGraph, intersection_matrix
from .intmat import (
    RatMatrix,
    determinant,
    invert_rational,
    is_negative_definite,
    smith_normal_form,
)

__all__ = [
    "DiscriminantData",
    "CharacterAssignment",
    "discriminant_group",
    "leaf_characters",
    "dual_class_order",
]


@dataclass(frozen=True)
class DiscriminantData:
    """Finite abelian group data for D(Gamma) = coker(E -> E*)."""

    order: int
    invariant_factors: tuple  # nontrivial factors only, divisibility order
    generators: tuple  # class representatives, rational coords in the E-basis
    generator_orders: tuple  # order of each generator (= its factor)
    dual_basis: RatMatrix  # row i = e_i in the E-basis (i.e. M^{-1})
    pairing: tuple  # (e_i . e_j) mod 1, square tuple of Fractions

    @property
    def is_trivial(self):
        return self.order == 1


@dataclass(frozen=True)
class CharacterAssignment:
    """Diagonal action on the leaf variables: generator j multiplies
    z_w by exp(2*pi*i*phases[j][w])."""

    leaf_ids: tuple
    generator_orders: tuple
    phases: tuple  # phases[j] = tuple of Fractions in [0,1), one per leaf

    @property
    def order(self):
        out = 1
        for d in self.generator_orders:
            out *= d
        return out

    def monomial_character(self, exponents):
        """Character vector of prod z_w^alpha(w); exponents maps leaf
        id -> exponent. One Fraction in [0,1) per generator."""
        out = []
        for row in self.phases:
            total = Fraction(0)
            for vid, alpha in exponents.items():
                total += alpha * row[self.leaf_ids.index(vid)]
            out.append(total % 1)
        return tuple(out)

    def elements(self):
        """Phase vector on the leaves of every group element, keyed by
        the exponent tuple over the generators."""
        out = {}
        ranges = [range(d) for d in self.generator_orders]
        for coeffs in product(*ranges):
            phases = []
            for w in range(len(self.leaf_ids)):
                total = Fraction(0)
                for c, row in zip(coeffs, self.phases):
                    total += c * row[w]
                phases.append(total % 1)
            out[coeffs] = tuple(phases)
        return out

    def is_faithful(self):
        seen = set()
        for phases in self.elements().values():
            if phases in seen:
                return False
            seen.add(phases)
        return True


def _require_qhs_tree(g):
    if not g.is_qhs_tree():
        raise NotQhsTreeError(
            "not a QHS tree: graph must be a tree of genus-0 curves"
        )
    m = intersection_matrix(g)
    if not is_negative_definite(m):
        raise NotQhsTreeError(
            "not a QHS tree: intersection matrix is not negative definite"
        )
    return m


def discriminant_group(g: ResolutionGraph) -> DiscriminantData:
    """Invariant factors, canonical generators and discriminant pairing
    of coker(E -> E*) for a negative-definite QHS tree."""
    m = _require_qhs_tree(g)
    n = m.rows
    order = abs(determinant(m))
    snf = smith_normal_form(m)
    factors = snf.invariant_factors
    prod = 1
    for x in factors:
        prod *= x
    if prod != order:
        raise AssertionError("invariant factor product != |det|")
    minv = invert_rational(m)
    # coker(M) = Z^n / D Z^n after the row transform U; the class of the
    # i-th standard generator pulls back to U^{-1} e_i in dual-basis
    # coordinates, i.e. to column i of M^{-1} U^{-1} in the E-basis.
    uinv = invert_rational(snf.u).to_int()
    gen_coords = minv @ uinv
    generators = []
    generator_orders = []
    for i in range(n):
        d = snf.d[i, i]
        if d > 1:
            generators.append(gen_coords.column(i))
            generator_orders.append(d)
    pairing = tuple(
        tuple(minv[i, j] % 1 for j in range(n)) for i in range(n)
    )
    return DiscriminantData(
        order=order,
        invariant_factors=tuple(x for x in factors if x > 1),
        generators=tuple(generators),
        generator_orders=tuple(generator_orders),
        dual_basis=minv,
        pairing=pairing,
    )


def _leaf_ids(g):
    leaves = [v.id for v in g.vertices if g.valency(v.id) <= 1]
    return tuple(leaves)


def leaf_characters(g: ResolutionGraph) -> CharacterAssignment:
    """Phases of the canonical generators on the end-curve variables.

    The phase of a class c (rational coordinates in the E-basis) on the
    leaf w is the fractional part of c . e_w, which is coordinate w of
    c. Faithfulness of the resulting diagonal representation is
    verified by enumerating the whole group.
    """
    data = discriminant_group(g)
    leaves = _leaf_ids(g)
    leaf_pos = [g.index_of(w) for w in leaves]
    phases = tuple(
        tuple(gen[p] % 1 for p in leaf_pos) for gen in data.generators
    )
    chars = CharacterAssignment(
        leaf_ids=leaves,
        generator_orders=data.generator_orders,
        phases=phases,
    )
    if not chars.is_faithful():
        raise AssertionError(
            "leaf character representation is not faithful"
        )
    return chars


def dual_class_order(g: ResolutionGraph, vertex_id: str) -> int:
    """Order n_i of the class of the dual basis element e_i: the least
    n >= 1 with n * e_i integral in the E-basis."""
    m = _require_qhs_tree(g)
    minv = invert_rational(m)
    i = g.index_of(vertex_id)
    n = 1
    for x in minv.column(i):
        d = x.denominator
        n = n * d // gcd(n, d)
    return n
