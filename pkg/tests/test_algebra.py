from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasihopf.algebra import (BasedAlgebra, Element, Space, check_algebra_morphism, ground,
                               invert_element, on_leg, outer, tensor, tensor_algebra,
                               verify_associative_unital)
from quasihopf.fields import GF, QQ
from quasihopf.linalg import LinearMap, NotInvertible


def matrix_algebra(field=QQ):
    """2x2 matrices on the basis of matrix units e_ij."""
    labels = ["e11", "e12", "e21", "e22"]

    def product(a, b):
        i, j = divmod(a, 2)
        k, l = divmod(b, 2)
        return {2 * i + l: 1} if j == k else {}

    return BasedAlgebra.from_product(labels, product, [1, 0, 0, 1], field, name="M2")


def dual_numbers(field=QQ):
    return BasedAlgebra.from_triples(["1", "t"], [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
                                     [1, 0], field, name="k[t]/t²")


coeffs = st.lists(st.integers(-3, 3), min_size=4, max_size=4)


def test_matrix_algebra_is_associative_and_unital():
    assert verify_associative_unital(matrix_algebra()).ok


@pytest.mark.parametrize("field", [QQ, GF(7)], ids=["rational", "gf7"])
def test_tensor_algebra_is_associative(field):
    T = tensor_algebra(dual_numbers(field), matrix_algebra(field))
    assert T.dim == 8 and T.labels[1] == "1⊗e12"
    assert verify_associative_unital(T).ok


def test_broken_table_reports_every_failing_triple():
    A = matrix_algebra()
    triples = [t for t in A.triples() if t[:2] != (1, 2)]
    triples.append((1, 2, 3, Fraction(1)))  # e12 e21 should be e11
    report = verify_associative_unital(
        BasedAlgebra.from_triples(A.labels, triples, A.unit_coords, QQ))
    assert "assoc" in report.failed_axioms
    witnesses = {v.witness for v in report.violations if v.axiom == "assoc"}
    assert (1, 2, 1) in witnesses
    bad = next(v for v in report.violations if v.witness == (1, 2, 1))
    assert bad.lhs != bad.rhs


def test_wrong_unit_is_reported():
    A = matrix_algebra()
    report = verify_associative_unital(
        BasedAlgebra.from_triples(A.labels, list(A.triples()), [1, 0, 0, 0], QQ))
    assert report.failed_axioms == ["unit"]


@given(coeffs, coeffs, coeffs)
def test_product_is_bilinear(a, b, c):
    A = matrix_algebra()
    x, y, z = A.element(a), A.element(b), A.element(c)
    assert (x + y) * z == x * z + y * z
    assert x * (y.scale(3) - z) == (x * y).scale(3) - x * z


@given(coeffs)
def test_invert_element(a):
    A = matrix_algebra()
    x = A.element(a)
    det = a[0] * a[3] - a[1] * a[2]
    if det == 0:
        with pytest.raises(NotInvertible):
            invert_element(x)
    else:
        y = invert_element(x)
        assert x * y == A.one() and y * x == A.one()


def test_tensor_keys_and_outer_product():
    A, B = dual_numbers(), matrix_algebra()
    AB = tensor(A, B)
    x = outer(A.basis(1), B.basis(2))
    assert x.space == AB
    assert list(x.items()) == [((1, 2), 1)]
    assert AB.index(AB.join((1, 2))) == 1 * 4 + 2


def test_tensor_with_ground_drops_the_leg():
    A = dual_numbers()
    assert tensor(A, ground(QQ)) is A


def test_on_leg_applies_map_to_one_factor():
    A = dual_numbers()
    swap_t = LinearMap([[1, 0], [0, 2]], QQ)
    x = outer(A.basis(1), A.basis(1))
    y = on_leg(x, 1, swap_t, A)
    assert y == outer(A.basis(1), A.basis(1)).scale(2)


def test_algebra_morphism_check():
    A = dual_numbers()
    ident = LinearMap.identity(2, QQ)
    assert check_algebra_morphism(ident, A, A).ok
    # t -> 1 does not respect t² = 0
    bad = LinearMap([[1, 1], [0, 0]], QQ)
    assert "morph-mult" in check_algebra_morphism(bad, A, A).failed_axioms


def test_space_validation():
    with pytest.raises(ValueError):
        Space([], QQ)
    with pytest.raises(ValueError):
        Space(["a", "a"], QQ)
    with pytest.raises(ValueError):
        Space(["a", "b"], QQ).element([1])


def test_elements_of_different_spaces_do_not_add():
    with pytest.raises(ValueError):
        dual_numbers().one() + matrix_algebra().one()


def test_element_zero_terms_are_dropped():
    A = dual_numbers()
    assert Element(A, {0: 0, 1: 2}).terms == {1: 2}
    assert not A.zero()
