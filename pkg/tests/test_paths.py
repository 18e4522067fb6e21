import pytest

from qpmut.errors import PreconditionError, StructuralError
from qpmut.paths import (Substitution, TruncatedElement, cyclic_class_project, cyclic_derivative,
                         cyclic_normal_form, left_derivative, multiply, right_derivative, second_derivative)
from qpmut.quiver import Quiver

TRI = Quiver("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
RED = Quiver("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "3", "1")])


def el(Q, N, *terms):
    return TruncatedElement.from_terms(Q, N, terms)


def test_products_and_local_units():
    a, b = el(TRI, 5, (1, "a")), el(TRI, 5, (1, "b"))
    assert multiply(a, b) == el(TRI, 5, (1, "a b"))
    assert multiply(TruncatedElement.vertex(TRI, 5, "1"), a) == a
    assert multiply(a, TruncatedElement.vertex(TRI, 5, "2")) == a
    assert multiply(b, a).is_zero()


def test_truncation_drops_long_paths():
    ab, c = el(TRI, 2, (1, "a b")), el(TRI, 2, (1, "c"))
    assert multiply(ab, c).is_zero()


def test_mixed_truncation_is_an_error():
    with pytest.raises(StructuralError):
        multiply(el(TRI, 2, (1, "a")), el(TRI, 3, (1, "b")))


def test_one_sided_derivatives():
    ab = el(TRI, 5, (1, "a b"))
    assert right_derivative("b", ab) == el(TRI, 5, (1, "a"))
    assert right_derivative("a", ab).is_zero()
    assert left_derivative("a", ab) == el(TRI, 5, (1, "b"))
    with pytest.raises(PreconditionError):
        right_derivative("a", TruncatedElement.vertex(TRI, 5, "1"))


def test_cyclic_derivatives():
    W = el(TRI, 5, (1, "a b c"))
    assert cyclic_derivative("a", W) == el(TRI, 5, (1, "b c"))
    W2 = el(RED, 5, (1, "c d"), (1, "a b d"))
    assert cyclic_derivative("d", W2) == el(RED, 5, (1, "c"), (1, "a b"))
    assert cyclic_derivative("a", el(RED, 5, (1, "c d"))).is_zero()


def test_second_derivative_wraps_around():
    W = el(TRI, 5, (1, "a b c"))
    assert second_derivative("a", "b", W) == el(TRI, 5, (1, "c"))
    assert second_derivative("c", "a", W) == el(TRI, 5, (1, "b"))
    assert second_derivative("a", "c", W).is_zero()


def test_cyclic_normal_form():
    assert cyclic_normal_form(el(TRI, 5, (1, "b c a"))) == el(TRI, 5, (1, "a b c"))
    assert cyclic_normal_form(el(TRI, 5, (1, "a b c"), (-1, "b c a"))).is_zero()
    W = el(RED, 5, (1, "c d"), (1, "a b d"))
    assert cyclic_normal_form(W) == W


def test_class_projection():
    assert cyclic_class_project(el(TRI, 5, (1, "a"))) == {}
    x = cyclic_class_project(el(TRI, 5, (1, "a b c")))
    assert x == cyclic_class_project(el(TRI, 5, (1, "b c a")))
    y = cyclic_class_project(el(TRI, 5, (2, "a b c"), (1, "a b")))
    assert list(y.values()) == [2]


def test_substitution_expands_multiplicatively():
    Q = Quiver("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4"), ("d", "4", "3")])
    phi = Substitution(Q, Q, 6, {"b": el(Q, 6, (1, "b"), (1, "c d"))})
    assert phi(el(Q, 6, (1, "a b"))) == el(Q, 6, (1, "a b"), (1, "a c d"))
    assert phi(TruncatedElement.vertex(Q, 6, "1")) == TruncatedElement.vertex(Q, 6, "1")
    assert Substitution.identity(Q, 6)(el(Q, 6, (3, "a c"))) == el(Q, 6, (3, "a c"))


def test_substitution_rejects_bad_images():
    Q = Quiver("123", [("a", "1", "2"), ("b", "2", "3")])
    with pytest.raises(StructuralError):
        Substitution(Q, Q, 4, {"a": el(Q, 4, (1, "b"))})
    with pytest.raises(StructuralError):
        Substitution(Q, Q, 4, {"a": TruncatedElement.vertex(Q, 4, "1")})


def test_substitution_inverse():
    Q = Quiver("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4"), ("d", "4", "3")])
    phi = Substitution(Q, Q, 6, {"b": el(Q, 6, (2, "b"), (1, "c d"))})
    psi = phi.inverse()
    assert phi.compose(psi).is_identity()
    assert psi.compose(phi).is_identity()
