"""Quasi-bialgebras and quasi-Hopf algebras on a based algebra.

Tensor components of the reassociator ``phi`` are written ``X1 (x) X2 (x) X3``
and those of ``phi_inv`` as ``x1 (x) x2 (x) x3``.  Iterated coproducts are
obtained by applying the coproduct matrix to individual legs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

from .algebra import (BasedAlgebra, Element, apply_map, check_algebra_morphism, contract,
                      ground, invert_element, on_leg, outer, tensor,
                      verify_associative_unital)
from .linalg import LinearMap, NotInvertible, inverse
from .report import VerificationReport


@dataclass(frozen=True, eq=False, kw_only=True)
class QuasiBialgebra:
    H: BasedAlgebra
    comul: LinearMap
    counit: LinearMap
    phi: Element
    phi_inv: Element | None = None

    def __post_init__(self):
        d = self.H.dim
        if self.comul.shape != (d * d, d):
            raise ValueError(f"coproduct must be {d * d}x{d}, got {self.comul.shape}")
        if self.counit.shape != (1, d):
            raise ValueError(f"counit must be 1x{d}, got {self.counit.shape}")
        if self.phi.space != self.H3:
            raise ValueError("phi must live in H⊗H⊗H")
        if self.phi_inv is None:
            object.__setattr__(self, "phi_inv", invert_element(self.phi))
        elif self.phi_inv.space != self.H3:
            raise ValueError("phi_inv must live in H⊗H⊗H")

    @property
    def field(self):
        return self.H.field

    @property
    def dim(self) -> int:
        return self.H.dim

    @cached_property
    def H2(self):
        return tensor(self.H, self.H)

    @cached_property
    def H3(self):
        return tensor(self.H, self.H, self.H)

    @cached_property
    def k(self):
        return ground(self.field)

    def one(self) -> Element:
        return self.H.one()

    def e(self, i: int) -> Element:
        return self.H.basis(i)

    def delta(self, h: Element) -> Element:
        return apply_map(self.comul, h, self.H2)

    def eps(self, h: Element):
        return self.counit.apply(h.coords)[0]

    def delta_on(self, x: Element, leg: int) -> Element:
        return on_leg(x, leg, self.comul, self.H2)

    def eps_on(self, x: Element, leg: int) -> Element:
        return on_leg(x, leg, self.counit, self.k)

    @cached_property
    def _delta_basis(self) -> list[Element]:
        return [self.delta(self.e(i)) for i in range(self.dim)]

    def delta_e(self, i: int) -> Element:
        return self._delta_basis[i]

    def eps_e(self, i: int):
        return self.counit.rows[0][i]


@dataclass(frozen=True, eq=False, kw_only=True)
class QuasiHopfAlgebra(QuasiBialgebra):
    antipode: LinearMap
    alpha: Element
    beta: Element
    antipode_inv: LinearMap | None = None

    def __post_init__(self):
        super().__post_init__()
        d = self.H.dim
        if self.antipode.shape != (d, d):
            raise ValueError("antipode must be square")
        if self.alpha.space != self.H or self.beta.space != self.H:
            raise ValueError("alpha and beta must be elements of H")

    @cached_property
    def S_inv_map(self) -> LinearMap:
        """``antipode_inv`` if supplied, otherwise the matrix inverse of the antipode."""
        if self.antipode_inv is not None:
            return self.antipode_inv
        return inverse(self.antipode)

    def S(self, h: Element) -> Element:
        return apply_map(self.antipode, h, self.H)

    def S_inv(self, h: Element) -> Element:
        return apply_map(self.S_inv_map, h, self.H)

    @cached_property
    def _S_basis(self) -> list[Element]:
        return [self.S(self.e(i)) for i in range(self.dim)]

    def S_e(self, i: int) -> Element:
        return self._S_basis[i]

    @cached_property
    def pq(self) -> PQElements:
        return compute_pq(self)

    @cached_property
    def bv_tensor(self) -> Element:
        """``X1 (x) S(x1 X2) alpha x2 X3_1 (x) S(x3 X3_2)``, the kernel of the B^v product."""
        T = self.delta_on(outer(self.phi, self.phi_inv), 2)
        e, S, a = self.e, self.S, self.alpha

        def fn(X1, X2, X31, X32, x1, x2, x3):
            return outer(e(X1), S(e(x1) * e(X2)) * a * e(x2) * e(X31), S(e(x3) * e(X32)))

        return contract(T, fn, self.H3)


@dataclass(frozen=True, eq=False)
class PQElements:
    p_R: Element
    q_R: Element


def _phi_inverse_report(Hq: QuasiBialgebra, report: VerificationReport) -> None:
    one3 = Hq.H3.one()
    report.expect("Φ-inv", ("left",), Hq.phi_inv * Hq.phi, one3)
    report.expect("Φ-inv", ("right",), Hq.phi * Hq.phi_inv, one3)


def verify_quasi_bialgebra(Hq: QuasiBialgebra) -> VerificationReport:
    H, phi, phi_inv = Hq.H, Hq.phi, Hq.phi_inv
    report = verify_associative_unital(H)
    _phi_inverse_report(Hq, report)
    report.extend(check_algebra_morphism(Hq.comul, H, Hq.H2), prefix="Δ-")
    report.extend(check_algebra_morphism(Hq.counit, H, Hq.k), prefix="ε-")

    for i in range(H.dim):
        d = Hq.delta_e(i)
        lhs = Hq.delta_on(d, 1)
        rhs = phi * Hq.delta_on(d, 0) * phi_inv
        report.expect("(q1)", (i,), lhs, rhs)

    for i in range(H.dim):
        d = Hq.delta_e(i)
        report.expect("(q2)", (i, "id⊗ε"), Hq.eps_on(d, 1), Hq.e(i))
        report.expect("(q2)", (i, "ε⊗id"), Hq.eps_on(d, 0), Hq.e(i))

    one = Hq.one()
    lhs = outer(one, phi) * Hq.delta_on(phi, 1) * outer(phi, one)
    rhs = Hq.delta_on(phi, 2) * Hq.delta_on(phi, 0)
    report.expect("(q3)", (), lhs, rhs)

    one2 = Hq.H2.one()
    report.expect("(q4)", (), Hq.eps_on(phi, 1), one2)
    report.expect("(q7)", ("ε⊗id⊗id",), Hq.eps_on(phi, 0), one2)
    report.expect("(q7)", ("id⊗id⊗ε",), Hq.eps_on(phi, 2), one2)
    return report


def verify_quasi_hopf(Hq: QuasiHopfAlgebra) -> VerificationReport:
    """Anti-automorphism property of S, (q5), (q6) and the normalizations."""
    H = Hq.H
    e, S, alpha, beta = Hq.e, Hq.S_e, Hq.alpha, Hq.beta
    report = VerificationReport()

    for i in range(H.dim):
        for j in range(H.dim):
            report.expect("S-anti", (i, j), Hq.S(e(i) * e(j)), S(j) * S(i))
    report.expect("S-anti", ("unit",), Hq.S(Hq.one()), Hq.one())
    try:
        S_inv = Hq.S_inv_map
    except NotInvertible:
        report.fail("S-inv", ("singular",))
    else:
        ident = LinearMap.identity(H.dim, H.field)
        report.expect("S-inv", ("S⁻¹∘S",), (S_inv @ Hq.antipode).rows, ident.rows)
        report.expect("S-inv", ("S∘S⁻¹",), (Hq.antipode @ S_inv).rows, ident.rows)

    for i in range(H.dim):
        d = Hq.delta_e(i)
        eps = Hq.eps_e(i)
        lhs = contract(d, lambda a, b: S(a) * alpha * e(b), H)
        report.expect("(q5)", (i, "α"), lhs, alpha.scale(eps))
        lhs = contract(d, lambda a, b: e(a) * beta * S(b), H)
        report.expect("(q5)", (i, "β"), lhs, beta.scale(eps))

    one = Hq.one()
    lhs = contract(Hq.phi, lambda a, b, c: e(a) * beta * S(b) * alpha * e(c), H)
    report.expect("(q6)", ("Φ",), lhs, one)
    lhs = contract(Hq.phi_inv, lambda a, b, c: S(a) * alpha * e(b) * beta * S(c), H)
    report.expect("(q6)", ("Φ⁻¹",), lhs, one)

    report.expect("normalization", ("ε(α)",), (Hq.eps(alpha),), (H.field.one,))
    report.expect("normalization", ("ε(β)",), (Hq.eps(beta),), (H.field.one,))
    eS = Hq.counit @ Hq.antipode
    report.expect("normalization", ("ε∘S",), eS.rows[0], Hq.counit.rows[0])
    return report


def normalize_alpha_beta(Hq: QuasiHopfAlgebra) -> QuasiHopfAlgebra:
    """Rescale so that ``eps(alpha) = eps(beta) = 1``."""
    ea, eb = Hq.eps(Hq.alpha), Hq.eps(Hq.beta)
    if ea * eb != 1:
        raise ValueError(f"ε(α)ε(β) = {ea * eb}, but the axioms force it to be 1")
    if ea == 1 and eb == 1:
        return Hq
    return replace(Hq, alpha=Hq.alpha.scale(eb), beta=Hq.beta.scale(ea))


def compute_pq(Hq: QuasiHopfAlgebra) -> PQElements:
    """``p_R = x1 (x) x2 beta S(x3)`` and ``q_R = X1 (x) S^-1(alpha X3) X2``."""
    e, S = Hq.e, Hq.S_e
    beta, alpha = Hq.beta, Hq.alpha
    S_inv = Hq.S_inv
    p = contract(Hq.phi_inv, lambda a, b, c: outer(e(a), e(b) * beta * S(c)), Hq.H2)
    q = contract(Hq.phi, lambda a, b, c: outer(e(a), S_inv(alpha * e(c)) * e(b)), Hq.H2)
    return PQElements(p_R=p, q_R=q)


def verify_pq_identities(Hq: QuasiHopfAlgebra, pq: PQElements | None = None) -> VerificationReport:
    """The exchange identities for ``p_R`` and ``q_R``: (unu), (trei), (cucu)."""
    pq = pq or Hq.pq
    p, q = pq.p_R, pq.q_R
    H, H2 = Hq.H, Hq.H2
    e, S, S_inv = Hq.e, Hq.S_e, Hq.S_inv
    one, one2 = Hq.one(), H2.one()
    report = VerificationReport()

    # q1_1 p1 (x) q1_2 p2 S(q2)
    t = Hq.delta_on(q, 0) * outer(p, one)
    lhs = contract(t, lambda a, b, c: outer(e(a), e(b) * S(c)), H2)
    report.expect("(unu)", ("q¹₁p¹⊗q¹₂p²S(q²)",), lhs, one2)

    # q1 p1_1 (x) S^-1(p2) q2 p1_2
    t = outer(q, Hq.delta_on(p, 0))
    lhs = contract(t, lambda q1, q2, p11, p12, p2: outer(e(q1) * e(p11),
                                                         S_inv(e(p2)) * e(q2) * e(p12)), H2)
    report.expect("(unu)", ("q¹p¹₁⊗S⁻¹(p²)q²p¹₂",), lhs, one2)

    for i in range(H.dim):
        h = e(i)
        d = Hq.delta_e(i)
        lhs = contract(d, lambda a, b: Hq.delta(e(a)) * p * outer(one, S(b)), H2)
        report.expect("(trei)", (i, "p_R"), lhs, p * outer(h, one))
        lhs = contract(d, lambda a, b: outer(one, S_inv(e(b))) * q * Hq.delta(e(a)), H2)
        report.expect("(trei)", (i, "q_R"), lhs, outer(h, one) * q)

    lhs = contract(q, lambda a, b: e(a) * Hq.beta * S(b), H)
    report.expect("(cucu)", (), lhs, one)
    return report


def lemma3_lhs(Hq: QuasiHopfAlgebra, pq: PQElements | None = None) -> Element:
    """``q1_1 t1 x1 (x) q1_(2,1) t2_1 z1 x2 (x) q1_(2,2) t2_2 z2 beta S(q2 t3 z3) x3``."""
    pq = pq or Hq.pq
    one = Hq.one()
    e, beta = Hq.e, Hq.beta
    Q = Hq.delta_on(Hq.delta_on(pq.q_R, 0), 1)
    T = Hq.delta_on(Hq.phi_inv, 1)
    Z = outer(one, Hq.phi_inv)
    prod = Q * T * Z
    folded = contract(prod, lambda a, b, c, d: outer(e(a), e(b), e(c) * beta * Hq.S(e(d))), Hq.H3)
    return folded * Hq.phi_inv


def verify_lemma3(Hq: QuasiHopfAlgebra, pq: PQElements | None = None) -> VerificationReport:
    report = VerificationReport()
    report.expect("(lema3)", (), lemma3_lhs(Hq, pq), Hq.H3.one())
    return report


def is_hopf_specialization(Hq: QuasiHopfAlgebra) -> bool:
    """Whether ``phi`` is trivial and ``alpha = beta = 1`` (the Hopf specialization)."""
    return Hq.phi == Hq.H3.one() and Hq.alpha == Hq.one() and Hq.beta == Hq.one()
