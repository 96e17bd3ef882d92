"""Module algebras, comodule algebras, smash products and the B^v construction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .algebra import (BasedAlgebra, Element, Space, apply_map, check_algebra_morphism,
                      invert_element, on_leg, outer, tensor, verify_associative_unital)
from .linalg import LinearMap, inverse, kron, rank
from .quasi_hopf import QuasiHopfAlgebra
from .report import PreconditionError, VerificationError, VerificationReport


@dataclass(frozen=True, eq=False)
class HModule:
    """Left H-module ``V`` with action matrix of shape ``dim V x (dim H * dim V)``."""

    H: QuasiHopfAlgebra
    V: Space
    action: LinearMap

    def __post_init__(self):
        dv, dh = self.V.dim, self.H.dim
        if self.action.shape != (dv, dh * dv):
            raise ValueError(f"action must be {dv}x{dh * dv}, got {self.action.shape}")

    @cached_property
    def _act_basis(self) -> list[list[Element]]:
        dv = self.V.dim
        return [[self.V.element(self.action.column(i * dv + j)) for j in range(dv)]
                for i in range(self.H.dim)]

    def act_e(self, i: int, j: int) -> Element:
        """``e_i . v_j``."""
        return self._act_basis[i][j]

    def act(self, h: Element, x: Element) -> Element:
        acc: dict = {}
        for i, c in h.terms.items():
            for j, d in x.terms.items():
                for k, e in self._act_basis[i][j].terms.items():
                    acc[k] = acc.get(k, 0) + c * d * e
        return Element(self.V, acc)

    def action_matrix(self, h: Element) -> LinearMap:
        cols = [self.act(h, self.V.basis(j)).coords for j in range(self.V.dim)]
        return LinearMap.from_columns(cols, self.V.field, self.V.dim)


@dataclass(frozen=True, eq=False)
class ModuleAlgebra(HModule):
    """Left H-module algebra; the multiplication of ``V`` need not be associative."""

    @property
    def A(self) -> BasedAlgebra:
        return self.V

    @property
    def module(self) -> HModule:
        return HModule(self.H, self.V, self.action)


@dataclass(frozen=True, eq=False, kw_only=True)
class ComoduleAlgebra:
    H: QuasiHopfAlgebra
    B: BasedAlgebra
    coaction: LinearMap
    phi_rho: Element
    phi_rho_inv: Element | None = None

    def __post_init__(self):
        db, dh = self.B.dim, self.H.dim
        if self.coaction.shape != (db * dh, db):
            raise ValueError(f"coaction must be {db * dh}x{db}, got {self.coaction.shape}")
        if self.phi_rho.space != self.BHH:
            raise ValueError("phi_rho must live in B⊗H⊗H")
        if self.phi_rho_inv is None:
            object.__setattr__(self, "phi_rho_inv", invert_element(self.phi_rho))

    @cached_property
    def BH(self):
        return tensor(self.B, self.H.H)

    @cached_property
    def BHH(self):
        return tensor(self.B, self.H.H, self.H.H)

    def rho(self, b: Element) -> Element:
        return apply_map(self.coaction, b, self.BH)

    def rho_on(self, x: Element, leg: int) -> Element:
        return on_leg(x, leg, self.coaction, self.BH)

    @cached_property
    def _rho_basis(self) -> list[Element]:
        return [self.rho(self.B.basis(i)) for i in range(self.B.dim)]

    def rho_e(self, i: int) -> Element:
        return self._rho_basis[i]


def regular_comodule(Hq: QuasiHopfAlgebra) -> ComoduleAlgebra:
    """H as a right comodule algebra over itself (coaction = coproduct, Φ_ρ = Φ)."""
    return ComoduleAlgebra(H=Hq, B=Hq.H, coaction=Hq.comul, phi_rho=Hq.phi,
                           phi_rho_inv=Hq.phi_inv)


def verify_module_algebra(MA: ModuleAlgebra) -> VerificationReport:
    Hq, A = MA.H, MA.A
    e, a_ = Hq.e, A.basis
    report = VerificationReport()
    for i in range(A.dim):
        report.expect("module-unit", (i,), MA.act(Hq.one(), a_(i)), a_(i))
    for i in range(Hq.dim):
        for j in range(Hq.dim):
            hh = e(i) * e(j)
            for k in range(A.dim):
                report.expect("module-assoc", (i, j, k), MA.act(hh, a_(k)),
                              MA.act(e(i), MA.act_e(j, k)))
    phi_terms = list(Hq.phi.items())
    for i in range(A.dim):
        for j in range(A.dim):
            ij = a_(i) * a_(j)
            for k in range(A.dim):
                rhs = A.zero()
                for (x1, x2, x3), c in phi_terms:
                    rhs = rhs + (MA.act_e(x1, i) * (MA.act_e(x2, j) * MA.act_e(x3, k))).scale(c)
                report.expect("(ma1)", (i, j, k), ij * a_(k), rhs)
    for h in range(Hq.dim):
        d = list(Hq.delta_e(h).items())
        for i in range(A.dim):
            for j in range(A.dim):
                rhs = A.zero()
                for (h1, h2), c in d:
                    rhs = rhs + (MA.act_e(h1, i) * MA.act_e(h2, j)).scale(c)
                report.expect("(ma2)", (h, i, j), MA.act(e(h), a_(i) * a_(j)), rhs)
    one = A.one()
    for h in range(Hq.dim):
        report.expect("(ma3)", (h,), MA.act(e(h), one), one.scale(Hq.eps_e(h)))
    return report


def lulu_algebra(MA: HModule | ModuleAlgebra) -> BasedAlgebra:
    """``A (x) H`` with ``(a#h)(a'#h') = (x1.a)(x2 h1.a') # x3 h2 h'``.

    Basis ``a#h`` sits at flat index ``a * dim H + h``.  The result is not
    checked for associativity here.
    """
    Hq, A = MA.H, MA.V
    dh = Hq.dim
    e = Hq.e
    phi_inv_terms = list(Hq.phi_inv.items())
    labels = [f"{a}#{h}" for a in A.labels for h in Hq.H.labels]

    def product(i, j):
        a, h = divmod(i, dh)
        a2, h2 = divmod(j, dh)
        acc: dict = {}
        for (x1, x2, x3), c in phi_inv_terms:
            left = MA.act_e(x1, a)
            for (h1, hh2), d in Hq.delta_e(h).items():
                apart = left * MA.act(e(x2) * e(h1), A.basis(a2))
                if not apart:
                    continue
                hpart = e(x3) * e(hh2) * e(h2)
                for ka, ca in apart.terms.items():
                    for kh, ch in hpart.terms.items():
                        k = ka * dh + kh
                        acc[k] = acc.get(k, 0) + c * d * ca * ch
        return acc

    unit = [x * y for x in A.unit_coords for y in Hq.H.unit_coords]
    return BasedAlgebra.from_product(labels, product, unit, A.field,
                                     name=f"{A.name or 'A'}#{Hq.H.name or 'H'}")


def smash_coaction(MA: HModule, B: Space) -> LinearMap:
    """``rho(a#h) = (x1.a # x2 h1) (x) x3 h2`` as a matrix ``B -> B (x) H``."""
    Hq, V = MA.H, MA.V
    dh = Hq.dim
    e = Hq.e
    BH = tensor(B, Hq.H)
    phi_inv_terms = list(Hq.phi_inv.items())
    cols = []
    for a in range(V.dim):
        for h in range(dh):
            acc: dict = {}
            for (x1, x2, x3), c in phi_inv_terms:
                va = MA.act_e(x1, a)
                for (h1, h2), d in Hq.delta_e(h).items():
                    left = e(x2) * e(h1)
                    right = e(x3) * e(h2)
                    for ka, ca in va.terms.items():
                        for kl, cl in left.terms.items():
                            for kr, cr in right.terms.items():
                                k = (ka * dh + kl, kr)
                                acc[k] = acc.get(k, 0) + c * d * ca * cl * cr
            cols.append(Element(BH, acc).coords)
    return LinearMap.from_columns(cols, V.field, BH.dim)


def smash_product(MA: ModuleAlgebra, verify: bool = True) -> tuple[ComoduleAlgebra, LinearMap]:
    """``A # H`` as a right comodule algebra, together with ``j(h) = 1 # h``.

    Everything built is verified (associativity, comodule-algebra axioms, j a
    comodule-algebra morphism); a failure raises :class:`VerificationError`.
    """
    Hq, A = MA.H, MA.A
    B = lulu_algebra(MA)
    dh = Hq.dim
    one_a = A.unit_terms
    j_cols = []
    for h in range(dh):
        col = [A.field.zero] * B.dim
        for a, c in one_a.items():
            col[a * dh + h] = c
        j_cols.append(col)
    j = LinearMap.from_columns(j_cols, A.field, B.dim)
    CA = ComoduleAlgebra(
        H=Hq,
        B=B,
        coaction=smash_coaction(MA, B),
        phi_rho=on_leg(Hq.phi, 0, j, B),
        phi_rho_inv=on_leg(Hq.phi_inv, 0, j, B),
    )
    if verify:
        report = VerificationReport()
        report.extend(verify_associative_unital(B))
        report.extend(verify_comodule_algebra(CA))
        report.extend(check_comodule_algebra_morphism(j, regular_comodule(Hq), CA), prefix="j:")
        if not report.ok:
            raise VerificationError("smash product failed verification", report)
    return CA, j


def verify_comodule_algebra(CA: ComoduleAlgebra) -> VerificationReport:
    Hq, B = CA.H, CA.B
    report = VerificationReport()
    one = CA.BHH.one()
    report.expect("Φ_ρ-inv", ("left",), CA.phi_rho_inv * CA.phi_rho, one)
    report.expect("Φ_ρ-inv", ("right",), CA.phi_rho * CA.phi_rho_inv, one)
    report.extend(check_algebra_morphism(CA.coaction, B, CA.BH), prefix="ρ-")
    phi_rho = CA.phi_rho
    for b in range(B.dim):
        r = CA.rho_e(b)
        report.expect("(rca1)", (b,), phi_rho * CA.rho_on(r, 0), Hq.delta_on(r, 1) * phi_rho)
    lhs = outer(B.one(), Hq.phi) * Hq.delta_on(phi_rho, 1) * outer(phi_rho, Hq.one())
    rhs = Hq.delta_on(phi_rho, 2) * CA.rho_on(phi_rho, 0)
    report.expect("(rca2)", (), lhs, rhs)
    for b in range(B.dim):
        report.expect("(rca3)", (b,), Hq.eps_on(CA.rho_e(b), 1), B.basis(b))
    one_bh = CA.BH.one()
    report.expect("(rca4)", ("id⊗ε⊗id",), Hq.eps_on(phi_rho, 1), one_bh)
    report.expect("(rca4)", ("id⊗id⊗ε",), Hq.eps_on(phi_rho, 2), one_bh)
    return report


def check_comodule_algebra_morphism(f: LinearMap, src: ComoduleAlgebra,
                                    dst: ComoduleAlgebra) -> VerificationReport:
    """Algebra map with ``rho' f = (f (x) id) rho`` and ``Φ_ρ' = (f (x) id (x) id)(Φ_ρ)``."""
    if f.shape != (dst.B.dim, src.B.dim):
        raise ValueError(f"map of shape {f.shape} does not fit {src.B.dim} -> {dst.B.dim}")
    report = check_algebra_morphism(f, src.B, dst.B)
    for b in range(src.B.dim):
        lhs = dst.rho(apply_map(f, src.B.basis(b), dst.B))
        rhs = on_leg(src.rho_e(b), 0, f, dst.B)
        report.expect("morph-ρ", (b,), lhs, rhs)
    report.expect("morph-Φ_ρ", (), on_leg(src.phi_rho, 0, f, dst.B), dst.phi_rho)
    return report


def check_module_algebra_morphism(f: LinearMap, src: ModuleAlgebra,
                                  dst: ModuleAlgebra) -> VerificationReport:
    """Multiplicative, unital and H-linear."""
    A, C = src.A, dst.A
    if f.shape != (C.dim, A.dim):
        raise ValueError(f"map of shape {f.shape} does not fit {A.dim} -> {C.dim}")
    report = VerificationReport()
    img = [apply_map(f, A.basis(i), C) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            report.expect("ma-morph-mult", (i, j), apply_map(f, A.basis(i) * A.basis(j), C),
                          img[i] * img[j])
    report.expect("ma-morph-unit", (), apply_map(f, A.one(), C), C.one())
    Hq = src.H
    for h in range(Hq.dim):
        for i in range(A.dim):
            report.expect("ma-morph-H", (h, i), apply_map(f, src.act_e(h, i), C),
                          dst.act(Hq.e(h), img[i]))
    return report


def bv_construction(B: BasedAlgebra, v: LinearMap, Hq: QuasiHopfAlgebra,
                    verify: bool = True) -> ModuleAlgebra:
    """The module algebra ``B^v`` induced by an algebra map ``v: H -> B``.

    Product ``b o b' = v(X1) b v(S(x1 X2) alpha x2 X3_1) b' v(S(x3 X3_2))``,
    unit ``v(beta)``, action ``h |> b = v(h1) b v(S(h2))``.
    """
    pre = check_algebra_morphism(v, Hq.H, B)
    if not pre.ok:
        raise PreconditionError("v is not an algebra map", pre)
    vmap = lambda h: apply_map(v, h, B)  # noqa: E731
    ve = [vmap(Hq.e(i)) for i in range(Hq.dim)]
    w_terms = [(ve[a], ve[b], ve[c], coef) for (a, b, c), coef in Hq.bv_tensor.items()]

    def product(i, j):
        bi, bj = B.basis(i), B.basis(j)
        acc = B.zero()
        for w1, w2, w3, c in w_terms:
            acc = acc + (w1 * bi * w2 * bj * w3).scale(c)
        return acc.terms

    carrier = BasedAlgebra.from_product(B.labels, product, vmap(Hq.beta).coords, B.field,
                                        name=f"{B.name or 'B'}^v")
    vS = [vmap(Hq.S_e(i)) for i in range(Hq.dim)]
    cols = []
    for h in range(Hq.dim):
        d = list(Hq.delta_e(h).items())
        for b in range(B.dim):
            acc = B.zero()
            for (h1, h2), c in d:
                acc = acc + (ve[h1] * B.basis(b) * vS[h2]).scale(c)
            cols.append(acc.coords)
    action = LinearMap.from_columns(cols, B.field, B.dim)
    MA = ModuleAlgebra(Hq, carrier, action)
    if verify:
        report = verify_module_algebra(MA)
        if not report.ok:
            raise VerificationError("B^v failed the module-algebra axioms", report)
    return MA


def i0_map(MA: ModuleAlgebra, smash: tuple[ComoduleAlgebra, LinearMap] | None = None,
           verify: bool = True) -> LinearMap:
    """``i0(a) = p1.a # p2``, checked to be an injective module-algebra map into ``(A#H)^j``."""
    Hq, A = MA.H, MA.A
    AH = tensor(A, Hq.H)
    p = Hq.pq.p_R
    cols = []
    for a in range(A.dim):
        acc = AH.zero()
        for (p1, p2), c in p.items():
            acc = acc + outer(MA.act_e(p1, a), Hq.e(p2)).scale(c)
        cols.append(acc.coords)
    i0 = LinearMap.from_columns(cols, A.field, AH.dim)
    if verify:
        CA, j = smash if smash is not None else smash_product(MA)
        target = bv_construction(CA.B, j, Hq)
        report = check_module_algebra_morphism(i0, MA, target)
        report.require("i0-injective", rank(i0) == A.dim)
        if not report.ok:
            raise VerificationError("i0 is not an injective module-algebra morphism", report)
    return i0


def lemma1_check(MA: HModule | ModuleAlgebra) -> VerificationReport:
    """Empirical witness that associativity of (lulu) forces (ma1) and (ma2).

    ``MA`` only needs a module action and a unit satisfying (ma3).  The
    report records (lulu) associativity, (ma1), (ma2) and the implication.
    """
    Hq, A = MA.H, MA.V
    report = VerificationReport()
    L = lulu_algebra(MA)
    n = L.dim
    basis = [L.basis(i) for i in range(n)]
    prods = [[basis[i] * basis[j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                report.expect("(lulu)", (i, j, k), prods[i][j] * basis[k], basis[i] * prods[j][k])
    full = verify_module_algebra(ModuleAlgebra(Hq, A, MA.action))
    for tag in ("module-unit", "module-assoc", "(ma1)", "(ma2)", "(ma3)"):
        report.declare(tag)
    for v in full.violations:
        report.violations.append(v)
    assoc = report.passed("(lulu)")
    ma1, ma2 = report.passed("(ma1)"), report.passed("(ma2)")
    report.info.update({"associative": assoc, "ma1": ma1, "ma2": ma2})
    report.require("(lulu)⇒(ma1)∧(ma2)", (not assoc) or (ma1 and ma2))
    return report


def random_invertible(n: int, field, rng: random.Random, bound: int = 3) -> LinearMap:
    while True:
        rows = [[field(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        m = LinearMap(rows, field, n)
        if rank(m) == n:
            return m


def transport_comodule_algebra(CA: ComoduleAlgebra, P: LinearMap,
                               v: LinearMap | None = None):
    """Transport ``(B, rho, Φ_ρ)`` (and optionally ``v``) along ``x -> P x``.

    Returns ``(CA', v')`` where ``P`` is an isomorphism of comodule algebras
    ``CA -> CA'``.
    """
    B, Hq = CA.B, CA.H
    Q = inverse(P)
    qs = [B.element(Q.column(i)) for i in range(B.dim)]
    labels = [f"b{i}" for i in range(B.dim)]

    def product(i, j):
        return dict(enumerate(P.apply((qs[i] * qs[j]).coords)))

    B2 = BasedAlgebra.from_product(labels, product, P.apply(B.unit_coords), B.field,
                                   name=f"{B.name or 'B'}'")
    coaction = kron(P, LinearMap.identity(Hq.dim, B.field)) @ CA.coaction @ Q
    CA2 = ComoduleAlgebra(H=Hq, B=B2, coaction=coaction,
                          phi_rho=on_leg(CA.phi_rho, 0, P, B2),
                          phi_rho_inv=on_leg(CA.phi_rho_inv, 0, P, B2))
    return CA2, (P @ v if v is not None else None)
