import random

import pytest

from cached import NAMES, PAIRS, algebra, decomposition, module_algebra, smash
from quasihopf.algebra import outer
from quasihopf.corpus import HOPF_NAMES
from quasihopf.fields import GF, QQ
from quasihopf.linalg import LinearMap, kron, rank
from quasihopf.report import PreconditionError, VerificationError
from quasihopf.representations import (HModule, i0_map, random_invertible, regular_comodule,
                                       transport_comodule_algebra)
from quasihopf.structure_theorem import (bimodule_from_comodule, bimodule_structure_iso,
                                         coinvariants, decompose, projection_E,
                                         recovery_isomorphism, roundtrip, star_multiply,
                                         verify_bimodule, verify_E_properties, vh_bimodule)

E_PROPERTIES = (
    "E²=E",
    "E(m·h)=E(m)ε(h)",
    "h▷E(m)=E(h·m)",
    "h·E(m)=(h₁▷E(m))·h₂",
    "(hh')▷m=h▷(h'▷m)",
    "E(m₀)·m₁=m",
    "E(E(m)₀)⊗E(m)₁=E(m)⊗1",
)
CHARACTERIZATIONS = (
    "co: E(M)={n | E(n)=n}",
    "co: E(M)={n | E(n₀)⊗n₁=E(n)⊗1}",
    "co: E(M)={n | ρ(n)=(x¹▷n)·x²⊗x³}",
)


def corpus_bimodules():
    """(id, bimodule) for V⊗H, A#H along j, and H along id."""
    out = []
    for name, kind in PAIRS:
        out.append((f"{name}-{kind}-VH", lambda n=name, k=kind: vh_bimodule(module_algebra(n, k))))
        out.append((f"{name}-{kind}-smash",
                    lambda n=name, k=kind: bimodule_from_comodule(*smash(n, k))))
    for name in NAMES:
        out.append((f"{name}-regular", lambda n=name: bimodule_from_comodule(
            regular_comodule(algebra(n)), LinearMap.identity(algebra(n).dim, QQ))))
    return out


BIMODULES = corpus_bimodules()


@pytest.mark.parametrize("build", [b for _, b in BIMODULES], ids=[i for i, _ in BIMODULES])
def test_E_properties_on_corpus_bimodules(build):
    M = build()
    assert verify_bimodule(M).ok
    E = projection_E(M)
    report = verify_E_properties(M, E)
    assert report.ok
    assert set(E_PROPERTIES + CHARACTERIZATIONS) <= set(report.checked)


@pytest.mark.parametrize("build", [b for _, b in BIMODULES], ids=[i for i, _ in BIMODULES])
def test_nu_is_a_bimodule_isomorphism(build):
    M = build()
    dec = bimodule_structure_iso(M)
    assert dec.report.ok
    assert dec.nu @ dec.nu_inv == LinearMap.identity(M.M.dim, QQ)


def test_identity_in_place_of_E_breaks_coinvariance():
    M = bimodule_from_comodule(*smash("h2", "id"))
    report = verify_E_properties(M, LinearMap.identity(M.M.dim, QQ))
    assert "E(E(m)₀)⊗E(m)₁=E(m)⊗1" in report.failed_axioms


@pytest.mark.parametrize("name, kind", PAIRS)
def test_E_on_smash_product(name, kind):
    CA, j = smash(name, kind)
    Hq, A = algebra(name), module_algebra(name, kind).A
    M = bimodule_from_comodule(CA, j)
    E = projection_E(M)
    assert E.apply(CA.B.unit_coords) == CA.B.unit_coords
    for a in range(A.dim):
        a1 = outer(A.basis(a), Hq.one()).coords
        for h in range(Hq.dim):
            assert E.column(a * Hq.dim + h) == tuple(c * Hq.eps_e(h) for c in a1)


@pytest.mark.parametrize("name, kind", PAIRS)
def test_decomposition_of_smash_product(name, kind):
    A0 = module_algebra(name, kind)
    CA, j = smash(name, kind)
    D = decomposition(name, kind)
    assert D.report.ok
    assert D.A.A.dim == A0.A.dim
    ident_B = LinearMap.identity(CA.B.dim, QQ)
    assert D.Psi @ D.Psi_inv == ident_B and D.Psi_inv @ D.Psi == ident_B
    ident_H = LinearMap.identity(algebra(name).dim, QQ)
    assert CA.coaction @ D.Psi == kron(D.Psi, ident_H) @ D.smash.coaction
    assert D.Psi @ D.j == j
    iso, rec = recovery_isomorphism(D, A0)
    assert rec.ok and rank(iso) == A0.A.dim


@pytest.mark.parametrize("name, kind", PAIRS)
def test_theta(name, kind):
    D = decomposition(name, kind)
    i0 = i0_map(D.A, smash=(D.smash, D.j), verify=False)
    assert D.theta == D.Psi @ i0
    assert rank(D.theta) == D.A.A.dim
    if name in HOPF_NAMES:
        assert D.theta == D.coinvariants.inclusion


@pytest.mark.parametrize("name, kind", PAIRS)
def test_star_product_agrees_with_expanded_formula(name, kind):
    CA, j = smash(name, kind)
    D = decomposition(name, kind)
    M, E = D.bimodule, D.E
    basis = D.coinvariants.basis
    for a in basis:
        for a2 in basis:
            assert star_multiply(M, E, a, a2) == E.apply((M.vec(a) * M.vec(a2)).coords)


def test_star_multiply_rejects_non_coinvariants():
    D = decomposition("h2", "id")
    x = [0] * D.bimodule.M.dim
    x[1] = 1  # 1#g is not coinvariant
    with pytest.raises(ValueError):
        star_multiply(D.bimodule, D.E, x, D.coinvariants.basis[0])


@pytest.mark.parametrize("name, kind", PAIRS)
def test_roundtrip(name, kind):
    report = roundtrip(module_algebra(name, kind))
    assert report.ok, report.summary()
    assert report.info["dim_A"] == module_algebra(name, kind).A.dim


@pytest.mark.parametrize("name", NAMES)
def test_regular_comodule_has_one_dimensional_coinvariants(name):
    Hq = algebra(name)
    ident = LinearMap.identity(Hq.dim, QQ)
    D = decompose(regular_comodule(Hq), ident)
    assert D.A.A.dim == 1
    if name in HOPF_NAMES:
        assert D.theta == D.coinvariants.inclusion


def test_v_violating_phi_rho_compatibility_is_a_precondition_failure():
    # g -> -g respects products and the coaction of H(2) but not Φ_ρ
    CA, _ = smash("h2", "triv")
    v = LinearMap([[1, 0], [0, -1]], QQ)
    with pytest.raises(PreconditionError) as info:
        decompose(CA, v)
    assert info.value.report.failed_axioms == ["morph-Φ_ρ"]


def test_v_that_is_not_multiplicative_is_rejected():
    CA, _ = smash("z2", "triv")
    with pytest.raises(PreconditionError) as info:
        decompose(CA, LinearMap([[1, 0], [0, 2]], QQ))
    assert "morph-mult" in info.value.report.failed_axioms


def test_vh_rejects_a_non_module():
    V = module_algebra("z2", "id")
    broken = HModule(V.H, V.A, V.action.scale(QQ(2)))
    with pytest.raises(VerificationError):
        vh_bimodule(broken)


@pytest.mark.parametrize("field", [QQ, GF(7)], ids=["rational", "gf7"])
@pytest.mark.parametrize("seed", [0, 1])
def test_transported_smash_product_decomposes(field, seed):
    CA, j = smash("h2", "id", field)
    P = random_invertible(CA.B.dim, field, random.Random(seed))
    CA2, v2 = transport_comodule_algebra(CA, P, j)
    D = decompose(CA2, v2)
    assert D.A.A.dim == 2
    assert D.Psi @ D.j == v2


def test_coinvariants_of_vh_are_v_tensor_one():
    V = module_algebra("sweedler", "triv")
    M = vh_bimodule(V)
    co = coinvariants(M, projection_E(M))
    assert co.dim == V.A.dim
