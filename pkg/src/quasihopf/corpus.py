"""Built-in corpus: small quasi-Hopf algebras, perturbed fixtures and module algebras.

The data files shipped under ``corpus/`` are serializations of these
builders (see :func:`write_corpus`); tests compare the two.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import BasedAlgebra, outer, tensor
from .fields import QQ, Field
from .linalg import LinearMap
from .quasi_hopf import QuasiHopfAlgebra
from .representations import ModuleAlgebra, bv_construction

CORPUS_DIR = Path(__file__).parent / "corpus"


def _matrix_from_images(images, field, dst_dim):
    return LinearMap.from_columns(images, field, dst_dim)


def _trivial_phi(H: BasedAlgebra):
    one = H.one()
    return outer(one, one, one)


def ground_field(field: Field = QQ) -> QuasiHopfAlgebra:
    """``k`` itself, dimension one."""
    H = BasedAlgebra(["1"], {(0, 0): {0: 1}}, [1], field, name="k")
    return QuasiHopfAlgebra(
        H=H,
        comul=LinearMap([[1]], field),
        counit=LinearMap([[1]], field),
        phi=_trivial_phi(H),
        antipode=LinearMap([[1]], field),
        alpha=H.one(),
        beta=H.one(),
    )


def cyclic_group_algebra(n: int, field: Field = QQ) -> QuasiHopfAlgebra:
    """``k[Z/n]`` with grouplike coproduct and trivial reassociator."""
    labels = ["1"] + ["g" if i == 1 else f"g{i}" for i in range(1, n)]
    H = BasedAlgebra.from_triples(labels, [(i, j, (i + j) % n, 1) for i in range(n)
                                           for j in range(n)],
                                  [1] + [0] * (n - 1), field, name=f"k[Z/{n}]")
    return _group_like(H, n, field, lambda i: (-i) % n)


def _group_like(H, n, field, inv):
    zero, one = field.zero, field.one
    comul_cols = [[one if r == i * n + i else zero for r in range(n * n)] for i in range(n)]
    return QuasiHopfAlgebra(
        H=H,
        comul=LinearMap.from_columns(comul_cols, field, n * n),
        counit=LinearMap([[1] * n], field),
        phi=_trivial_phi(H),
        antipode=LinearMap.from_columns(
            [[one if r == inv(i) else zero for r in range(n)] for i in range(n)], field, n),
        alpha=H.one(),
        beta=H.one(),
    )


def h2(field: Field = QQ, phi_coefficient=-2, alpha_is_g: bool = True) -> QuasiHopfAlgebra:
    """``k[Z/2]`` with ``Φ = 1⊗1⊗1 + c p⊗p⊗p``, ``p = (1-g)/2``, ``S = id``, ``β = 1``.

    ``c = -2`` and ``α = g`` give the genuinely quasi-Hopf algebra H(2); the
    keyword arguments exist to build perturbed fixtures.
    """
    base = cyclic_group_algebra(2, field)
    H = BasedAlgebra.from_triples(["1", "g"], base.H.triples(), [1, 0], field, name="H(2)")
    half = field(1) / field(2)
    p = H.element([half, -half])
    one = H.one()
    phi = outer(one, one, one) + outer(p, p, p).scale(phi_coefficient)
    comul = base.comul
    return QuasiHopfAlgebra(
        H=H,
        comul=comul,
        counit=base.counit,
        phi=phi,
        antipode=LinearMap.identity(2, field),
        alpha=H.basis(1) if alpha_is_g else H.one(),
        beta=H.one(),
    )


def sweedler(field: Field = QQ) -> QuasiHopfAlgebra:
    """Sweedler's four-dimensional Hopf algebra, basis ``1, g, x, gx``."""
    # g^2 = 1, x^2 = 0, xg = -gx
    labels = ["1", "g", "x", "gx"]
    mono = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)}  # e = g^a x^b
    index = {v: k for k, v in mono.items()}
    triples = []
    for i, (a, b) in mono.items():
        for j, (c, d) in mono.items():
            if b + d > 1:
                continue
            sign = -1 if (b == 1 and c == 1) else 1  # x g^c = (-1)^c g^c x
            triples.append((i, j, index[((a + c) % 2, b + d)], sign))
    H = BasedAlgebra.from_triples(labels, triples, [1, 0, 0, 0], field, name="H4")
    n = 4
    H2 = tensor(H, H)
    e = H.basis
    g, x, gx = e(1), e(2), e(3)
    d1 = outer(e(0), e(0))
    dg = outer(g, g)
    dx = outer(x, e(0)) + outer(g, x)
    dgx = dg * dx
    comul = LinearMap.from_columns([d.coords for d in (d1, dg, dx, dgx)], field, H2.dim)
    S_images = [e(0), g, -gx, x]
    antipode = LinearMap.from_columns([s.coords for s in S_images], field, n)
    return QuasiHopfAlgebra(
        H=H,
        comul=comul,
        counit=LinearMap([[1, 1, 0, 0]], field),
        phi=_trivial_phi(H),
        antipode=antipode,
        alpha=H.one(),
        beta=H.one(),
    )


def trivial_module_algebra(Hq: QuasiHopfAlgebra) -> ModuleAlgebra:
    """``A = k`` with ``h . 1 = eps(h) 1``."""
    field = Hq.field
    A = BasedAlgebra(["1"], {(0, 0): {0: 1}}, [1], field, name="k")
    action = LinearMap([list(Hq.counit.rows[0])], field, Hq.dim)
    return ModuleAlgebra(Hq, A, action)


def regular_module_algebra(Hq: QuasiHopfAlgebra) -> ModuleAlgebra:
    """``H^{id}``: the B^v construction with ``B = H`` and ``v = id``."""
    MA = bv_construction(Hq.H, LinearMap.identity(Hq.dim, Hq.field), Hq)
    MA.A.name = f"{Hq.H.name}^id"
    return MA


QUASI_HOPF = {
    "k": ground_field,
    "z2": lambda field=QQ: cyclic_group_algebra(2, field),
    "z4": lambda field=QQ: cyclic_group_algebra(4, field),
    "sweedler": sweedler,
    "h2": h2,
}

HOPF_NAMES = ("k", "z2", "z4", "sweedler")


def perturbed_fixtures(field: Field = QQ) -> dict[str, tuple[QuasiHopfAlgebra, str]]:
    """Single-coefficient perturbations and the axiom each one must violate."""
    z4 = cyclic_group_algebra(4, field)
    # g*g = g2 becomes g2 + g: breaks associativity
    triples = [(i, j, k, c) for i, j, k, c in z4.H.triples()]
    triples.append((1, 1, 1, 1))
    bad_z4 = BasedAlgebra.from_triples(z4.H.labels, triples, z4.H.unit_coords, field,
                                       name="k[Z/4]'")
    phi = outer(bad_z4.one(), bad_z4.one(), bad_z4.one())
    z4_bad = QuasiHopfAlgebra(H=bad_z4, comul=z4.comul, counit=z4.counit, phi=phi,
                              antipode=z4.antipode, alpha=bad_z4.one(), beta=bad_z4.one())

    sw = sweedler(field)
    counit = LinearMap([[1, 1, 1, 0]], field)
    sw_bad = QuasiHopfAlgebra(H=sw.H, comul=sw.comul, counit=counit, phi=sw.phi,
                              antipode=sw.antipode, alpha=sw.alpha, beta=sw.beta)
    return {
        "h2_bad_pentagon": (h2(field, phi_coefficient=-3), "(q3)"),
        "h2_bad_alpha": (h2(field, alpha_is_g=False), "(q6)"),
        "z4_bad_assoc": (z4_bad, "assoc"),
        "sweedler_bad_counit": (sw_bad, "ε-morph-mult"),
    }


def write_corpus(directory: Path = CORPUS_DIR, field: Field = QQ) -> list[Path]:
    """Serialize every corpus entry to ``directory``."""
    from .fileformat import dump_module_algebra, dump_quasi_hopf, write_document

    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, build in QUASI_HOPF.items():
        Hq = build(field)
        written.append(write_document(dump_quasi_hopf(Hq), directory / f"{name}.qha"))
        written.append(write_document(dump_module_algebra(trivial_module_algebra(Hq)),
                                      directory / f"{name}_triv.ma"))
        written.append(write_document(dump_module_algebra(regular_module_algebra(Hq)),
                                      directory / f"{name}_id.ma"))
    for name, (Hq, _) in perturbed_fixtures(field).items():
        written.append(write_document(dump_quasi_hopf(Hq), directory / f"{name}.qha"))
    # schema violation: an undeclared payload field
    bad = dump_quasi_hopf(h2(field))
    bad["payload"]["comment"] = "unknown fields are rejected"
    written.append(write_document(bad, directory / "malformed.qha"))
    return written
