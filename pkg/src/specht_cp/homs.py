"""Graded Hom spaces between Specht modules, Carter-Payne constructors,
and certificate verification.

A homomorphism S^lambda<d> -> S^mu is the same thing as a vector in the
(deg t^lambda + d, i^lambda) component of S^mu killed by every defining
relation of S^lambda: all dots, the same-row crossings of the initial
tableau, and one Garnir element per Garnir node.  The solver stacks the
action matrices of those relations and takes an exact nullspace.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .combinatorics import (
    CpPair,
    Multipartition,
    Node,
    NotAPair,
    StandardTableau,
    degree,
    detect_cp_pair,
    initial_tableau,
    residue,
    target_tableau,
)
from .klrcore import tableau_permutation, canon_word
from .rings import Integers, PrimeField, Rationals, ring_from_name
from .specht import SpechtElement, SpechtModule, garnir_tableau


class NotACarterPaynePair(ValueError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# ---------------------------------------------------------------------------
# relation generators of the lambda-presentation


@dataclass(frozen=True)
class DotRel:
    r: int


@dataclass(frozen=True)
class RowPsi:
    r: int


@dataclass(frozen=True)
class GarnirRel:
    node: Node


@dataclass(frozen=True)
class ResidueIdem:
    pass


def relation_generators(lam: Multipartition, e, kappa) -> list:
    """The complete defining set for the cyclic presentation of S^lambda."""
    gens = [DotRel(r) for r in range(1, lam.n + 1)]
    tlam = initial_tableau(lam)
    k = 0
    for comp in lam.components:
        for length in comp:
            gens.extend(RowPsi(j) for j in range(k + 1, k + length))
            k += length
    for m, comp in enumerate(lam.components, start=1):
        for r in range(1, len(comp)):
            for c in range(1, comp[r] + 1):
                gens.append(GarnirRel(Node(m, r, c)))
    gens.append(ResidueIdem())
    return gens


def garnir_relation_words(lam_module: SpechtModule, node: Node) -> list:
    """The Garnir relation at a node as (coefficient, word) pairs in R_n."""
    g = garnir_tableau(lam_module.lam, node)
    w_g = canon_word(tableau_permutation(g))
    out = [(1, w_g)]
    for s, c in lam_module.garnir_expansion(node).items():
        out.append((-c, lam_module.tableau_word(s)))
    return out


def apply_relation(target: SpechtModule, v: SpechtElement, rel, lam_module: SpechtModule):
    """Act a lambda-relation generator on an element of the target module."""
    from .klrcore import Dot, Psi

    if isinstance(rel, DotRel):
        return target.act(v, Dot(rel.r))
    if isinstance(rel, RowPsi):
        return target.act(v, Psi(rel.r))
    if isinstance(rel, GarnirRel):
        ring = target.ring
        total = SpechtElement(target, {})
        for coeff, word in garnir_relation_words(lam_module, rel.node):
            total = total + target.act_word(v, word).scale(ring.coerce(coeff))
        return total
    if isinstance(rel, ResidueIdem):
        iseq = lam_module.i_lambda
        kept = {t: c for t, c in v.terms.items() if target.tableau_residues(t) != iseq}
        return SpechtElement(target, kept)  # must vanish: non-i-lambda part
    raise TypeError(f"unknown relation generator {rel!r}")


# ---------------------------------------------------------------------------
# exact nullspaces


def bareiss_nullspace(rows: list, ncols: int) -> list:
    """Nullspace basis over the rationals via fraction-free elimination.

    rows: integer coefficient rows.  Returns primitive integer vectors with
    positive leading entry, pivoting on the first nonzero column in order.
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    pivots = []
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pivval = mat[rank][col]
        for i in range(rank + 1, len(mat)):
            head = mat[i][col]
            new_row = []
            for j in range(ncols):
                num = pivval * mat[i][j] - head * mat[rank][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("Bareiss exact division failed")
                new_row.append(q)
            mat[i] = new_row
        prev = pivval
        pivots.append(col)
        rank += 1
    basis = []
    free_cols = [c for c in range(ncols) if c not in pivots]
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            col = pivots[i]
            s = sum(Fraction(mat[i][j]) * vec[j] for j in range(col + 1, ncols) if mat[i][j])
            vec[col] = -s / mat[i][col]
        lcm = 1
        for x in vec:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        ints = [int(x * lcm) for x in vec]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        lead = next(x for x in ints if x != 0)
        if lead < 0:
            ints = [-x for x in ints]
        basis.append(ints)
    return basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def modp_nullspace(rows: list, ncols: int, p: int) -> list:
    mat = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        vec = [0] * ncols
        vec[f] = 1
        for i, col in enumerate(pivots):
            vec[col] = (-mat[i][f]) % p
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# hom spaces


def hom_space(lam: Multipartition, mu: Multipartition, d: int, e, kappa, ring=None) -> list:
    """Basis of homomorphisms S^lambda<d> -> S^mu, as their generator images."""
    ring = ring or Rationals()
    if lam.n != mu.n:
        raise ValueError("|lambda| must equal |mu|")
    lam_mod = SpechtModule(lam, e, kappa, Rationals())
    mu_mod = SpechtModule(mu, e, kappa, ring)
    target_deg = lam_mod.tableau_degree(lam_mod.tlam) + d
    component = mu_mod.graded_component(target_deg, lam_mod.i_lambda)
    if not component:
        return []
    col_index = {t: i for i, t in enumerate(component)}
    rows = []
    gens = [g for g in relation_generators(lam, e, kappa) if not isinstance(g, ResidueIdem)]
    images = []
    for t in component:
        v = mu_mod.element({t: 1})
        images.append([apply_relation(mu_mod, v, g, lam_mod) for g in gens])
    for gi in range(len(gens)):
        out_keys = {}
        for ci, img in enumerate(images):
            for s, c in img[gi].terms.items():
                out_keys.setdefault(s, {})[ci] = c
        for s in sorted(out_keys, key=lambda x: x.row_reading_word()):
            coeffs = out_keys[s]
            if isinstance(ring, PrimeField):
                rows.append([int(coeffs.get(ci, 0)) for ci in range(len(component))])
            else:
                rows.append([int(Fraction(coeffs.get(ci, 0))) for ci in range(len(component))])
    if isinstance(ring, PrimeField):
        vecs = modp_nullspace(rows, len(component), ring.p)
    else:
        vecs = bareiss_nullspace(rows, len(component))
    out = []
    for vec in vecs:
        terms = {t: ring.coerce(vec[i]) for t, i in col_index.items() if vec[i]}
        out.append(SpechtElement(mu_mod, terms))
    return out


# ---------------------------------------------------------------------------
# certificates


@dataclass
class HomCertificate:
    lam: Multipartition
    mu: Multipartition
    e: Optional[int]
    kappa: tuple
    ring: object
    degree: int
    image: SpechtElement
    verified: bool = False
    degenerate: bool = False
    provenance: str = "CarterPayne"

    def to_json(self):
        return {
            "lambda": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "e": self.e,
            "kappa": list(self.kappa),
            "ring": self.ring.name,
            "degree": self.degree,
            "image": self.image.to_json(),
            "verified": self.verified,
            "degenerate": self.degenerate,
            "provenance": self.provenance,
        }

    @staticmethod
    def from_json(data) -> "HomCertificate":
        lam = Multipartition.from_json(data["lambda"])
        mu = Multipartition.from_json(data["mu"])
        ring = ring_from_name(data["ring"])
        e = data["e"]
        kappa = tuple(data["kappa"])
        mu_mod = SpechtModule(mu, e, kappa, ring)
        terms = {}
        for tj, cstr in data["image"]["terms"]:
            t = StandardTableau.from_json(tj)
            cstr = str(cstr)
            if "mod" in cstr:
                terms[t] = ring.coerce(int(cstr.split("mod")[0]))
            else:
                terms[t] = ring.coerce(Fraction(cstr))
        image = SpechtElement(mu_mod, terms)
        return HomCertificate(
            lam=lam, mu=mu, e=e, kappa=kappa, ring=ring,
            degree=data["degree"], image=image,
            verified=data["verified"], degenerate=data["degenerate"],
            provenance=data["provenance"],
        )


def carter_payne(lam: Multipartition, mu: Multipartition, e, kappa, ring=None) -> HomCertificate:
    """The Carter-Payne homomorphism certificate for a detected pair."""
    ring = ring or Rationals()
    pair = detect_cp_pair(lam, mu, e, kappa)
    if isinstance(pair, NotAPair):
        raise NotACarterPaynePair(pair.reason)
    t_target = target_tableau(pair)
    mu_mod = SpechtModule(mu, pair.e, pair.kappa, ring)
    image = mu_mod.element({t_target: 1})
    return HomCertificate(
        lam=lam, mu=mu, e=pair.e, kappa=pair.kappa, ring=ring,
        degree=pair.degree, image=image, provenance="CarterPayne",
    )


def verify(cert: HomCertificate) -> bool:
    """Recheck the certificate directly against the lambda-presentation."""
    lam_mod = SpechtModule(cert.lam, cert.e, cert.kappa, Rationals())
    mu_mod = cert.image.module
    cert.degenerate = cert.image.is_zero()
    if cert.degenerate:
        cert.verified = True
        return True
    expected_deg = lam_mod.tableau_degree(lam_mod.tlam) + cert.degree
    if cert.image.degrees() != {expected_deg}:
        cert.verified = False
        return False
    if cert.image.residue_sequences() != {lam_mod.i_lambda}:
        cert.verified = False
        return False
    for rel in relation_generators(cert.lam, cert.e, cert.kappa):
        if not apply_relation(mu_mod, cert.image, rel, lam_mod).is_zero():
            cert.verified = False
            return False
    cert.verified = True
    return True


# ---------------------------------------------------------------------------
# change-of-rings experiment


@dataclass
class DegenerationReport:
    lam: Multipartition
    mu: Multipartition
    r: int
    a: int
    char0_dims: dict   # degree -> dim over QQ at e = r^a
    charp_dims: dict   # degree -> dim over GF(r) at e = r
    conclusion_holds: bool

    def nonzero_char0(self) -> bool:
        return any(self.char0_dims.values())

    def nonzero_charp(self) -> bool:
        return any(self.charp_dims.values())

    def to_json(self):
        return {
            "lambda": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "r": self.r,
            "a": self.a,
            "char0_dims": {str(k): v for k, v in self.char0_dims.items()},
            "charp_dims": {str(k): v for k, v in self.charp_dims.items()},
            "conclusion_holds": self.conclusion_holds,
        }


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _hom_dims_across_degrees(lam, mu, e, kappa, ring) -> dict:
    lam_mod = SpechtModule(lam, e, kappa, Rationals())
    mu_mod = SpechtModule(mu, e, kappa, Rationals())
    base = lam_mod.tableau_degree(lam_mod.tlam)
    degs = set()
    from .combinatorics import std_tableaux

    for t in std_tableaux(mu, lam_mod.e, lam_mod.kappa, residue_seq=lam_mod.i_lambda):
        degs.add(mu_mod.tableau_degree(t) - base)
    out = {}
    for d in sorted(degs):
        out[d] = len(hom_space(lam, mu, d, e, kappa, ring))
    return out


def degeneration_check(lam: Multipartition, mu: Multipartition, r: int, a: int,
                       kappa=None) -> DegenerationReport:
    """Compare Hom spaces at (char 0, e = r^a) and (char r, e = r).

    The change-of-rings conclusion transports nonzero Hom from the first
    setting to the second; degrees need not match unless a = 1.
    """
    if not _is_prime(r):
        raise ValueError(f"{r} is not prime")
    if a < 1:
        raise ValueError("a must be >= 1")
    kappa = kappa or (0,) * lam.level
    e_hi = r ** a
    char0 = _hom_dims_across_degrees(lam, mu, e_hi, kappa, Rationals())
    charp = _hom_dims_across_degrees(lam, mu, r, kappa, PrimeField(r))
    holds = (not any(char0.values())) or any(charp.values())
    return DegenerationReport(lam, mu, r, a, char0, charp, holds)
