"""Ext^1 computed from a free presentation, and the Baer sum on extensions.

The classifier lifts a free presentation ``K -> Z^n -> B`` through an
extension and reads off a hom ``K -> A``; its class modulo restrictions of
homs ``Z^n -> A`` is the coordinate of the extension in Ext^1(B, A).  This
route is independent of the pullback/pushout constructions, which makes it
usable as an oracle for them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .abelian import (
    AbGroup,
    Congruence,
    FreePresentation,
    GroupElement,
    Hom,
    HomGroup,
    ValidationError,
    codiagonal,
    diagonal,
    element_coords,
    factor_through_mono,
    free_presentation,
    hom_group,
    hom_identity,
    hom_neg,
    lift_through_epi,
    presentation_cokernel,
    solve_hom,
)
from .linalg import DimensionError, IntMatrix, hstack, lattice_basis, vstack
from .pullpush import direct_sum, pullback_ses, pushout_ses
from .ses import SES, PathData, path_data_from_map, trivial_ses


class TorsionBaseError(ValidationError):
    """Splitting over a base that is not free."""


@dataclass(frozen=True, eq=False)
class ExtGroup:
    """Ext^1(B, A) presented as ``Hom(K, A) / restrictions of Hom(Z^n, A)``."""

    B: AbGroup
    A: AbGroup
    fp: FreePresentation
    hom_K: HomGroup
    group: AbGroup
    gen_extensions: tuple[SES, ...] = field(repr=False)

    @property
    def invariants(self):
        return self.group.invariants

    def __str__(self) -> str:
        return str(self.group)

    def element(self, coords: Sequence[int]) -> "ExtClass":
        coords = tuple(coords)
        rep = self.hom_K.hom(coords)
        return ExtClass(self, GroupElement(self.group, coords), rep)

    def zero(self) -> "ExtClass":
        return self.element([0] * self.group.gens)

    def generators(self) -> list["ExtClass"]:
        return [self.element(c) for c in IntMatrix.identity(self.group.gens).columns()]

    def elements(self):
        for v in self.group.elements():
            yield self.element(v)

    def classify(self, E: SES, rng: random.Random | None = None) -> "ExtClass":
        return classify(E, self, rng=rng)


@dataclass(frozen=True, eq=False)
class ExtClass:
    ext: ExtGroup
    coords: GroupElement
    rep: Hom  # K -> A

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtClass):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: "ExtClass") -> "ExtClass":
        return self.ext.element((self.coords + other.coords).coords)

    def __neg__(self) -> "ExtClass":
        return self.ext.element((-self.coords).coords)

    def __sub__(self, other: "ExtClass") -> "ExtClass":
        return self + (-other)

    def is_zero(self) -> bool:
        return self.coords.is_zero()

    @property
    def vector(self) -> list[int]:
        return list(self.coords.coords)

    def canonical(self) -> tuple[int, ...]:
        return self.ext.group.canonical(self.coords.coords)

    def __repr__(self) -> str:
        return f"ExtClass({list(self.canonical())} in {self.ext.group})"


def _restriction_image(fp: FreePresentation, A: AbGroup, HK: HomGroup) -> IntMatrix:
    # coordinates of psi o (K -> Z^n) for the unit homs psi: Z^n -> A
    cols = []
    for i in range(A.gens):
        for j in range(fp.n):
            psi = [[int(r == i and c == j) for c in range(fp.n)] for r in range(A.gens)]
            res = Hom.unverified(fp.K, A, IntMatrix(psi, cols=fp.n) @ fp.kernel_incl)
            cols.append(element_coords(HK, res))
    return IntMatrix.from_columns(cols, HK.base.gens) if cols else IntMatrix.zeros(HK.base.gens, 0)


def ext_group(B: AbGroup, A: AbGroup, fp: FreePresentation | None = None) -> ExtGroup:
    fp = fp or free_presentation(B)
    HK = hom_group(fp.K, A)
    Q = presentation_cokernel(HK.base, _restriction_image(fp, A, HK))
    shell = ExtGroup(B, A, fp, HK, Q, ())
    gens = tuple(extension_from_class(c) for c in shell.generators())
    return ExtGroup(B, A, fp, HK, Q, gens)


def classify(E: SES, ext: ExtGroup, rng: random.Random | None = None) -> ExtClass:
    """Coordinates of ``E`` in ``ext``.

    ``rng`` perturbs the lift of the free generators by random elements of
    the kernel of the projection; the result must not change.
    """
    fp = ext.fp
    if E.right != fp.target or E.left != ext.A:
        raise DimensionError("extension does not live over the groups of this Ext group")
    lam = lift_through_epi(E.projection, fp.proj)
    if lam is None:  # pragma: no cover - free source always lifts
        raise ValidationError("could not lift the free presentation")
    lam_mat = lam.mat
    if rng is not None:
        noise = IntMatrix(
            [[rng.randint(-3, 3) for _ in range(fp.n)] for _ in range(E.left.gens)], cols=fp.n
        )
        rel_noise = IntMatrix(
            [[rng.randint(-3, 3) for _ in range(fp.n)] for _ in range(E.middle.rel_basis.cols)], cols=fp.n
        )
        lam_mat = lam_mat + E.inclusion.mat @ noise + E.middle.rel_basis @ rel_noise
    restricted = Hom.unverified(fp.K, E.middle, lam_mat @ fp.kernel_incl)
    rep = factor_through_mono(E.inclusion, restricted)
    coords = element_coords(ext.hom_K, rep)
    return ExtClass(ext, GroupElement(ext.group, tuple(coords)), rep)


def extension_from_class(c: ExtClass) -> SES:
    """Pushout of the free presentation along the representative ``K -> A``."""
    ext, rep = c.ext, c.rep
    fp, A = ext.fp, ext.A
    a, n = A.gens, fp.n
    twisted = vstack(-rep.mat, fp.kernel_incl)
    rels = hstack(vstack(A.rels, IntMatrix.zeros(n, A.rels.cols)), twisted)
    M = AbGroup(a + n, lattice_basis(rels))
    I = IntMatrix.identity(a + n)
    incl = Hom(A, M, I.select_columns(range(a)))
    proj = Hom(M, ext.B, hstack(IntMatrix.zeros(ext.B.gens, a), fp.proj.mat))
    return SES(A, M, ext.B, incl, proj)


# ---------------------------------------------------------------------------
# Baer sum


def baer_sum(E: SES, F: SES) -> SES:
    """``Delta^* nabla_* (E + F)``."""
    if E.left != F.left or E.right != F.right:
        raise DimensionError("Baer sum of extensions with different end groups")
    S = direct_sum(E, F)
    return pullback_ses(diagonal(E.right), pushout_ses(codiagonal(E.left), S))


def baer_inverse(E: SES) -> SES:
    """Pullback along ``-1`` on the base."""
    return pullback_ses(hom_neg(hom_identity(E.right)), E)


def baer_inverse_pushout(E: SES) -> SES:
    """Pushout along ``-1`` on the fibre; equivalent to :func:`baer_inverse`."""
    return pushout_ses(hom_neg(hom_identity(E.left)), E)


# ---------------------------------------------------------------------------
# Induced maps


def _induced(src: ExtGroup, tgt: ExtGroup, transport) -> Hom:
    cols = [classify(transport(S), tgt).vector for S in src.gen_extensions]
    return Hom(src.group, tgt.group, IntMatrix.from_columns(cols, tgt.group.gens))


def ext_pullback(g: Hom, A: AbGroup, src: ExtGroup | None = None, tgt: ExtGroup | None = None) -> Hom:
    """``g^*: Ext^1(B, A) -> Ext^1(B', A)`` for ``g: B' -> B``."""
    src = src or ext_group(g.tgt, A)
    tgt = tgt or ext_group(g.src, A)
    return _induced(src, tgt, lambda S: pullback_ses(g, S))


def ext_pushout(f: Hom, B: AbGroup, src: ExtGroup | None = None, tgt: ExtGroup | None = None) -> Hom:
    """``f_*: Ext^1(B, A) -> Ext^1(B, A')`` for ``f: A -> A'``."""
    src = src or ext_group(B, f.src)
    tgt = tgt or ext_group(B, f.tgt)
    return _induced(src, tgt, lambda S: pushout_ses(f, S))


def apply_to_class(h: Hom, c: ExtClass, tgt: ExtGroup) -> ExtClass:
    return tgt.element(h(c.vector))


# ---------------------------------------------------------------------------
# Splitting over free bases


def section(E: SES) -> Hom | None:
    """A hom ``s`` with ``projection o s == id``, if one exists."""
    B = E.right
    return solve_hom(
        B,
        E.middle,
        [Congruence(E.projection.mat, IntMatrix.identity(B.gens), IntMatrix.identity(B.gens), B.rel_basis)],
    )


def split_over_free(E: SES) -> PathData:
    """Path data ``E == trivial_ses`` when the base is free."""
    if E.right.torsion:
        raise TorsionBaseError(f"base {E.right} has torsion")
    s = section(E)
    if s is None:  # pragma: no cover - free groups are projective
        raise ValidationError("no section over a free base")
    triv = trivial_ses(E.right, E.left)
    psi = Hom(triv.middle, E.middle, hstack(E.inclusion.mat, s.mat))
    return path_data_from_map(triv, E, psi).reverse()


def split_witness(E: SES) -> PathData | None:
    """Path data to the trivial extension from any section, or ``None`` if ``E`` does not split."""
    s = section(E)
    if s is None:
        return None
    triv = trivial_ses(E.right, E.left)
    psi = Hom(triv.middle, E.middle, hstack(E.inclusion.mat, s.mat))
    return path_data_from_map(triv, E, psi).reverse()


def is_projective(P: AbGroup) -> bool:
    """Finitely generated groups are projective exactly when torsion-free."""
    return not P.torsion
