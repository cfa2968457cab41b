"""Pullback and pushout of extensions, direct sums, and the lemmas turning
commuting diagrams of extensions into path data."""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    Hom,
    biproduct,
    direct_sum_group,
    factor_through_mono,
    hom_compose,
    hom_copair,
    hom_direct_sum,
    hom_identity,
    hom_neg,
    hom_pair,
    kernel,
    presentation_cokernel,
    zero_group,
)
from .linalg import DimensionError, IntMatrix, block_diag, hstack, vstack
from .ses import SES, PathData, PathDataError, path_data_from_map


@dataclass(frozen=True, eq=False)
class SESMorphism:
    """A map of extensions: ``left``, ``mid``, ``right`` with both squares commuting."""

    src: SES
    tgt: SES
    left: Hom
    mid: Hom
    right: Hom

    def __post_init__(self):
        s, t = self.src, self.tgt
        if (self.left.src, self.left.tgt) != (s.left, t.left) or (self.mid.src, self.mid.tgt) != (
            s.middle,
            t.middle,
        ) or (self.right.src, self.right.tgt) != (s.right, t.right):
            raise DimensionError("morphism components do not match the sequences")
        if not self.mid.is_well_defined() or not self.left.is_well_defined() or not self.right.is_well_defined():
            raise PathDataError("morphism component is not well defined")
        if not hom_compose(self.mid, s.inclusion).equals(hom_compose(t.inclusion, self.left)):
            raise PathDataError("left square does not commute")
        if not hom_compose(self.right, s.projection).equals(hom_compose(t.projection, self.mid)):
            raise PathDataError("right square does not commute")

    def then(self, other: "SESMorphism") -> "SESMorphism":
        """``other o self``."""
        return SESMorphism(
            self.src,
            other.tgt,
            hom_compose(other.left, self.left),
            hom_compose(other.mid, self.mid),
            hom_compose(other.right, self.right),
        )


def _is_identity(h: Hom) -> bool:
    return h.src == h.tgt and h.equals(hom_identity(h.src))


# ---------------------------------------------------------------------------
# Pullback and pushout


def pullback(g: Hom, E: SES) -> tuple[SES, SESMorphism]:
    """``g^*(E)`` for ``g: B' -> B``: the fibre product of ``E.middle`` and ``B'`` over ``B``."""
    if g.tgt != E.right:
        raise DimensionError("pullback: the map does not land in the base of the extension")
    diff = hom_copair(E.projection, hom_neg(g))
    P, kinc = kernel(diff)
    bp = biproduct(E.middle, g.src)
    to_E = hom_compose(bp.pr1, kinc)
    proj = hom_compose(bp.pr2, kinc)
    incl = factor_through_mono(kinc, hom_compose(bp.in1, E.inclusion))
    ses = SES(E.left, P, g.src, incl, proj)
    return ses, SESMorphism(ses, E, hom_identity(E.left), to_E, g)


def pushout(f: Hom, E: SES) -> tuple[SES, SESMorphism]:
    """``f_*(E)`` for ``f: A -> A'``: the cokernel of ``a -> (incl(a), -f(a))``."""
    if f.src != E.left:
        raise DimensionError("pushout: the map does not start at the fibre of the extension")
    S = direct_sum_group(E.middle, f.tgt)
    P = presentation_cokernel(S, vstack(E.inclusion.mat, -f.mat))
    ne, na = E.middle.gens, f.tgt.gens
    I = IntMatrix.identity(ne + na)
    from_E = Hom(E.middle, P, I.select_columns(range(ne)))
    incl = Hom(f.tgt, P, I.select_columns(range(ne, ne + na)))
    proj = Hom(P, E.right, hstack(E.projection.mat, IntMatrix.zeros(E.right.gens, na)))
    ses = SES(f.tgt, P, E.right, incl, proj)
    return ses, SESMorphism(E, ses, f, from_E, hom_identity(E.right))


def pullback_ses(g: Hom, E: SES) -> SES:
    return pullback(g, E)[0]


def pushout_ses(f: Hom, E: SES) -> SES:
    return pushout(f, E)[0]


def direct_sum(E: SES, F: SES) -> SES:
    return SES(
        direct_sum_group(E.left, F.left),
        direct_sum_group(E.middle, F.middle),
        direct_sum_group(E.right, F.right),
        hom_direct_sum(E.inclusion, F.inclusion),
        hom_direct_sum(E.projection, F.projection),
    )


def zero_ses() -> SES:
    """``0 -> 0 -> 0``."""
    Z = zero_group()
    I = hom_identity(Z)
    return SES(Z, Z, Z, I, I)


# ---------------------------------------------------------------------------
# Path data from diagrams


def morphism_to_path_data(m: SESMorphism) -> PathData:
    """A morphism with identity ends is path data (short five lemma)."""
    if not _is_identity(m.left) or not _is_identity(m.right):
        raise DimensionError("outer maps must be identities")
    return path_data_from_map(m.src, m.tgt, m.mid)


def pullback_char(m: SESMorphism) -> PathData:
    """``m.src == pullback(m.right, m.tgt)`` when ``m.left`` is the identity."""
    if not _is_identity(m.left):
        raise DimensionError("pullback characterisation needs the identity on the left")
    Q, qm = pullback(m.right, m.tgt)
    # universal map e' -> (mid e', proj e') into the fibre product
    kinc = Hom.unverified(Q.middle, direct_sum_group(m.tgt.middle, m.src.right), vstack(qm.mid.mat, Q.projection.mat))
    u = factor_through_mono(kinc, hom_pair(m.mid, m.src.projection))
    return path_data_from_map(m.src, Q, u)


def pushout_char(m: SESMorphism) -> PathData:
    """``pushout(m.left, m.src) == m.tgt`` when ``m.right`` is the identity."""
    if not _is_identity(m.right):
        raise DimensionError("pushout characterisation needs the identity on the right")
    P, _ = pushout(m.left, m.src)
    u = Hom(P.middle, m.tgt.middle, hstack(m.mid.mat, m.tgt.inclusion.mat))
    return path_data_from_map(P, m.tgt, u)


def mixed_char(m: SESMorphism) -> PathData:
    """``pushout(m.left, m.src) == pullback(m.right, m.tgt)`` for any morphism."""
    Q, qm = pullback(m.right, m.tgt)
    kinc = Hom.unverified(Q.middle, direct_sum_group(m.tgt.middle, m.src.right), vstack(qm.mid.mat, Q.projection.mat))
    u = factor_through_mono(kinc, hom_pair(m.mid, m.src.projection))
    factored = SESMorphism(m.src, Q, m.left, u, hom_identity(m.src.right))
    return pushout_char(factored)


# ---------------------------------------------------------------------------
# Functor laws, each with an explicit witness


def pullback_id(E: SES) -> PathData:
    """``id^*(E) == E``."""
    _, m = pullback(hom_identity(E.right), E)
    return morphism_to_path_data(m)


def pushout_id(E: SES) -> PathData:
    """``id_*(E) == E``."""
    _, m = pushout(hom_identity(E.left), E)
    return morphism_to_path_data(m).reverse()


def pullback_comp(g: Hom, h: Hom, E: SES) -> PathData:
    """``(g o h)^*(E) == h^*(g^*(E))`` for ``h: B'' -> B'`` and ``g: B' -> B``."""
    gE, mg = pullback(g, E)
    hgE, mh = pullback(h, gE)
    # h^*(g^*E) -> E over g o h with the identity on the left
    pd = pullback_char(mh.then(mg))
    return pd.reverse()


def pushout_comp(f2: Hom, f: Hom, E: SES) -> PathData:
    """``(f2 o f)_*(E) == f2_*(f_*(E))`` for ``f: A -> A'`` and ``f2: A' -> A''``."""
    fE, mf = pushout(f, E)
    ffE, mf2 = pushout(f2, fE)
    return pushout_char(mf.then(mf2))


def pullback_path(g: Hom, pd: PathData) -> PathData:
    """Action of ``g^*`` on path data: ``g^*(E) == g^*(F)`` from ``E == F``."""
    gE, mE = pullback(g, pd.src)
    gF, mF = pullback(g, pd.tgt)
    kinc = Hom.unverified(gF.middle, direct_sum_group(pd.tgt.middle, g.src), vstack(mF.mid.mat, gF.projection.mat))
    # (e, b') -> (phi e, b')
    u = factor_through_mono(kinc, hom_pair(hom_compose(pd.phi, mE.mid), gE.projection))
    return path_data_from_map(gE, gF, u)


def pushout_path(f: Hom, pd: PathData) -> PathData:
    """Action of ``f_*`` on path data."""
    fE, _ = pushout(f, pd.src)
    fF, mF = pushout(f, pd.tgt)
    u = Hom(fE.middle, fF.middle, block_diag(pd.phi.mat, IntMatrix.identity(f.tgt.gens)))
    return path_data_from_map(fE, fF, u)
