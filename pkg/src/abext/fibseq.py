"""Pullback along an extension ``A -i-> E -p-> B`` as a fibre sequence

    AbSES(B, G) --p^*--> AbSES(E, G) --i^*--> AbSES(A, G)

checked on concrete points: a fibre point is an extension ``F`` of ``E``
by ``G`` together with a splitting of ``i^*(F)``.  The quotient
construction ``F/A`` produces a preimage under ``p^*``; the section and
contraction checks compare it with the original data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .abelian import (
    AbGroup,
    Hom,
    biproduct,
    compose,
    factor_through_mono,
    hom_compose,
    hom_identity,
    is_exact_at,
    presentation_cokernel,
)
from .ext import ExtGroup, baer_sum, ext_group, ext_pullback, extension_from_class, split_witness
from .linalg import DimensionError, IntMatrix, vstack
from .pullpush import SESMorphism, pullback, pullback_char, pullback_path
from .ses import SES, PathData, PathDataError, find_path_data, path_data_from_map, trivial_ses
from .six_term import six_term


@dataclass(frozen=True, eq=False)
class FibrePoint:
    """``F`` over ``S.middle`` with coefficients ``G`` and a witness ``i^*(F) == trivial(A, G)``."""

    ambient: SES
    F: SES
    split: PathData

    def __post_init__(self):
        S, F = self.ambient, self.F
        if F.right != S.middle:
            raise DimensionError("fibre point must be an extension of the ambient middle group")
        iF = pullback(S.inclusion, F)[0]
        if self.split.src != iF or self.split.tgt != trivial_ses(S.left, F.left):
            raise PathDataError("splitting is not path data from i^*(F) to the trivial extension")
        if not self.split.verify():
            raise PathDataError("splitting does not verify")


def canonical_split(S: SES, X: SES) -> PathData:
    """Splitting of ``i^*(p^*(X))`` sending ``(g, a)`` to ``((g, i(a)), a)``."""
    pX, mp = pullback(S.projection, X)
    ipX, mi = pullback(S.inclusion, pX)
    G, A = X.left, S.left
    triv = trivial_ses(A, G)
    bp = biproduct(G, A)
    # ambient coordinates of i^*p^*X inside (X.middle + E) + A
    inner = Hom.unverified(pX.middle, _sum(X.middle, S.middle), vstack(mp.mid.mat, pX.projection.mat))
    outer = Hom.unverified(ipX.middle, _sum(pX.middle, A), vstack(mi.mid.mat, ipX.projection.mat))
    # first factor through p^*X: (g, a) -> (iota g, i a)
    to_pX = factor_through_mono(
        inner,
        Hom.unverified(
            triv.middle,
            _sum(X.middle, S.middle),
            vstack(
                compose(X.inclusion, bp.pr1).mat,
                compose(S.inclusion, bp.pr2).mat,
            ),
        ),
    )
    psi = factor_through_mono(
        outer, Hom.unverified(triv.middle, _sum(pX.middle, A), vstack(to_pX.mat, bp.pr2.mat))
    )
    return path_data_from_map(triv, ipX, psi).reverse()


def _sum(X: AbGroup, Y: AbGroup) -> AbGroup:
    return biproduct(X, Y).group


def quotient_construction(S: SES, fp: FibrePoint) -> tuple[SES, PathData]:
    """``Q: G -> F/A -> B`` together with path data ``p^*(Q) == F``."""
    if fp.ambient != S:
        raise DimensionError("fibre point belongs to a different ambient extension")
    F = fp.F
    A, G = S.left, F.left
    iF, mi = pullback(S.inclusion, F)
    j = mi.mid  # i^*F -> F.middle
    in_A = biproduct(G, A).in2
    sigma = compose(j, fp.split.inverse, in_A)  # A -> F.middle
    FA = presentation_cokernel(F.middle, sigma.mat)
    q = Hom(F.middle, FA, IntMatrix.identity(F.middle.gens))
    incl = hom_compose(q, F.inclusion)
    proj = Hom(FA, S.right, hom_compose(S.projection, F.projection).mat)
    Q = SES(G, FA, S.right, Hom(G, FA, incl.mat), proj)
    m = SESMorphism(F, Q, hom_identity(G), q, S.projection)
    return Q, pullback_char(m).reverse()


def fibre_point_from_base(S: SES, X: SES) -> FibrePoint:
    """``(p^*(X), canonical splitting)``: the image of ``X`` in the fibre of ``i^*``."""
    return FibrePoint(S, pullback(S.projection, X)[0], canonical_split(S, X))


def transport_fibre_point(S: SES, fp: FibrePoint, pd: PathData) -> FibrePoint:
    """Move a fibre point along path data ``fp.F == F'``."""
    if pd.src != fp.F:
        raise DimensionError("path data does not start at the fibre point")
    moved = pullback_path(S.inclusion, pd)  # i^*F == i^*F'
    return FibrePoint(S, pd.tgt, moved.reverse().then(fp.split))


@dataclass
class FibreSequenceReport:
    composite_split: list[bool] = field(default_factory=list)
    section_round_trip: list[bool] = field(default_factory=list)
    contraction: list[bool] = field(default_factory=list)
    fibre_points: list[bool] = field(default_factory=list)
    class_exact: bool = False
    six_term_agrees: bool | None = None

    @property
    def ok(self) -> bool:
        checks = self.composite_split + self.section_round_trip + self.contraction + self.fibre_points
        return all(checks) and self.class_exact and self.six_term_agrees is not False

    def lines(self) -> list[str]:
        def fmt(name, xs):
            return f"{name}: {sum(xs)}/{len(xs)} passed"

        return [
            fmt("i^* p^* X splits", self.composite_split),
            fmt("section round trip F/A == X", self.section_round_trip),
            fmt("contraction", self.contraction),
            fmt("fibre points lift through p^*", self.fibre_points),
            f"class-level exactness at AbSES(E,G): {self.class_exact}",
            f"agrees with six-term: {self.six_term_agrees}",
        ]


def _sample_base(XB: ExtGroup, rng: random.Random, extra: int) -> list[SES]:
    sample = list(XB.gen_extensions) + [trivial_ses(XB.B, XB.A)]
    gens = list(XB.gen_extensions)
    for _ in range(extra):
        if len(gens) < 1:
            break
        a, b = rng.choice(gens), rng.choice(gens)
        sample.append(baer_sum(a, b))
    return sample


def fibre_sequence_check(
    S: SES, G: AbGroup, rng: random.Random | None = None, extra: int = 2, max_fibre_classes: int = 16,
    compare_six_term: bool = True,
) -> FibreSequenceReport:
    rng = rng or random.Random(0)
    XB, XE, XA = ext_group(S.right, G), ext_group(S.middle, G), ext_group(S.left, G)
    rep = FibreSequenceReport()
    for X in _sample_base(XB, rng, extra):
        fp = fibre_point_from_base(S, X)
        rep.composite_split.append(fp.split.verify())
        Q, q = quotient_construction(S, fp)
        rep.section_round_trip.append(q.verify() and find_path_data(Q, X) is not None)
        # a second representative of X's component, with its own fibre point
        Y = baer_sum(X, trivial_ses(X.right, X.left))
        r = find_path_data(Y, X)
        fpY = fibre_point_from_base(S, Y)
        moved = transport_fibre_point(S, fpY, pullback_path(S.projection, r))
        QY, _ = quotient_construction(S, moved)
        rep.contraction.append(find_path_data(QY, Q) is not None and find_path_data(QY, Y) is not None)
    # fibre points that do not come from p^* by construction
    if XE.group.is_finite() and XE.group.order <= max_fibre_classes:
        classes = list(XE.elements())
    else:
        classes = XE.generators()
    istar = ext_pullback(S.inclusion, G, XE, XA)
    for c in classes:
        if not XA.element(istar(c.vector)).is_zero():
            continue
        F = extension_from_class(c)
        split = split_witness(pullback(S.inclusion, F)[0])
        if split is None:
            rep.fibre_points.append(False)
            continue
        fp = FibrePoint(S, F, split)
        Q, q = quotient_construction(S, fp)
        rep.fibre_points.append(q.verify() and q.tgt == F)
    pstar = ext_pullback(S.projection, G, XB, XE)
    rep.class_exact = is_exact_at(pstar, istar)
    if compare_six_term:
        rep.six_term_agrees = six_term(S, G).exact_at[4] == rep.class_exact
    return rep
