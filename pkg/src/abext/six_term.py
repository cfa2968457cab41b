"""The six-term exact sequence of an extension with coefficients in G,
and the compatibility of pullback with the loop/hom identification."""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import (
    AbGroup,
    Hom,
    HomGroup,
    hom_compose,
    hom_direct_sum,
    hom_group,
    hom_identity,
    induced_hom_map,
    is_exact_at,
    is_injective,
)
from .ext import ExtGroup, classify, ext_group, ext_pullback
from .linalg import IntMatrix
from .pullpush import SESMorphism, pullback_char, pullback_path, pushout_ses
from .ses import SES, LoopElement, retakh_from_hom, retakh_to_hom, trivial_ses

NODE_NAMES = ("Hom(B,G)", "Hom(E,G)", "Hom(A,G)", "Ext(B,G)", "Ext(E,G)", "Ext(A,G)")
MAP_NAMES = ("p^*", "i^*", "delta", "p^*", "i^*")


@dataclass(frozen=True, eq=False)
class SixTermReport:
    ses: SES
    G: AbGroup
    hom_nodes: tuple[HomGroup, HomGroup, HomGroup]
    ext_nodes: tuple[ExtGroup, ExtGroup, ExtGroup]
    maps: tuple[Hom, ...]
    exact_at: tuple[bool, ...] = field(init=False)
    injective_head: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "exact_at", self.recompute())
        object.__setattr__(self, "injective_head", self.exact_at[0])

    @property
    def nodes(self) -> tuple[AbGroup, ...]:
        return tuple(h.base for h in self.hom_nodes) + tuple(x.group for x in self.ext_nodes)

    def recompute(self) -> tuple[bool, ...]:
        """Exactness at Hom(B,G) (injectivity of the head), then at the four interior nodes."""
        m = self.maps
        return (is_injective(m[0]),) + tuple(is_exact_at(m[k], m[k + 1]) for k in range(4))

    def complexes(self) -> bool:
        return all(hom_compose(self.maps[k + 1], self.maps[k]).is_zero() for k in range(4))

    @property
    def ok(self) -> bool:
        return all(self.exact_at) and self.injective_head

    def orders(self) -> list[int | None]:
        return [n.order for n in self.nodes]

    def lines(self) -> list[str]:
        out = [f"{name} = {node}" for name, node in zip(NODE_NAMES, self.nodes)]
        labels = ("injective at Hom(B,G)", "exact at Hom(E,G)", "exact at Hom(A,G)", "exact at Ext(B,G)", "exact at Ext(E,G)")
        out += [f"{lab}: {v}" for lab, v in zip(labels, self.exact_at)]
        return out


def _precompose(H1: HomGroup, H2: HomGroup, h: Hom) -> Hom:
    return induced_hom_map(H1, H2, lambda phi: hom_compose(phi, h))


def connecting_map(S: SES, G: AbGroup, HA: HomGroup | None = None, XB: ExtGroup | None = None) -> Hom:
    """``phi -> phi_*(S)`` from Hom(A, G) to Ext^1(B, G)."""
    HA = HA or hom_group(S.left, G)
    XB = XB or ext_group(S.right, G)
    cols = [classify(pushout_ses(phi, S), XB).vector for phi in HA.gen_reps]
    return Hom(HA.base, XB.group, IntMatrix.from_columns(cols, XB.group.gens))


def six_term(S: SES, G: AbGroup) -> SixTermReport:
    A, E, B = S.left, S.middle, S.right
    HB, HE, HA = hom_group(B, G), hom_group(E, G), hom_group(A, G)
    XB, XE, XA = ext_group(B, G), ext_group(E, G), ext_group(A, G)
    maps = (
        _precompose(HB, HE, S.projection),
        _precompose(HE, HA, S.inclusion),
        connecting_map(S, G, HA, XB),
        ext_pullback(S.projection, G, XB, XE),
        ext_pullback(S.inclusion, G, XE, XA),
    )
    return SixTermReport(S, G, (HB, HE, HA), (XB, XE, XA), maps)


# ---------------------------------------------------------------------------
# Loops versus homs


def transport_loop(g: Hom, loop: LoopElement) -> LoopElement:
    """``Omega(g^*)``: pull a loop at trivial(B, A) back to a loop at trivial(B', A)."""
    B, A = loop.B, loop.A
    Bp = g.src
    triv, trivp = trivial_ses(B, A), trivial_ses(Bp, A)
    m = SESMorphism(trivp, triv, hom_identity(A), hom_direct_sum(hom_identity(A), g), g)
    w = pullback_char(m)  # trivial(B', A) == g^*(trivial(B, A))
    moved = pullback_path(g, loop.pd)
    return LoopElement(Bp, A, w.then(moved).then(w.reverse()))


def loops_naturality_check(g: Hom, A: AbGroup, max_elements: int = 64) -> bool:
    """``retakh_to_hom(Omega(g^*) l) == retakh_to_hom(l) o g`` for every loop (or generators)."""
    B = g.tgt
    H = hom_group(B, A)
    if H.base.is_finite() and H.base.order <= max_elements:
        homs = [H.hom(v) for v in H.base.elements()]
    else:
        homs = H.gen_reps
    for f in homs:
        loop = retakh_from_hom(f)
        moved = transport_loop(g, loop)
        if not retakh_to_hom(moved).equals(hom_compose(f, g)):
            return False
    return True
