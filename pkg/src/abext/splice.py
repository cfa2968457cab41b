"""Length-n exact chains, splicing, zig witnesses and the degree-2 long exact sequence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .abelian import (
    AbGroup,
    Congruence,
    Hom,
    ValidationError,
    factor_through_mono,
    free_presentation,
    hom_compose,
    hom_direct_sum,
    hom_identity,
    hom_zero,
    is_surjective,
    solve_hom,
    zero_group,
)
from .ext import ext_pullback, split_over_free
from .linalg import DimensionError, IntMatrix
from .pullpush import (
    SESMorphism,
    pullback,
    pullback_char,
    pullback_id,
    pushout,
    pushout_char,
    pushout_id,
)
from .ses import SES, PathData, identity_path, trivial_ses


class ChainError(ValidationError):
    pass


@dataclass(frozen=True, eq=False)
class ESChain:
    """``A -> . -> M_1 -> . -> M_2 ... -> B`` as a list of linked extensions."""

    links: tuple[SES, ...]

    def __post_init__(self):
        if not self.links:
            raise ChainError("a chain needs at least one link")
        for k in range(len(self.links) - 1):
            if self.links[k].right != self.links[k + 1].left:
                raise ChainError(f"links {k} and {k + 1} do not share their connecting group")

    @property
    def degree(self) -> int:
        return len(self.links)

    @property
    def coeff(self) -> AbGroup:
        return self.links[0].left

    @property
    def base(self) -> AbGroup:
        return self.links[-1].right

    @property
    def head(self) -> "ESChain":
        """All links but the last (``F`` in ``(F, E)_M``)."""
        if self.degree < 2:
            raise ChainError("a degree-1 chain has no head")
        return ESChain(self.links[:-1])

    @property
    def last(self) -> SES:
        return self.links[-1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ESChain):
            return NotImplemented
        return self.links == other.links

    def __hash__(self) -> int:
        return hash(self.links)

    def __repr__(self) -> str:
        groups = [str(self.coeff)] + [str(s.right) for s in self.links]
        return f"ESChain({' ~> '.join(groups)})"


def chain(*links: SES) -> ESChain:
    return ESChain(tuple(links))


def splice(F: ESChain | SES, E: SES) -> ESChain:
    """``F <> E``: append ``E`` (which must start at the base of ``F``)."""
    F = F if isinstance(F, ESChain) else chain(F)
    if F.base != E.left:
        raise ChainError("cannot splice: base of the chain differs from the fibre of the extension")
    return ESChain(F.links + (E,))


def basepoint(n: int, B: AbGroup, A: AbGroup) -> ESChain:
    """The distinguished chain, built recursively through the zero group."""
    if n < 1:
        raise ValueError("chains of degree 0 are homomorphisms; degree must be at least 1")
    if n == 1:
        return chain(trivial_ses(B, A))
    Z = zero_group()
    return splice(basepoint(n - 1, Z, A), trivial_ses(B, Z))


def es_pullback(g: Hom, C: ESChain) -> ESChain:
    """Pull back the last link along ``g``."""
    return ESChain(C.links[:-1] + (pullback(g, C.last)[0],))


def es_pushout(f: Hom, C: ESChain) -> ESChain:
    """Push out the first link along ``f``."""
    return ESChain((pushout(f, C.links[0])[0],) + C.links[1:])


# ---------------------------------------------------------------------------
# Zigs


Nested = Union["Zig", PathData]


@dataclass(frozen=True, eq=False)
class Zig:
    """From ``(F, E)_M`` to ``(Y, X)_N``: ``f: M -> N``, ``f_*(E) == X`` and ``F ~ f^*(Y)``.

    ``nested`` is path data when ``F`` has degree 1 and another zig otherwise.
    """

    src: ESChain
    tgt: ESChain
    f: Hom
    push_path: PathData
    nested: Nested


def _nested_endpoints(n: Nested) -> tuple[ESChain, ESChain]:
    if isinstance(n, PathData):
        return chain(n.src), chain(n.tgt)
    return n.src, n.tgt


def check_zig(z: Zig) -> bool:
    """Recompute every construction the zig refers to and verify every witness."""
    try:
        src, tgt = z.src, z.tgt
        if src.degree < 2 or src.degree != tgt.degree:
            return False
        if src.coeff != tgt.coeff or src.base != tgt.base:
            return False
        F, E = src.head, src.last
        Y, X = tgt.head, tgt.last
        if z.f.src != F.base or z.f.tgt != Y.base or not z.f.is_well_defined():
            return False
        pushed = pushout(z.f, E)[0]
        if z.push_path.src != pushed or z.push_path.tgt != X or not z.push_path.verify():
            return False
        lo, hi = _nested_endpoints(z.nested)
        if lo != F or hi != es_pullback(z.f, Y):
            return False
        if isinstance(z.nested, PathData):
            return z.nested.verify()
        return check_zig(z.nested)
    except (ValueError, DimensionError):
        return False


def make_zig(src: ESChain, tgt: ESChain, f: Hom, push_path: PathData, nested: Nested) -> Zig:
    z = Zig(src, tgt, f, push_path, nested)
    if not check_zig(z):
        raise ChainError("zig does not verify")
    return z


def _to_identity_pullback(F: ESChain) -> Nested:
    """Relation from ``F`` to ``id^*(F)``."""
    if F.degree == 1:
        return pullback_id(F.last).reverse()
    return _last_link_zig(F, pullback_id(F.last).reverse())


def _last_link_zig(C: ESChain, pd: PathData) -> Zig:
    """Zig ``(F, E)_M -> (F, E')_M`` along the identity of ``M`` from ``pd: E == E'``."""
    F = C.head
    M = F.base
    tgt = ESChain(F.links + (pd.tgt,))
    push = pushout_id(C.last).then(pd)
    return Zig(C, tgt, hom_identity(M), push, _to_identity_pullback(F))


def reflexive_zig(C: ESChain) -> Zig:
    return make_zig(C, C, *_unpack(_last_link_zig(C, identity_path(C.last))))


def _unpack(z: Zig):
    return z.f, z.push_path, z.nested


def splice_swap(f: Hom, F: ESChain | SES, E: SES) -> Zig:
    """Witness ``f^*(F) <> E ~ F <> f_*(E)`` for ``f: M' -> M``, ``F`` over ``M`` and ``E`` starting at ``M'``."""
    F = F if isinstance(F, ESChain) else chain(F)
    if f.tgt != F.base or f.src != E.left:
        raise ChainError("splice_swap: shapes do not fit")
    fF = es_pullback(f, F)
    fE = pushout(f, E)[0]
    src = splice(fF, E)
    tgt = splice(F, fE)
    nested: Nested = identity_path(fF.last) if fF.degree == 1 else reflexive_zig(fF)
    return make_zig(src, tgt, f, identity_path(fE), nested)


@dataclass(frozen=True, eq=False)
class ZigZag:
    """Alternating chain of zigs; direction ``+1`` reads a step forwards, ``-1`` backwards."""

    start: ESChain
    end: ESChain
    steps: tuple[tuple[int, Zig], ...]

    def verify(self) -> bool:
        cur = self.start
        for direction, z in self.steps:
            if direction == 1:
                if z.src != cur:
                    return False
                cur = z.tgt
            elif direction == -1:
                if z.tgt != cur:
                    return False
                cur = z.src
            else:
                return False
            if not check_zig(z):
                return False
        return cur == self.end


# ---------------------------------------------------------------------------
# Degree two: every splice is related to the basepoint


def trivialize_splice(F: SES, E: SES) -> ZigZag:
    """Zig-zag ``F <> E ~ basepoint`` built from a free cover of the base of ``E``.

    ``K -> Z^n -> B`` maps to ``E`` by lifting; the induced ``kappa: K -> M``
    gives a zig from ``(kappa^* F, free)_K`` to ``F <> E``, and since ``K``
    is free ``kappa^* F`` splits, giving a zig to the basepoint along ``K -> 0``.
    """
    if F.right != E.left:
        raise ChainError("F and E cannot be spliced")
    A, B = F.left, E.right
    fp = free_presentation(B)
    K, Fr = fp.K, fp.free
    free_ses = SES(K, Fr, B, fp.kernel_hom, fp.proj)
    lam = solve_hom(
        Fr, E.middle, [Congruence(E.projection.mat, IntMatrix.identity(Fr.gens), fp.proj.mat, B.rel_basis)]
    )
    if lam is None:  # pragma: no cover
        raise ChainError("could not lift the free cover")
    kappa = factor_through_mono(E.inclusion, hom_compose(lam, fp.kernel_hom))
    m = SESMorphism(free_ses, E, kappa, lam, hom_identity(B))
    push1 = pushout_char(m)  # kappa_*(free) == E
    kF = pullback(kappa, F)[0]
    mid = splice(kF, free_ses)
    zig1 = make_zig(mid, splice(F, E), kappa, push1, identity_path(kF))

    Z = zero_group()
    z = hom_zero(K, Z)
    base = basepoint(2, B, A)
    triv_B0 = base.last  # trivial(B, 0)
    m2 = SESMorphism(free_ses, triv_B0, z, Hom(Fr, triv_B0.middle, fp.proj.mat), hom_identity(B))
    push2 = pushout_char(m2)  # z_*(free) == trivial(B, 0)
    s = split_over_free(kF)  # kappa^*F == trivial(K, A)
    triv_K = trivial_ses(K, A)
    first = base.links[0]  # trivial(0, A)
    m3 = SESMorphism(triv_K, first, hom_identity(A), hom_direct_sum(hom_identity(A), z), z)
    to_pb = pullback_char(m3)  # trivial(K, A) == z^*(trivial(0, A))
    zig2 = make_zig(mid, base, z, push2, s.then(to_pb))
    zz = ZigZag(splice(F, E), base, ((-1, zig1), (1, zig2)))
    if not zz.verify():  # pragma: no cover
        raise ChainError("trivialising zig-zag does not verify")
    return zz


# ---------------------------------------------------------------------------
# Long exact sequence, degrees 0 to 2


@dataclass
class LESReport:
    six_term_exact: tuple[bool, ...] = ()
    trivialized: list[bool] = field(default_factory=list)
    swaps: list[bool] = field(default_factory=list)
    ext1_tail_surjective: bool = False

    @property
    def ok(self) -> bool:
        return (
            all(self.six_term_exact)
            and bool(self.six_term_exact)
            and all(self.trivialized)
            and all(self.swaps)
            and self.ext1_tail_surjective
        )

    def lines(self) -> list[str]:
        return [
            f"degrees 0-1 (six-term) exact: {list(self.six_term_exact)}",
            f"degree 2 splices trivialised: {sum(self.trivialized)}/{len(self.trivialized)}",
            f"swap witnesses i^*(F) <> S ~ F <> i_*(S): {sum(self.swaps)}/{len(self.swaps)}",
            f"Ext^1(E,G) -> Ext^1(A,G) onto (exactness into Ext^2(B,G) = 0): {self.ext1_tail_surjective}",
        ]


def les_check(S: SES, G: AbGroup, max_degree: int = 2) -> LESReport:
    from .six_term import six_term

    rep = LESReport()
    st = six_term(S, G)
    rep.six_term_exact = st.exact_at
    if max_degree < 2:
        rep.ext1_tail_surjective = True
        return rep
    XA = st.ext_nodes[2]
    XE = st.ext_nodes[1]
    for F in XA.gen_extensions + (trivial_ses(S.left, G),):
        zz = trivialize_splice(F, S)
        rep.trivialized.append(zz.verify())
    for F in XE.gen_extensions + (trivial_ses(S.middle, G),):
        z = splice_swap(S.inclusion, F, S)
        rep.swaps.append(check_zig(z))
    rep.ext1_tail_surjective = is_surjective(ext_pullback(S.inclusion, G, XE, XA))
    return rep
