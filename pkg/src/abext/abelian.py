"""Finitely presented abelian groups and their homomorphisms.

A group is ``Z^gens`` modulo the column lattice of ``rels``.  Homs are
integer matrices ``tgt.gens x src.gens`` and are compared modulo the
target relations, never entrywise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterator, Sequence

from .linalg import (
    DimensionError,
    IntMatrix,
    block_diag,
    hstack,
    kernel_basis,
    kron,
    lattice_basis,
    snf,
    solve_integer,
    unvec,
    vec,
    vstack,
)


class ValidationError(ValueError):
    """A mathematical object failed one of its defining checks."""


class IllDefinedHom(ValidationError):
    def __init__(self, column: int, message: str | None = None):
        self.column = column
        super().__init__(message or f"relation column {column} of the source does not map into the target relation lattice")


@dataclass(frozen=True, eq=False)
class AbGroup:
    """``Z^gens / <columns of rels>`` with its invariant-factor form cached."""

    gens: int
    rels: IntMatrix
    free_rank: int = field(init=False)
    torsion: tuple[int, ...] = field(init=False)
    # cached reductions used by membership tests and enumeration
    _rel_basis: IntMatrix = field(init=False, repr=False)
    _snf_U: IntMatrix = field(init=False, repr=False)
    _snf_U_inv: IntMatrix = field(init=False, repr=False)
    _diag: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.rels.rows != self.gens:
            raise DimensionError(f"relation matrix has {self.rels.rows} rows for {self.gens} generators")
        basis = lattice_basis(self.rels)
        res = snf(basis)
        diag = tuple(res.diagonal)
        nonzero = sum(1 for d in diag if d)
        object.__setattr__(self, "_rel_basis", basis)
        object.__setattr__(self, "_snf_U", res.U)
        object.__setattr__(self, "_snf_U_inv", res.U_inv)
        object.__setattr__(self, "_diag", diag)
        object.__setattr__(self, "free_rank", self.gens - nonzero)
        object.__setattr__(self, "torsion", tuple(d for d in diag if d > 1))

    # -- identity is the presentation ---------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbGroup):
            return NotImplemented
        return self.gens == other.gens and self.rels == other.rels

    def __hash__(self) -> int:
        return hash((self.gens, self.rels))

    def __repr__(self) -> str:
        return f"AbGroup({self.gens}, {self.rels!r})"

    def __str__(self) -> str:
        return format_group(self.free_rank, self.torsion)

    @property
    def rel_basis(self) -> IntMatrix:
        return self._rel_basis

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return (self.free_rank, self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Number of elements, or ``None`` for an infinite group."""
        return prod(self.torsion) if self.free_rank == 0 else None

    # -- elements -----------------------------------------------------
    def is_zero(self, v: Sequence[int]) -> bool:
        """Membership of ``v`` in the relation lattice, via the cached Smith form."""
        if len(v) != self.gens:
            raise DimensionError(f"vector of length {len(v)} in a group with {self.gens} generators")
        w = self._snf_U.apply(v)
        for i, x in enumerate(w):
            d = self._diag[i] if i < len(self._diag) else 0
            if d == 0:
                if x:
                    return False
            elif x % d:
                return False
        return True

    def equal(self, v: Sequence[int], w: Sequence[int]) -> bool:
        return self.is_zero([a - b for a, b in zip(v, w)])

    def canonical(self, v: Sequence[int]) -> tuple[int, ...]:
        """Invariant-factor coordinates: torsion parts reduced, then free parts."""
        w = self._snf_U.apply(v)
        tors, free = [], []
        for i, x in enumerate(w):
            d = self._diag[i] if i < len(self._diag) else 0
            if d == 0:
                free.append(x)
            elif d > 1:
                tors.append(x % d)
        return tuple(tors + free)

    def from_canonical(self, c: Sequence[int]) -> list[int]:
        w = [0] * self.gens
        it = iter(c)
        slots_t = [i for i in range(self.gens) if i < len(self._diag) and self._diag[i] > 1]
        slots_f = [i for i in range(self.gens) if i >= len(self._diag) or self._diag[i] == 0]
        for i in slots_t + slots_f:
            w[i] = next(it)
        return self._snf_U_inv.apply(w)

    def reduce(self, v: Sequence[int]) -> list[int]:
        """Display form of an element; equality never depends on it."""
        return self.from_canonical(self.canonical(v))

    def elements(self) -> Iterator[list[int]]:
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        for c in itertools.product(*(range(d) for d in self.torsion)):
            yield self.from_canonical(c)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> list[int]:
        return [0] * self.gens


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: AbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.gens:
            raise DimensionError("coordinate vector has the wrong length")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.group.equal(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash((self.group, self.group.canonical(self.coords)))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def is_zero(self) -> bool:
        return self.group.is_zero(self.coords)

    def __repr__(self) -> str:
        return f"GroupElement({list(self.group.reduce(self.coords))})"


def format_group(free_rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"


def make_group(n: int, rels: IntMatrix | Sequence[Sequence[int]] | None = None) -> AbGroup:
    if rels is None:
        rels = IntMatrix.zeros(n, 0)
    elif not isinstance(rels, IntMatrix):
        rels = IntMatrix(rels, cols=len(rels[0]) if len(rels) else 0)
    if rels.rows != n:
        raise DimensionError(f"relation matrix has {rels.rows} rows but the group has {n} generators")
    return AbGroup(n, rels)


def free_group(n: int) -> AbGroup:
    return AbGroup(n, IntMatrix.zeros(n, 0))


def zero_group() -> AbGroup:
    return free_group(0)


def cyclic(d: int) -> AbGroup:
    """``Z/d``; ``d == 0`` gives ``Z``."""
    if d == 0:
        return free_group(1)
    return AbGroup(1, IntMatrix([[d]]))


def from_invariants(free_rank: int = 0, factors: Sequence[int] = ()) -> AbGroup:
    """``Z^free_rank + Z/d_1 + ...`` with the torsion generators first."""
    n = len(factors) + free_rank
    return AbGroup(n, IntMatrix.diagonal(list(factors), rows=n, cols=len(factors)))


def invariant_factors(G: AbGroup) -> tuple[int, list[int]]:
    return G.free_rank, list(G.torsion)


def isomorphic(G: AbGroup, H: AbGroup) -> bool:
    return G.invariants == H.invariants


def presentation_cokernel(G: AbGroup, extra: IntMatrix) -> AbGroup:
    """``G`` with the columns of ``extra`` added as relations."""
    return AbGroup(G.gens, lattice_basis(hstack(G.rels, extra)))


# ---------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True, eq=False)
class Hom:
    src: AbGroup
    tgt: AbGroup
    mat: IntMatrix

    def __post_init__(self):
        if self.mat.shape != (self.tgt.gens, self.src.gens):
            raise DimensionError(
                f"hom matrix has shape {self.mat.shape}, expected {(self.tgt.gens, self.src.gens)}"
            )
        images = self.mat @ self.src.rel_basis
        for j in range(images.cols):
            if not self.tgt.is_zero(images.col(j)):
                # report the offending column of the presentation as given
                bad = next(
                    k for k in range(self.src.rels.cols)
                    if not self.tgt.is_zero(self.mat.apply(self.src.rels.col(k)))
                )
                raise IllDefinedHom(bad)

    @classmethod
    def unverified(cls, src: AbGroup, tgt: AbGroup, mat: IntMatrix) -> "Hom":
        """Build without the well-definedness check (for mutation tests and decoding)."""
        h = object.__new__(cls)
        object.__setattr__(h, "src", src)
        object.__setattr__(h, "tgt", tgt)
        object.__setattr__(h, "mat", mat)
        return h

    def is_well_defined(self) -> bool:
        if self.mat.shape != (self.tgt.gens, self.src.gens):
            return False
        images = self.mat @ self.src.rel_basis
        return all(self.tgt.is_zero(images.col(j)) for j in range(images.cols))

    def __call__(self, v: Sequence[int]) -> list[int]:
        return self.mat.apply(v)

    def equals(self, other: "Hom") -> bool:
        """Equality modulo the target relations (same endpoints required)."""
        if self.src != other.src or self.tgt != other.tgt:
            return False
        diff = self.mat - other.mat
        return all(self.tgt.is_zero(diff.col(j)) for j in range(diff.cols))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hom):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(self.tgt.is_zero(self.mat.col(j)) for j in range(self.mat.cols))

    def __matmul__(self, other: "Hom") -> "Hom":
        return hom_compose(self, other)

    def __add__(self, other: "Hom") -> "Hom":
        return hom_add(self, other)

    def __neg__(self) -> "Hom":
        return hom_neg(self)

    def __sub__(self, other: "Hom") -> "Hom":
        return hom_add(self, hom_neg(other))

    def __repr__(self) -> str:
        return f"Hom({self.src} -> {self.tgt}, {self.mat.tolist()})"


def make_hom(src: AbGroup, tgt: AbGroup, mat: IntMatrix | Sequence[Sequence[int]]) -> Hom:
    if not isinstance(mat, IntMatrix):
        mat = IntMatrix(mat, cols=src.gens)
    return Hom(src, tgt, mat)


def hom_identity(G: AbGroup) -> Hom:
    return Hom.unverified(G, G, IntMatrix.identity(G.gens))


def hom_zero(src: AbGroup, tgt: AbGroup) -> Hom:
    return Hom.unverified(src, tgt, IntMatrix.zeros(tgt.gens, src.gens))


def hom_compose(g: Hom, f: Hom) -> Hom:
    """``g o f``."""
    if f.tgt != g.src:
        raise DimensionError("cannot compose: target of f is not the source of g")
    return Hom.unverified(f.src, g.tgt, g.mat @ f.mat)


def compose(*homs: Hom) -> Hom:
    """``compose(h, g, f) == h o g o f``."""
    out = homs[-1]
    for h in reversed(homs[:-1]):
        out = hom_compose(h, out)
    return out


def hom_add(f: Hom, g: Hom) -> Hom:
    if f.src != g.src or f.tgt != g.tgt:
        raise DimensionError("cannot add homs with different endpoints")
    return Hom.unverified(f.src, f.tgt, f.mat + g.mat)


def hom_neg(f: Hom) -> Hom:
    return Hom.unverified(f.src, f.tgt, -f.mat)


def hom_scale(f: Hom, k: int) -> Hom:
    return Hom.unverified(f.src, f.tgt, f.mat.scale(k))


# ---------------------------------------------------------------------------
# Solving for homomorphisms subject to linear congruences


@dataclass(frozen=True)
class Congruence:
    """The constraint ``left @ X @ right == rhs`` modulo the columns of ``modulus``."""

    left: IntMatrix
    right: IntMatrix
    rhs: IntMatrix
    modulus: IntMatrix


def solve_hom(src: AbGroup, tgt: AbGroup, constraints: Sequence[Congruence] = ()) -> Hom | None:
    """Find a well-defined hom ``src -> tgt`` satisfying every congruence.

    All constraints plus well-definedness are stacked into one integer
    system over ``vec(X)`` and one slack block per congruence.
    """
    t, s = tgt.gens, src.gens
    cons = list(constraints)
    if src.rel_basis.cols:
        cons.append(
            Congruence(
                IntMatrix.identity(t),
                src.rel_basis,
                IntMatrix.zeros(t, src.rel_basis.cols),
                tgt.rel_basis,
            )
        )
    blocks = []
    rhs: list[int] = []
    slack_sizes = [c.modulus.cols * c.rhs.cols for c in cons]
    total_slack = sum(slack_sizes)
    offset = 0
    for c, size in zip(cons, slack_sizes):
        if c.left.cols != t or c.right.rows != s:
            raise DimensionError("congruence does not fit the unknown hom")
        main = kron(c.left, c.right.T)
        slack = kron(c.modulus, IntMatrix.identity(c.rhs.cols)).scale(-1)
        nrows = main.rows
        pre = IntMatrix.zeros(nrows, offset)
        post = IntMatrix.zeros(nrows, total_slack - offset - size)
        blocks.append(hstack(main, pre, slack, post))
        rhs.extend(vec(c.rhs))
        offset += size
    if not blocks:
        return Hom.unverified(src, tgt, IntMatrix.zeros(t, s))
    system = vstack(*blocks)
    x = solve_integer(system, rhs)
    if x is None:
        return None
    return Hom(src, tgt, unvec(x[: t * s], t, s))


def factor_through_mono(k: Hom, h: Hom) -> Hom:
    """The unique ``h'`` with ``k o h' == h``; ``k`` must be injective and contain the image of ``h``."""
    if k.tgt != h.tgt:
        raise DimensionError("factor_through_mono: targets differ")
    out = solve_hom(h.src, k.src, [Congruence(k.mat, IntMatrix.identity(h.src.gens), h.mat, k.tgt.rel_basis)])
    if out is None:
        raise ValidationError("image of the map is not contained in the image of the monomorphism")
    return out


def lift_through_epi(p: Hom, h: Hom) -> Hom | None:
    """Some ``l`` with ``p o l == h`` (exists for all ``h`` when ``h.src`` is projective)."""
    if p.tgt != h.tgt:
        raise DimensionError("lift_through_epi: targets differ")
    return solve_hom(h.src, p.src, [Congruence(p.mat, IntMatrix.identity(h.src.gens), h.mat, p.tgt.rel_basis)])


def invert_iso(f: Hom) -> Hom | None:
    """Two-sided inverse of ``f``, or ``None`` if ``f`` is not an isomorphism."""
    g = solve_hom(
        f.tgt,
        f.src,
        [Congruence(IntMatrix.identity(f.src.gens), f.mat, IntMatrix.identity(f.src.gens), f.src.rel_basis)],
    )
    if g is None or not hom_compose(f, g).equals(hom_identity(f.tgt)):
        return None
    return g


# ---------------------------------------------------------------------------
# Kernels, images, cokernels


@dataclass(frozen=True)
class KernelImageCokernel:
    kernel: AbGroup
    kernel_incl: Hom
    image: IntMatrix
    cokernel: AbGroup
    cokernel_proj: Hom


def kernel(f: Hom) -> tuple[AbGroup, Hom]:
    n = f.src.gens
    # x with f x in lattice(tgt.rels): kernel of [f.mat | tgt.rels], projected
    K = kernel_basis(hstack(f.mat, f.tgt.rel_basis))
    gens = lattice_basis(K.select_rows(range(n)))
    k = gens.cols
    # y with gens y in lattice(src.rels)
    R = kernel_basis(hstack(gens, f.src.rel_basis))
    krels = lattice_basis(R.select_rows(range(k)))
    Kgrp = AbGroup(k, krels)
    return Kgrp, Hom(Kgrp, f.src, gens)


def cokernel(f: Hom) -> tuple[AbGroup, Hom]:
    C = presentation_cokernel(f.tgt, f.mat)
    return C, Hom(f.tgt, C, IntMatrix.identity(f.tgt.gens))


def kernel_image_cokernel(f: Hom) -> KernelImageCokernel:
    K, inc = kernel(f)
    C, proj = cokernel(f)
    return KernelImageCokernel(K, inc, f.mat, C, proj)


def image(f: Hom) -> tuple[AbGroup, Hom]:
    """The image as a group, with its inclusion into the target."""
    K, inc = kernel(f)
    # coimage: src / ker f, mapped into tgt
    Q = presentation_cokernel(f.src, inc.mat)
    return Q, Hom(Q, f.tgt, f.mat)


def is_injective(f: Hom) -> bool:
    return kernel(f)[0].is_trivial()


def is_surjective(f: Hom) -> bool:
    return presentation_cokernel(f.tgt, f.mat).is_trivial()


def is_iso(f: Hom) -> bool:
    return is_injective(f) and is_surjective(f)


def _span_contains(G: AbGroup, gens: IntMatrix, vectors: IntMatrix) -> bool:
    basis = hstack(gens, G.rel_basis)
    return all(solve_integer(basis, v) is not None for v in vectors.columns()) if vectors.cols else True


def is_exact_at(f: Hom, g: Hom) -> bool:
    """``image(f) == kernel(g)`` as subgroups of the middle group."""
    if f.tgt != g.src:
        raise DimensionError("is_exact_at: target of f is not the source of g")
    M = f.tgt
    _, kinc = kernel(g)
    return _span_contains(M, kinc.mat, f.mat) and _span_contains(M, f.mat, kinc.mat)


def is_complex(f: Hom, g: Hom) -> bool:
    return hom_compose(g, f).is_zero()


# ---------------------------------------------------------------------------
# Biproducts


@dataclass(frozen=True)
class Biproduct:
    group: AbGroup
    in1: Hom
    in2: Hom
    pr1: Hom
    pr2: Hom


def direct_sum_group(A: AbGroup, B: AbGroup) -> AbGroup:
    return AbGroup(A.gens + B.gens, block_diag(A.rels, B.rels))


def biproduct(A: AbGroup, B: AbGroup) -> Biproduct:
    S = direct_sum_group(A, B)
    a, b = A.gens, B.gens
    I = IntMatrix.identity(a + b)
    return Biproduct(
        S,
        Hom.unverified(A, S, I.select_columns(range(a))),
        Hom.unverified(B, S, I.select_columns(range(a, a + b))),
        Hom.unverified(S, A, I.select_rows(range(a))),
        Hom.unverified(S, B, I.select_rows(range(a, a + b))),
    )


def hom_direct_sum(f: Hom, g: Hom) -> Hom:
    """``f + g : A + B -> A' + B'`` (block diagonal)."""
    return Hom.unverified(
        direct_sum_group(f.src, g.src), direct_sum_group(f.tgt, g.tgt), block_diag(f.mat, g.mat)
    )


def hom_pair(f: Hom, g: Hom) -> Hom:
    """``x -> (f x, g x)`` into the direct sum of the targets."""
    if f.src != g.src:
        raise DimensionError("hom_pair: sources differ")
    return Hom.unverified(f.src, direct_sum_group(f.tgt, g.tgt), vstack(f.mat, g.mat))


def hom_copair(f: Hom, g: Hom) -> Hom:
    """``(x, y) -> f x + g y`` out of the direct sum of the sources."""
    if f.tgt != g.tgt:
        raise DimensionError("hom_copair: targets differ")
    return Hom.unverified(direct_sum_group(f.src, g.src), f.tgt, hstack(f.mat, g.mat))


def diagonal(G: AbGroup) -> Hom:
    I = IntMatrix.identity(G.gens)
    return Hom.unverified(G, direct_sum_group(G, G), vstack(I, I))


def codiagonal(G: AbGroup) -> Hom:
    I = IntMatrix.identity(G.gens)
    return Hom.unverified(direct_sum_group(G, G), G, hstack(I, I))


# ---------------------------------------------------------------------------
# Hom groups


@dataclass(frozen=True, eq=False)
class HomGroup:
    """``Hom(source, target)`` presented on a lattice basis of solution matrices."""

    source: AbGroup
    target: AbGroup
    base: AbGroup
    solution_basis: IntMatrix  # columns are vec(Phi), row-major

    @property
    def gen_reps(self) -> list[Hom]:
        return [self.hom(c) for c in IntMatrix.identity(self.base.gens).columns()]

    def hom(self, coords: Sequence[int]) -> Hom:
        v = self.solution_basis.apply(coords)
        return Hom.unverified(self.source, self.target, unvec(v, self.target.gens, self.source.gens))

    def coords(self, f: Hom) -> list[int]:
        return element_coords(self, f)


def hom_group(B: AbGroup, A: AbGroup) -> HomGroup:
    """``Hom(B, A)`` for ``B = Z^n/R`` and ``A = Z^q/S``.

    Solutions ``Phi`` of ``Phi R == S X`` come from the integer kernel of
    ``(Phi, X) -> Phi R - S X``; the null homs ``S Y`` are the relations.
    """
    n, q = B.gens, A.gens
    R, S = B.rel_basis, A.rel_basis
    m, p = R.cols, S.cols
    nphi = q * n
    if m:
        system = hstack(kron(IntMatrix.identity(q), R.T), kron(S, IntMatrix.identity(m)).scale(-1))
        K = kernel_basis(system)
        sol = lattice_basis(K.select_rows(range(nphi)))
    else:
        sol = IntMatrix.identity(nphi)
    d = sol.cols
    null_gens = [vec(S.select_columns([k]) @ IntMatrix([[int(jj == j) for jj in range(n)]], cols=n)) for k in range(p) for j in range(n)]
    rel_cols = []
    for v in null_gens:
        c = solve_integer(sol, v)
        assert c is not None, "null hom outside the solution lattice"
        rel_cols.append(c)
    base = AbGroup(d, lattice_basis(IntMatrix.from_columns(rel_cols, d)) if rel_cols else IntMatrix.zeros(d, 0))
    return HomGroup(B, A, base, sol)


def element_coords(H: HomGroup, f: Hom) -> list[int]:
    if f.src != H.source or f.tgt != H.target:
        raise DimensionError("hom does not belong to this hom group")
    if not f.is_well_defined():
        raise IllDefinedHom(-1, "cannot take coordinates of an ill-defined hom")
    c = solve_integer(H.solution_basis, vec(f.mat))
    if c is None:  # pragma: no cover - guaranteed by well-definedness
        raise ValidationError("hom matrix outside the solution lattice")
    return c


def induced_hom_map(H1: HomGroup, H2: HomGroup, transform) -> Hom:
    """Matrix of ``phi -> transform(phi)`` between hom-group presentations."""
    cols = [element_coords(H2, transform(g)) for g in H1.gen_reps]
    return Hom(H1.base, H2.base, IntMatrix.from_columns(cols, H2.base.gens))


# ---------------------------------------------------------------------------
# Free presentations


@dataclass(frozen=True, eq=False)
class FreePresentation:
    """``K -> Z^n -> B`` with ``K`` free on the canonical basis of ``lattice(B.rels)``."""

    target: AbGroup
    n: int
    free: AbGroup
    proj: Hom
    kernel_incl: IntMatrix
    K: AbGroup
    kernel_hom: Hom

    @property
    def rank_K(self) -> int:
        return self.kernel_incl.cols


def free_presentation(B: AbGroup) -> FreePresentation:
    n = B.gens
    F = free_group(n)
    proj = Hom.unverified(F, B, IntMatrix.identity(n))
    kin = B.rel_basis
    K = free_group(kin.cols)
    return FreePresentation(B, n, F, proj, kin, K, Hom.unverified(K, F, kin))
