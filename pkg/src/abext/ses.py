"""Short exact sequences, path data between them, and loops at the trivial extension."""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    AbGroup,
    Congruence,
    Hom,
    ValidationError,
    biproduct,
    compose,
    hom_add,
    hom_compose,
    hom_identity,
    hom_neg,
    invert_iso,
    is_complex,
    is_exact_at,
    is_injective,
    is_surjective,
    solve_hom,
)
from .linalg import DimensionError, IntMatrix


class SESError(ValidationError):
    pass


class NotInjective(SESError):
    pass


class NotSurjective(SESError):
    pass


class NotComplex(SESError):
    pass


class NotExact(SESError):
    pass


class PathDataError(ValidationError):
    pass


@dataclass(frozen=True, eq=False)
class SES:
    """``left --inclusion--> middle --projection--> right``, exactness checked on construction."""

    left: AbGroup
    middle: AbGroup
    right: AbGroup
    inclusion: Hom
    projection: Hom

    def __post_init__(self):
        i, p = self.inclusion, self.projection
        if i.src != self.left or i.tgt != self.middle or p.src != self.middle or p.tgt != self.right:
            raise DimensionError("SES maps do not match the groups")
        for h in (i, p):
            if not h.is_well_defined():
                raise SESError("SES map is not a well-defined homomorphism")
        if not is_injective(i):
            raise NotInjective("inclusion is not injective")
        if not is_surjective(p):
            raise NotSurjective("projection is not surjective")
        if not is_complex(i, p):
            raise NotComplex("projection o inclusion is not zero")
        if not is_exact_at(i, p):
            raise NotExact("image of the inclusion differs from the kernel of the projection")

    @classmethod
    def unverified(cls, left, middle, right, inclusion, projection) -> "SES":
        s = object.__new__(cls)
        for k, v in zip(
            ("left", "middle", "right", "inclusion", "projection"), (left, middle, right, inclusion, projection)
        ):
            object.__setattr__(s, k, v)
        return s

    def __eq__(self, other: object) -> bool:
        # structural identity: same presentations and literally equal matrices
        if not isinstance(other, SES):
            return NotImplemented
        return (
            self.left == other.left
            and self.middle == other.middle
            and self.right == other.right
            and self.inclusion.mat == other.inclusion.mat
            and self.projection.mat == other.projection.mat
        )

    def __hash__(self) -> int:
        return hash((self.left, self.middle, self.right, self.inclusion.mat, self.projection.mat))

    def __repr__(self) -> str:
        return f"SES({self.left} -> {self.middle} -> {self.right})"


def make_ses(A: AbGroup, E: AbGroup, B: AbGroup, inclusion: Hom, projection: Hom) -> SES:
    return SES(A, E, B, inclusion, projection)


def trivial_ses(B: AbGroup, A: AbGroup) -> SES:
    """The split extension ``A -> A + B -> B``."""
    bp = biproduct(A, B)
    return SES.unverified(A, bp.group, B, bp.in1, bp.pr2)


def same_endpoints(E: SES, F: SES) -> bool:
    return E.left == F.left and E.right == F.right


@dataclass(frozen=True, eq=False)
class PathData:
    """An isomorphism of middles commuting with both maps, with a chosen inverse."""

    src: SES
    tgt: SES
    phi: Hom
    inverse: Hom

    def __post_init__(self):
        problem = _path_data_problem(self.src, self.tgt, self.phi, self.inverse)
        if problem:
            raise PathDataError(problem)

    @classmethod
    def unverified(cls, src: SES, tgt: SES, phi: Hom, inverse: Hom) -> "PathData":
        pd = object.__new__(cls)
        for k, v in zip(("src", "tgt", "phi", "inverse"), (src, tgt, phi, inverse)):
            object.__setattr__(pd, k, v)
        return pd

    def verify(self) -> bool:
        try:
            return _path_data_problem(self.src, self.tgt, self.phi, self.inverse) is None
        except (ValueError, DimensionError):
            return False

    def reverse(self) -> "PathData":
        return PathData(self.tgt, self.src, self.inverse, self.phi)

    def then(self, other: "PathData") -> "PathData":
        """``other o self``: first this path, then ``other``."""
        if self.tgt != other.src:
            raise DimensionError("path data do not compose")
        return PathData(
            self.src,
            other.tgt,
            hom_compose(other.phi, self.phi),
            hom_compose(self.inverse, other.inverse),
        )

    def __repr__(self) -> str:
        return f"PathData({self.src!r} => {self.tgt!r}, phi={self.phi.mat.tolist()})"


def _path_data_problem(E: SES, F: SES, phi: Hom, inv: Hom) -> str | None:
    if not same_endpoints(E, F):
        return "path data between sequences with different end groups"
    if phi.src != E.middle or phi.tgt != F.middle or inv.src != F.middle or inv.tgt != E.middle:
        return "path data maps do not match the middle groups"
    if not phi.is_well_defined() or not inv.is_well_defined():
        return "path data map is not well defined"
    if not hom_compose(phi, E.inclusion).equals(F.inclusion):
        return "phi o inclusion differs from the target inclusion"
    if not E.projection.equals(hom_compose(F.projection, phi)):
        return "projection differs from the target projection o phi"
    if not hom_compose(inv, phi).equals(hom_identity(E.middle)):
        return "inverse o phi is not the identity"
    if not hom_compose(phi, inv).equals(hom_identity(F.middle)):
        return "phi o inverse is not the identity"
    return None


def identity_path(E: SES) -> PathData:
    I = hom_identity(E.middle)
    return PathData(E, E, I, I)


def solve_triangles(E: SES, F: SES) -> Hom | None:
    """A middle map ``E -> F`` with both triangles commuting, or ``None``."""
    if not same_endpoints(E, F):
        raise DimensionError("sequences have different end groups")
    return solve_hom(
        E.middle,
        F.middle,
        [
            Congruence(IntMatrix.identity(F.middle.gens), E.inclusion.mat, F.inclusion.mat, F.middle.rel_basis),
            Congruence(F.projection.mat, IntMatrix.identity(E.middle.gens), E.projection.mat, F.right.rel_basis),
        ],
    )


def path_data_from_map(E: SES, F: SES, phi: Hom) -> PathData:
    """Complete a triangle-respecting middle map to verified path data (short five lemma)."""
    inv = invert_iso(phi)
    if inv is None:
        raise PathDataError("middle map is not an isomorphism")
    return PathData(E, F, phi, inv)


def find_path_data(E: SES, F: SES) -> PathData | None:
    """Decide whether ``E`` and ``F`` are equivalent extensions, returning a witness."""
    phi = solve_triangles(E, F)
    if phi is None:
        return None
    inv = solve_triangles(F, E)
    if inv is None:  # pragma: no cover - short five lemma
        raise PathDataError("triangle system solvable one way only")
    # any two triangle maps are mutually inverse up to a correction; pin it down
    if not hom_compose(inv, phi).equals(hom_identity(E.middle)):
        inv = invert_iso(phi)
    return PathData(E, F, phi, inv)


# ---------------------------------------------------------------------------
# Loops at the trivial extension


@dataclass(frozen=True, eq=False)
class LoopElement:
    B: AbGroup
    A: AbGroup
    pd: PathData

    def __post_init__(self):
        triv = trivial_ses(self.B, self.A)
        if self.pd.src != triv or self.pd.tgt != triv:
            raise PathDataError("a loop must start and end at the trivial extension")

    def compose(self, other: "LoopElement") -> "LoopElement":
        """Loop concatenation: ``other`` first, then ``self``."""
        return LoopElement(self.B, self.A, other.pd.then(self.pd))


def retakh_to_hom(loop: LoopElement) -> Hom:
    """The composite ``B -> A + B --phi--> A + B -> A``."""
    bp = biproduct(loop.A, loop.B)
    return compose(bp.pr1, loop.pd.phi, bp.in2)


def retakh_from_hom(f: Hom) -> LoopElement:
    B, A = f.src, f.tgt
    bp = biproduct(A, B)
    shear = compose(bp.in1, f, bp.pr2)
    I = hom_identity(bp.group)
    triv = trivial_ses(B, A)
    pd = PathData(triv, triv, hom_add(I, shear), hom_add(I, hom_neg(shear)))
    return LoopElement(B, A, pd)


def identity_loop(B: AbGroup, A: AbGroup) -> LoopElement:
    return LoopElement(B, A, identity_path(trivial_ses(B, A)))
