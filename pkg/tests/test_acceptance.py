"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measurements.
Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from abext.abelian import (  # noqa: E402
    AbGroup,
    Hom,
    cyclic,
    free_group,
    hom_compose,
    hom_group,
    invert_iso,
    presentation_cokernel,
)
from abext.ext import (  # noqa: E402
    baer_inverse,
    baer_sum,
    classify,
    ext_group,
    ext_pullback,
    ext_pushout,
    extension_from_class,
    split_over_free,
)
from abext.fibseq import fibre_sequence_check  # noqa: E402
from abext.linalg import IntMatrix, det, hnf, is_unimodular, snf  # noqa: E402
from abext.pullpush import mixed_char, pullback, pushout  # noqa: E402
from abext.ses import (  # noqa: E402
    LoopElement,
    PathData,
    find_path_data,
    retakh_from_hom,
    retakh_to_hom,
    trivial_ses,
)
from abext.six_term import six_term  # noqa: E402
from abext.splice import les_check, trivialize_splice  # noqa: E402

from corpus import (  # noqa: E402
    COEFFS,
    CORPUS_A,
    G,
    SMALL_GROUPS,
    ambient_sequences,
    random_extension,
    random_hom,
    random_ses,
    random_unimodular,
    represent,
)

RESULTS: dict[int, str] = {}


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()


# ---------------------------------------------------------------------------
# 1. Ext^1(Z/n, A) against A/nA


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 13):
        for A in CORPUS_A:
            X = ext_group(cyclic(n), A).group
            Q = presentation_cokernel(A, IntMatrix.identity(A.gens).scale(n))
            if X.invariants != Q.invariants:
                bad.append((n, str(A), str(X), str(Q)))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    return ok, f"{12 * len(CORPUS_A)} cases, {len(bad)} mismatches, {dt:.2f}s (limit 60s)"


# ---------------------------------------------------------------------------
# 2. Free bases are projective


def criterion_2():
    rng = random.Random(2)
    nonzero = [(r, str(A)) for r in range(4) for A in CORPUS_A if not ext_group(free_group(r), A).group.is_trivial()]
    failures = 0
    for k in range(50):
        r = rng.randint(1, 3)
        A = rng.choice(CORPUS_A)
        if k % 2:
            S = represent(trivial_ses(free_group(r), A), random_unimodular(rng, A.gens + r, steps=6))
        else:
            S = random_extension(rng, free_group(r), A)
        pd = split_over_free(S)
        if not (pd.verify() and pd.src == S and pd.tgt == trivial_ses(S.right, S.left)):
            failures += 1
    ok = not nonzero and failures == 0
    return ok, f"Ext(Z^r, A) nonzero in {len(nonzero)} of {4 * len(CORPUS_A)} cases; split_over_free failed {failures}/50"


# ---------------------------------------------------------------------------
# 3. Six-term exactness


def criterion_3():
    rng = random.Random(3)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(100):
        S = random_ses(rng)
        for Gc in rng.sample(COEFFS, 3):
            rep = six_term(S, Gc)
            if not (rep.injective_head and all(rep.exact_at) and rep.complexes()):
                failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 300
    return ok, f"300 (sequence, coefficient) pairs, {failures} failures, {dt:.1f}s (limit 300s)"


# ---------------------------------------------------------------------------
# 4. Baer-sum group laws with witnesses


def _witnessed(E, F) -> bool:
    pd = find_path_data(E, F)
    return pd is not None and pd.verify()


def criterion_4():
    rng = random.Random(4)
    pairs = [
        (cyclic(2), cyclic(2)),
        (cyclic(4), cyclic(4)),
        (cyclic(6), cyclic(3)),
        (G("Z/2 + Z/2"), cyclic(4)),
    ]
    failures = []
    for k in range(50):
        B, A = pairs[k % 4]
        X = ext_group(B, A)
        E, F, H = (random_extension(rng, B, A) for _ in range(3))
        T = trivial_ses(B, A)
        EF = baer_sum(E, F)
        checks = {
            "unit": _witnessed(baer_sum(E, T), E),
            "commutative": _witnessed(EF, baer_sum(F, E)),
            "associative": _witnessed(baer_sum(EF, H), baer_sum(E, baer_sum(F, H))),
            "inverse": _witnessed(baer_sum(E, baer_inverse(E)), T),
            "additive": classify(EF, X) == classify(E, X) + classify(F, X),
        }
        failures += [(k, name) for name, v in checks.items() if not v]
    return not failures, f"50 instances x 5 laws, {len(failures)} failures"


# ---------------------------------------------------------------------------
# 5. Bifunctoriality


def criterion_5():
    rng = random.Random(5)
    targets = [cyclic(2), cyclic(4), cyclic(3), free_group(1), G("Z/2 + Z/2")]
    failures = 0
    for _ in range(100):
        E = random_ses(rng)
        A, B = E.left, E.right
        A1 = rng.choice(targets + [A])
        B1 = rng.choice(targets + [B])
        f, g = random_hom(rng, A, A1), random_hom(rng, B1, B)
        m = pullback(g, E)[1].then(pushout(f, E)[1])
        pd = mixed_char(m)
        ok = pd.verify() and pd.src == pushout(f, pullback(g, E)[0])[0] and pd.tgt == pullback(g, pushout(f, E)[0])[0]
        X, X_f, X_g, X_fg = ext_group(B, A), ext_group(B, A1), ext_group(B1, A), ext_group(B1, A1)
        left = hom_compose(ext_pushout(f, B1, X_g, X_fg), ext_pullback(g, A, X, X_g))
        right = hom_compose(ext_pullback(g, A1, X_f, X_fg), ext_pushout(f, B, X, X_f))
        ok = ok and left.equals(right)
        failures += not ok
    return failures == 0, f"100 random (f, g, E), {failures} failures"


# ---------------------------------------------------------------------------
# 6. Loops at the trivial extension versus homs


def _all_loops(B: AbGroup, A: AbGroup) -> list[PathData]:
    """Every self-equivalence of trivial(B, A), found by brute force over generator images."""
    T = trivial_ses(B, A)
    M = T.middle
    elts = list(M.elements())
    a = A.gens
    loops, seen = [], set()
    for imgs in itertools.product(elts, repeat=B.gens):
        cols = [T.inclusion.mat.col(j) for j in range(a)] + [tuple(v) for v in imgs]
        phi = Hom.unverified(M, M, IntMatrix.from_columns(cols, M.gens))
        if not phi.is_well_defined():
            continue
        inv = invert_iso(phi)
        if inv is None:
            continue
        pd = PathData.unverified(T, T, phi, inv)
        if not pd.verify():
            continue
        key = tuple(tuple(M.canonical(c)) for c in phi.mat.columns())
        if key not in seen:
            seen.add(key)
            loops.append(pd)
    return loops


def criterion_6():
    cases = failures = 0
    groups = SMALL_GROUPS[1:]
    for B in groups:
        for A in groups:
            H = hom_group(B, A)
            if H.base.order > 16:
                continue
            cases += 1
            homs = [H.hom(v) for v in H.base.elements()]
            loops = [LoopElement(B, A, pd) for pd in _all_loops(B, A)]
            images = [retakh_to_hom(l) for l in loops]
            # bijection: same count, and the images hit every hom exactly once
            hit = [sum(1 for h in images if h.equals(f)) for f in homs]
            ok = len(loops) == len(homs) and all(c == 1 for c in hit)
            for f in homs:
                ok = ok and retakh_to_hom(retakh_from_hom(f)).equals(f)
            for l in loops:
                back = retakh_from_hom(retakh_to_hom(l))
                ok = ok and back.pd.phi.equals(l.pd.phi)
            for f, g in itertools.product(homs, repeat=2):
                ok = ok and retakh_to_hom(retakh_from_hom(f).compose(retakh_from_hom(g))).equals(f + g)
            failures += not ok
    return failures == 0, f"{cases} (B, A) pairs with |Hom| <= 16, exhaustive, {failures} failures"


# ---------------------------------------------------------------------------
# 7. Fibre sequence


def criterion_7():
    failures = []
    for k, S in enumerate(ambient_sequences()):
        for Gc in (cyclic(2), cyclic(4), cyclic(8)):
            rep = fibre_sequence_check(S, Gc, rng=random.Random(k))
            ok = (
                all(rep.section_round_trip)
                and all(rep.contraction)
                and rep.six_term_agrees is True
                and rep.ok
            )
            if not ok:
                failures.append((k, str(Gc)))
    return not failures, f"9 (ambient, G) combinations, {len(failures)} failures"


# ---------------------------------------------------------------------------
# 8. Degree-2 long exact sequence


def criterion_8():
    t0 = time.perf_counter()
    mids = [cyclic(2), cyclic(4), cyclic(6), G("Z/2 + Z/2"), free_group(1), G("Z + Z/2")]
    ends = [cyclic(2), cyclic(3), cyclic(4), free_group(1), G("Z/2 + Z/2")]
    count = failures = 0
    for M in mids:
        for A in ends:
            firsts = list(ext_group(M, A).gen_extensions) + [trivial_ses(M, A)]
            for B in ends:
                seconds = list(ext_group(B, M).gen_extensions) + [trivial_ses(B, M)]
                for F in firsts:
                    for E in seconds:
                        count += 1
                        failures += not trivialize_splice(F, E).verify()
    les_fail = 0
    for S in ambient_sequences():
        for Gc in (cyclic(2), cyclic(4), cyclic(8)):
            les_fail += not les_check(S, Gc).ok
    dt = time.perf_counter() - t0
    ok = count >= 200 and failures == 0 and les_fail == 0 and dt < 300
    return ok, f"{count} splices trivialised ({failures} failures), les_check failures {les_fail}/9, {dt:.1f}s (limit 300s)"


# ---------------------------------------------------------------------------
# 9. Linear algebra substrate


def _snf_ok(M: IntMatrix) -> bool:
    r = snf(M)
    if r.U @ M @ r.V != r.D or not (is_unimodular(r.U) and is_unimodular(r.V)):
        return False
    d = r.diagonal
    if any(r.D[i, j] for i in range(r.D.rows) for j in range(r.D.cols) if i != j) or any(x < 0 for x in d):
        return False
    if any(b and (not a or b % a) for a, b in zip(d, d[1:])):
        return False
    if M.rows == M.cols and M.rows:
        prod = 1
        for x in d:
            prod *= x
        if prod != abs(det(M)):
            return False
    return True


def _hnf_ok(M: IntMatrix) -> bool:
    res = hnf(M)
    if M @ res.U != res.H or not is_unimodular(res.U):
        return False
    H = res.H
    last = -1
    for j in range(H.cols):
        nz = [i for i in range(H.rows) if H[i, j]]
        if not nz:
            if j < res.rank:
                return False
            continue
        p = nz[0]
        if j >= res.rank or p <= last or H[p, j] <= 0:
            return False
        if any(not (0 <= H[p, k] < H[p, j]) for k in range(j)):
            return False
        last = p
    return True


def adversarial_matrix() -> IntMatrix:
    # dense, full rank, entries near +-10^6: determinant around 10^48, cofactors grow accordingly
    rng = random.Random(10**6)
    return IntMatrix([[rng.choice((-1, 1)) * (10**6 - rng.randint(0, 999)) for _ in range(8)] for _ in range(8)])


def criterion_9():
    rng = random.Random(9)
    bad = 0
    for _ in range(1000):
        r, c = rng.randint(0, 8), rng.randint(0, 8)
        M = IntMatrix([[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)], cols=c)
        bad += not (_snf_ok(M) and _hnf_ok(M))
    M = adversarial_matrix()
    t0 = time.perf_counter()
    adv = _snf_ok(M) and _hnf_ok(M)
    dt = time.perf_counter() - t0
    ok = bad == 0 and adv and dt < 10
    return ok, f"1000 random matrices, {bad} failures; adversarial 8x8 exact={adv} in {dt:.3f}s (limit 10s)"


# ---------------------------------------------------------------------------
# 10. Path data and classification agree


def _components(B: AbGroup, A: AbGroup, rng: random.Random):
    """One extension per class, plus a re-presented copy of each."""
    X = ext_group(B, A)
    reps = []
    for c in X.elements():
        E = extension_from_class(c)
        E2 = represent(E, random_unimodular(rng, E.middle.gens)) if E.middle.gens > 1 else E
        reps.append((c, E, E2))
    return X, reps


def criterion_10(pair_budget: int = 4096):
    rng = random.Random(10)
    t0 = time.perf_counter()
    checked = disagreements = 0
    sampled_cases = []
    for B in SMALL_GROUPS:
        for A in SMALL_GROUPS:
            X, reps = _components(B, A, rng)
            seqs = [(c, E) for c, E, _ in reps] + [(c, E2) for c, _, E2 in reps]
            classes = [classify(S, X) for _, S in seqs]
            n = len(seqs)
            if n * n <= 4 * 64 * 64:
                idx = itertools.product(range(n), repeat=2)
            else:
                # every sequence against itself, its copy, and the zero class; then a fixed sample
                half = n // 2
                zero = [k for k in range(half) if classes[k].is_zero()][0]
                forced = [(k, k + half) for k in range(half)] + [(k, zero) for k in range(n)]
                sample = [(rng.randrange(n), rng.randrange(n)) for _ in range(pair_budget)]
                idx = forced + sample
                sampled_cases.append(f"({B}, {A}): {len(forced) + len(sample)} of {n * n} pairs")
            for i, j in idx:
                same = classes[i] == classes[j]
                found = find_path_data(seqs[i][1], seqs[j][1])
                if found is not None and not found.verify():
                    disagreements += 1
                disagreements += same != (found is not None)
                checked += 1
    dt = time.perf_counter() - t0
    detail = f"{checked} pairs over {len(SMALL_GROUPS) ** 2} (B, A), {disagreements} disagreements, {dt:.0f}s"
    if sampled_cases:
        detail += "; sampled: " + "; ".join(sampled_cases)
    return disagreements == 0, detail


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        report(n, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
