"""Constructive algorithms: a spectrum for every tile, a complement for
every spectral set, and the cardinality obstruction to spectrality.

Every construction returns the built partner together with a CaseTrace
recording which branch fired and the witnesses it consumed, so the output
is reproducible from the trace alone.  Branches that are impossible for
genuine input are implemented as explicit errors and double as detectors
of mislabelled input.  Scan order is ascending element index everywhere a
choice is free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .charsum import ZeroProfile, zero_set
from .errors import (
    ContradictionError,
    InvalidInputError,
    MissingPartnerError,
    NonSpectralSizeError,
)
from .group import ClassRep, GroupParams, GroupSet, _require_same_params, group_tables
from .oracle import (
    ORACLE_ORDER_LIMIT,
    find_complement_bruteforce,
    find_spectrum_bruteforce,
    verify_spectral_pair,
    verify_tiling_pair,
)
from .structure import classify_size

# Spectral-pair verification inside the constructions is skipped above this
# many difference tests; tiling verification is linear and always runs.
_VERIFY_DIFF_BUDGET = 2**21


@dataclass
class CaseTrace:
    """Which theorem branch produced a construction, plus its witnesses."""

    theorem: str
    case: str
    witnesses: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SizeObstruction:
    """Factorization |A| = m * p^s with 2 <= m <= p-1: no spectrum exists."""

    m: int
    s: int


def nonspectral_size_witness(A: GroupSet) -> SizeObstruction | None:
    """The (m, s) obstruction when |A| = m * p^s with 2 <= m <= p-1, else None."""
    if A.cardinality == 0:
        return None
    sc = classify_size(A.cardinality, A.params)
    if sc.kind == "mixed":
        return SizeObstruction(sc.m, sc.s)
    return None


# ---------------------------------------------------------------------------
# Shared builders


def _span_digits(params: GroupParams, positions: list[int]) -> list[int]:
    """All y in Z_{p^n} supported on the given digit positions."""
    p = params.p
    out = []
    for combo in product(range(p), repeat=len(positions)):
        y = 0
        for d, pos in zip(combo, positions):
            y += d * p**pos
        out.append(y)
    return out


def _verify_spectrum(A: GroupSet, B: GroupSet, context: str) -> None:
    if B.cardinality**2 <= _VERIFY_DIFF_BUDGET and not verify_spectral_pair(A, B):
        raise InvalidInputError(
            f"{context}: constructed spectrum failed verification; "
            "the input is not the tile it was claimed to be"
        )


def _verify_complement(A: GroupSet, T: GroupSet, context: str) -> None:
    if not verify_tiling_pair(A, T):
        raise InvalidInputError(
            f"{context}: constructed complement failed verification; "
            "the input is not the spectral set it was claimed to be"
        )


# ---------------------------------------------------------------------------
# Tile -> spectrum


def spectrum_from_tile(A: GroupSet, T: GroupSet | None = None) -> tuple[GroupSet, CaseTrace]:
    """Build a spectrum B for a tile A, with |B| = |A| and all nonzero
    differences of B in the zero set of A.

    A supplied complement T is verified and then drives the case split when
    |A| = p^t has only t-1 axis-zero levels; without one, a complement is
    searched when the group order is within the oracle cap.
    """
    q = A.params
    k = A.cardinality
    if k == 0:
        raise InvalidInputError("the empty set is not a tile")
    if T is not None:
        _require_same_params(q, T.params)
        if not verify_tiling_pair(A, T):
            raise InvalidInputError("supplied complement fails the tiling-pair check")
    if k == 1:
        return GroupSet.from_indices(q, [0]), CaseTrace("T2S-trivial", "Trivial")
    if k == q.order:
        return GroupSet.full(q), CaseTrace("T2S-trivial", "Trivial")

    sc = classify_size(k, q)
    if sc.kind != "pure_power":
        raise InvalidInputError(
            f"|A| = {k} does not divide the group order; A cannot be a tile"
        )
    t_exp = sc.s
    profile = zero_set(A)

    if t_exp == 1:
        # |A| = p: the multiples of any zero form a spectrum.
        zmask = profile.zero_mask()
        if zmask == 0:
            raise InvalidInputError("zero set is empty; a nontrivial tile cannot have one")
        z = q.element_from_index((zmask & -zmask).bit_length() - 1)
        B = GroupSet.from_elements(q, (z.scale(r) for r in range(q.p)))
        _verify_spectrum(A, B, "T2S-p")
        return B, CaseTrace("T2S-p", "Main", {"zero": [z.x, z.y]})

    levels_I = sorted(profile.I)
    if len(levels_I) == t_exp:
        B = GroupSet.from_elements(q, ((0, y) for y in _span_digits(q, levels_I)))
        _verify_spectrum(A, B, "T2S-pt")
        return B, CaseTrace("T2S-pt", "IFull", {"I": levels_I})
    if len(levels_I) != t_exp - 1:
        raise InvalidInputError(
            f"{len(levels_I)} axis-zero levels are incompatible with a tile of size "
            f"p^{t_exp}; A is not a tile"
        )

    if T is None:
        if q.order > ORACLE_ORDER_LIMIT:
            raise MissingPartnerError(
                "a complement is required for this case split and the group is too "
                "large for the brute-force search; pass T explicitly"
            )
        T = find_complement_bruteforce(A)
        if T is None:
            raise InvalidInputError("no tiling complement exists; A is not a tile")
    profile_T = zero_set(T)
    levels_J = sorted(profile_T.I)

    case, payload = _tile_spectrum_case(q, profile, profile_T, levels_I, levels_J)
    if case == "Case2":
        d, b_k = payload["d"], payload["b_k"]
        B = GroupSet.from_elements(
            q,
            (
                ((s0 * d) % q.p, s0 * q.p**b_k + y)
                for s0 in range(q.p)
                for y in _span_digits(q, levels_I)
            ),
        )
        _verify_spectrum(A, B, "T2S-pt Case2")
        return B, CaseTrace(
            "T2S-pt", "Case2", {"d": d, "b_k": b_k, "I": levels_I, "J": levels_J}
        )
    if case == "Case3":
        B = GroupSet.from_elements(
            q, ((s0, y) for s0 in range(q.p) for y in _span_digits(q, levels_I))
        )
        _verify_spectrum(A, B, "T2S-pt Case3")
        return B, CaseTrace("T2S-pt", "Case3", {"I": levels_I, "J": levels_J})
    if case == "Case1":
        raise ContradictionError(
            "the complement carries the zero pattern of a spectrum larger than "
            "itself (branch Case1); the pair cannot be a genuine tiling pair",
            branch="Case1",
        )
    if case == "Case3-axis":
        raise ContradictionError(
            "(1,0) annihilates the complement alongside all its mixed zeros "
            "(branch Case3); the pair cannot be a genuine tiling pair",
            branch="Case3-axis",
        )
    raise InvalidInputError(
        "no construction case matches the zero sets; the pair is not a genuine "
        "tiling pair"
    )


def _tile_spectrum_case(
    params: GroupParams,
    profile_A: ZeroProfile,
    profile_T: ZeroProfile,
    levels_I: list[int],
    levels_J: list[int],
) -> tuple[str, dict]:
    """Case split for |A| = p^t with t-1 axis-zero levels.

    Checked in order: Case2 (a mixed zero of A at a complement level, below
    which A carries every mixed zero), then the all-mixed-zeros premise
    (Case3, where (1,0) must annihilate A, not T), then the mirrored Case1
    pattern on T.  The last two returns only fire on non-genuine pairs.
    """
    p = params.p

    def full_level(profile: ZeroProfile, i: int) -> bool:
        return all(ClassRep.mixed(c, i) in profile.reps for c in range(p))

    for b_k in levels_J:
        if not all(full_level(profile_A, a) for a in levels_I if a < b_k):
            continue
        for d in range(p):
            if ClassRep.mixed(d, b_k) in profile_A.reps:
                return "Case2", {"d": d, "b_k": b_k}

    if all(full_level(profile_A, a) for a in levels_I) and all(
        full_level(profile_T, b) for b in levels_J
    ):
        if profile_T.has_unit_axis:
            return "Case3-axis", {}
        if profile_A.has_unit_axis:
            return "Case3", {}

    for a_k in levels_I:
        if not all(full_level(profile_T, b) for b in levels_J if b < a_k):
            continue
        for d in range(p):
            if ClassRep.mixed(d, a_k) in profile_T.reps:
                return "Case1", {"d": d, "a_k": a_k}
    return "NoCase", {}


# ---------------------------------------------------------------------------
# Spectral set -> tiling complement


def complement_from_spectrum(A: GroupSet, B: GroupSet | None = None) -> tuple[GroupSet, CaseTrace]:
    """Build a tiling complement T for a spectral set A, |A| * |T| = |G|.

    A supplied spectrum B is verified and consulted where the case split
    needs its axis-zero levels or a difference witness; without one, a
    spectrum is searched when the group order is within the oracle cap.
    """
    q = A.params
    k = A.cardinality
    if k == 0:
        raise InvalidInputError("the empty set is not spectral")
    if B is not None:
        _require_same_params(q, B.params)
        if B.cardinality**2 <= _VERIFY_DIFF_BUDGET and not verify_spectral_pair(A, B):
            raise InvalidInputError("supplied spectrum fails the spectral-pair check")
    if k == 1:
        T = GroupSet.full(q)
        return T, CaseTrace("S2T-trivial", "Trivial")
    if k > q.pn:
        if A.is_full():
            return GroupSet.from_indices(q, [0]), CaseTrace("S2T-big", "Main")
        raise InvalidInputError(
            f"a spectral set with |A| = {k} > p^n = {q.pn} must be the whole group"
        )

    sc = classify_size(k, q)
    if sc.kind == "mixed":
        raise NonSpectralSizeError(
            f"|A| = {sc.m} * {q.p}^{sc.s} with 2 <= m <= p-1 admits no spectrum",
            witness=SizeObstruction(sc.m, sc.s),
        )
    if sc.kind == "other":
        if sc.s == 0:
            raise InvalidInputError(
                f"|A| = {k} is not divisible by p = {q.p}; a nontrivial spectral "
                "set must have a nonempty zero set, which forces p to divide |A|"
            )
        # m * p^s with m > p: existence is refuted by search when feasible.
        if B is None:
            if q.order > ORACLE_ORDER_LIMIT:
                raise MissingPartnerError(
                    "cannot classify this cardinality without a spectrum search; "
                    "pass B explicitly or use a smaller group"
                )
            if find_spectrum_bruteforce(A) is None:
                raise InvalidInputError(f"A is not spectral (no spectrum of size {k} exists)")
        raise InvalidInputError(
            f"|A| = {k} matches no complement construction; such a set cannot be spectral"
        )

    s = sc.s
    profile = zero_set(A)

    if s == 1:
        T, trace = _complement_size_p(q, profile)
        _verify_complement(A, T, f"S2T-p {trace.case}")
        return T, trace

    levels_I = sorted(profile.I)
    if len(levels_I) == s:
        positions = [q.n - 1 - i for i in range(q.n) if i not in profile.I]
        T = GroupSet.from_elements(
            q, ((x, y) for x in range(q.p) for y in _span_digits(q, positions))
        )
        _verify_complement(A, T, "S2T-ps Case1")
        return T, CaseTrace("S2T-ps", "Case1", {"I": levels_I})
    if len(levels_I) != s - 1:
        raise InvalidInputError(
            f"{len(levels_I)} axis-zero levels are incompatible with a spectral set "
            f"of size p^{s}; A is not spectral"
        )

    if B is None:
        if q.order > ORACLE_ORDER_LIMIT:
            raise MissingPartnerError(
                "a spectrum is required for this case split and the group is too "
                "large for the brute-force search; pass B explicitly"
            )
        B = find_spectrum_bruteforce(A)
        if B is None:
            raise InvalidInputError("A is not spectral (no spectrum exists)")
    profile_B = zero_set(B)
    levels_J = sorted(profile_B.I)

    if len(levels_J) == s - 1:
        positions = [i for i in range(q.n) if i not in profile_B.I]
        T = GroupSet.from_elements(q, ((0, y) for y in _span_digits(q, positions)))
        _verify_complement(A, T, "S2T-ps Case2")
        return T, CaseTrace("S2T-ps", "Case2", {"I": levels_I, "J": levels_J})
    if len(levels_J) != s:
        raise InvalidInputError(
            f"{len(levels_J)} axis-zero levels are incompatible with a spectrum of "
            f"size p^{s}; the pair is not genuine"
        )

    j0 = next((j for j in levels_J if (q.n - 1 - j) not in profile.I), None)
    if j0 is None:
        raise InvalidInputError(
            "every complement level of the spectrum mirrors into the zero set of A; "
            "impossible for a genuine pair of this size"
        )
    c, pair = _case3_witness(q, B, j0)
    positions = [q.n - 1 - i for i in range(q.n) if i not in profile.I]
    T = GroupSet.from_elements(
        q,
        (((-c * _digit(y, j0, q.p)) % q.p, y) for y in _span_digits(q, positions)),
    )
    _verify_complement(A, T, "S2T-ps Case3")
    return T, CaseTrace(
        "S2T-ps",
        "Case3",
        {"I": levels_I, "J": levels_J, "j0": j0, "c": c, "pair": pair},
    )


def _digit(y: int, pos: int, p: int) -> int:
    return (y // p**pos) % p


def _complement_size_p(params: GroupParams, profile: ZeroProfile) -> tuple[GroupSet, CaseTrace]:
    q = params
    if profile.has_unit_axis:
        T = GroupSet.from_elements(q, ((0, y) for y in range(q.pn)))
        return T, CaseTrace("S2T-p", "Case1")
    if profile.I:
        level = min(profile.I)
        positions = [i for i in range(q.n) if i != q.n - 1 - level]
        T = GroupSet.from_elements(
            q, ((x, y) for x in range(q.p) for y in _span_digits(q, positions))
        )
        return T, CaseTrace("S2T-p", "Case2", {"level": level})
    mixed = sorted(
        (r for r in profile.reps if r.kind == "mixed"),
        key=lambda r: r.element(q).index,
    )
    if not mixed:
        raise InvalidInputError("zero set is empty; a nontrivial spectral set cannot have one")
    rep = mixed[0]
    c, level = rep.c, rep.i
    cinv = pow(c, -1, q.p)
    T = GroupSet.from_elements(
        q,
        (((-cinv * _digit(y, q.n - 1 - level, q.p)) % q.p, y) for y in range(q.pn)),
    )
    return T, CaseTrace("S2T-p", "Case3", {"c": c, "level": level})


def _case3_witness(params: GroupParams, B: GroupSet, j0: int) -> tuple[int, list[list[int]]]:
    """First pair (t,x), (t',x') of B with t != t' and x - x' of exact
    valuation n-1-j0; returns c = c' * (t-t')^{-1} mod p and the pair."""
    q = params
    target = q.n - 1 - j0
    idxs = B.indices()
    pn = q.pn
    for ii in range(len(idxs)):
        t1, x1 = divmod(idxs[ii], pn)
        for jj in range(ii + 1, len(idxs)):
            t2, x2 = divmod(idxs[jj], pn)
            if t1 == t2:
                continue
            d = (x1 - x2) % pn
            if d == 0:
                continue
            v = 0
            dd = d
            while dd % q.p == 0:
                dd //= q.p
                v += 1
            if v != target:
                continue
            cp = dd % q.p
            c = (cp * pow((t1 - t2) % q.p, -1, q.p)) % q.p
            return c, [[t1, x1], [t2, x2]]
    raise InvalidInputError(
        "no difference of the spectrum has the required valuation; the pair is "
        "not genuine"
    )
