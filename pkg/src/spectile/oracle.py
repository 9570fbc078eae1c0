"""Ground-truth searches and the exhaustive tile/spectral cross-check.

The verifiers are direct restatements of the pair conditions.  The
searches are deterministic brute force: a spectrum is a size-|A| clique
containing 0 in the graph whose edges are differences lying in the zero
set, found in lexicographic branch order; a tiling complement is an exact
cover by translates, normalized so the cover always uses the translate by
0, with first-fail cell selection and translate columns tried in
ascending index order.

enumerate_and_check sweeps a whole group (optionally restricted to given
cardinalities), decides tile and spectral for every subset by the oracles,
cross-checks the constructive algorithms on every positive, and reports
any disagreement.  Work is split into shards whose merge is independent
of the shard count, so reports are byte-identical however the sweep is
partitioned.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import time
from dataclasses import dataclass
from itertools import combinations, islice
from math import comb

from .charsum import profile_from_key, zero_set
from .errors import CapacityError, ParameterError
from .group import Element, GroupParams, GroupSet, GroupTables, _require_same_params, group_tables
from .structure import classify_size, divisibility_exponent

# Largest group order accepted by the per-set searches.
ORACLE_ORDER_LIMIT = 2**16
# Full power-set sweeps are allowed up to this order ...
ENUM_FULL_LIMIT = 27
# ... and size-filtered sweeps up to this order, within a subset budget.
ENUM_FILTERED_LIMIT = 32
ENUM_SUBSET_BUDGET = 2**27


# ---------------------------------------------------------------------------
# Pair verifiers


def spectral_pair_violation(A: GroupSet, B: GroupSet) -> Element | str | None:
    """None if (A, B) is a spectral pair, else the first offending difference.

    Scans pairs u < v of B in ascending index order and returns v - u for
    the first difference outside the zero set of A (the zero set is closed
    under negation, so one direction decides both); returns a message
    string when the sizes already disagree.
    """
    _require_same_params(A.params, B.params)
    if A.cardinality != B.cardinality:
        return f"|A| = {A.cardinality} but |B| = {B.cardinality}"
    t = group_tables(A.params)
    zmask = zero_set(A).zero_mask()
    idxs = B.indices()
    for i, u in enumerate(idxs):
        for v in idxs[i + 1:]:
            d = t.sub_index(v, u)
            if not zmask >> d & 1:
                return A.params.element_from_index(d)
    return None


def verify_spectral_pair(A: GroupSet, B: GroupSet) -> bool:
    """True iff |A| = |B| and every nonzero difference of B annihilates A."""
    return spectral_pair_violation(A, B) is None


def tiling_pair_violation(A: GroupSet, T: GroupSet) -> Element | str | None:
    """None if (A, T) is a tiling pair, else the first offending witness.

    Returns a message when |A| * |T| != |G|, otherwise the lowest-index
    nonzero element shared by the two difference sets.
    """
    _require_same_params(A.params, T.params)
    q = A.params
    if A.cardinality * T.cardinality != q.order:
        return f"|A| * |T| = {A.cardinality} * {T.cardinality} != {q.order}"
    t = group_tables(q)
    diff_a = _difference_mask(t, A.mask)
    diff_t = _difference_mask(t, T.mask)
    shared = (diff_a & diff_t) >> 1
    if shared:
        return q.element_from_index((shared & -shared).bit_length())
    return None


def verify_tiling_pair(A: GroupSet, T: GroupSet) -> bool:
    """True iff |A| * |T| = |G| and the difference sets meet only at 0."""
    return tiling_pair_violation(A, T) is None


def _difference_mask(t: GroupTables, mask: int) -> int:
    out = 0
    m = mask
    while m:
        b = m & -m
        m ^= b
        out |= t.translate_mask(mask, t.neg_index(b.bit_length() - 1))
    return out


# ---------------------------------------------------------------------------
# Brute-force searches


def _find_clique(t: GroupTables, zmask: int, k: int) -> list[int] | None:
    """First size-k clique through vertex 0, in lexicographic branch order.

    Vertices are element indices; u and v are adjacent iff u - v lies in
    zmask.  Restricting to cliques containing 0 loses nothing because the
    edge relation is translation invariant.
    """
    if k <= 0:
        return None
    if k == 1:
        return [0]
    translate = t.translate_mask
    nbr_cache: dict[int, int] = {}
    chosen = [0]

    def nbr(v: int) -> int:
        m = nbr_cache.get(v)
        if m is None:
            m = translate(zmask, v)
            nbr_cache[v] = m
        return m

    def dfs(allowed: int, need: int) -> bool:
        cand = allowed
        while cand:
            if cand.bit_count() < need:
                return False
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            chosen.append(v)
            if need == 1:
                return True
            if dfs(allowed & nbr(v) & ~((b << 1) - 1), need - 1):
                return True
            chosen.pop()
        return False

    if dfs(zmask, k - 1):
        return chosen
    return None


def _find_cover(t: GroupTables, mask: int) -> list[int] | None:
    """Translation indices g with disjoint translates mask+g covering the group.

    The translate by 0 is always used (any tiling complement can be
    translated to contain 0).  Cell selection is first-fail: the uncovered
    index with the fewest usable translates, lowest index on ties.
    """
    k = mask.bit_count()
    if k == 0 or t.order % k:
        return None
    full = t.full_mask
    if mask == full:
        return [0]
    idxs = []
    m = mask
    while m:
        b = m & -m
        idxs.append(b.bit_length() - 1)
        m ^= b
    translate = t.translate_mask
    sub = t.sub_index
    trans_cache: dict[int, int] = {0: mask}
    picks = [0]

    def dfs(cover: int) -> bool:
        if cover == full:
            return True
        best: list[int] | None = None
        m = full & ~cover
        while m:
            b = m & -m
            m ^= b
            c = b.bit_length() - 1
            cands = []
            for a in idxs:
                g = sub(c, a)
                ag = trans_cache.get(g)
                if ag is None:
                    ag = translate(mask, g)
                    trans_cache[g] = ag
                if not ag & cover:
                    cands.append(g)
            if not cands:
                return False
            if best is None or len(cands) < len(best):
                best = cands
                if len(cands) == 1:
                    break
        best.sort()
        for g in best:
            picks.append(g)
            if dfs(cover | trans_cache[g]):
                return True
            picks.pop()
        return False

    if dfs(mask):
        return sorted(picks)
    return None


def _check_oracle_cap(params: GroupParams) -> None:
    if params.order > ORACLE_ORDER_LIMIT:
        raise CapacityError(
            f"group order {params.order} exceeds the oracle cap {ORACLE_ORDER_LIMIT}"
        )


def find_spectrum_bruteforce(A: GroupSet) -> GroupSet | None:
    """Some B with verify_spectral_pair(A, B), or None if none exists.

    The empty set is treated as non-spectral.  The returned spectrum always
    contains (0, 0) and is the lexicographically first such set.
    """
    _check_oracle_cap(A.params)
    if A.cardinality == 0:
        return None
    t = group_tables(A.params)
    zmask = zero_set(A).zero_mask()
    clique = _find_clique(t, zmask, A.cardinality)
    if clique is None:
        return None
    return GroupSet.from_indices(A.params, clique)


def find_complement_bruteforce(A: GroupSet) -> GroupSet | None:
    """Some T with verify_tiling_pair(A, T), or None; deterministic first solution."""
    _check_oracle_cap(A.params)
    if A.cardinality == 0:
        return None
    cover = _find_cover(group_tables(A.params), A.mask)
    if cover is None:
        return None
    return GroupSet.from_indices(A.params, cover)


# ---------------------------------------------------------------------------
# Canonical forms under translations and unit scalings


def canonicalize(A: GroupSet) -> GroupSet:
    """Lexicographically smallest bitmap in the orbit {a*A + g : a unit, g in G}."""
    t = group_tables(A.params)
    best = A.mask
    for a in A.params.units():
        base = A.mask if a == 1 else t.scale_mask(A.mask, a)
        for g in range(t.order):
            img = t.translate_mask(base, g)
            if img < best:
                best = img
    return GroupSet(A.params, best)


def _is_canonical(t: GroupTables, mask: int) -> bool:
    for a in t.params.units():
        base = mask if a == 1 else t.scale_mask(mask, a)
        for g in range(t.order):
            if t.translate_mask(base, g) < mask:
                return False
    return True


# ---------------------------------------------------------------------------
# Exhaustive enumeration


@dataclass(frozen=True)
class Mismatch:
    """One failed cross-check, recorded with the offending subset."""

    kind: str
    mask: int
    size: int
    detail: str


@dataclass
class EnumerationReport:
    """Outcome of an exhaustive sweep; mismatches must be empty.

    wall_time is informational and excluded from the canonical
    serialization so reports compare byte-for-byte across shard counts.
    """

    params: GroupParams
    size_filter: tuple[int, ...] | None
    subsets_examined: int
    orbits_examined: int | None
    tiles: int
    spectral: int
    mismatches: list[Mismatch]
    wall_time: float

    def canonical_dict(self) -> dict:
        from .setio import serialize_set

        return {
            "p": self.params.p,
            "n": self.params.n,
            "size_filter": list(self.size_filter) if self.size_filter is not None else None,
            "subsets_examined": self.subsets_examined,
            "orbits_examined": self.orbits_examined,
            "tiles": self.tiles,
            "spectral": self.spectral,
            "mismatches": [
                {
                    "kind": mm.kind,
                    "size": mm.size,
                    "detail": mm.detail,
                    "set": serialize_set(GroupSet(self.params, mm.mask)),
                }
                for mm in self.mismatches
            ],
        }

    def canonical_json(self) -> str:
        return json.dumps(self.canonical_dict(), sort_keys=True, indent=2) + "\n"


def _run_shard(args: tuple) -> tuple:
    # One worker's share of the sweep.  Must stay importable at module level
    # so multiprocessing can dispatch it.
    from . import constructions

    p, n, sizes, use_canonical, shard_i, shard_n = args
    params = GroupParams(p, n)
    t = group_tables(params)
    order = t.order
    full = t.full_mask
    all_reps = (1 << t.rep_count) - 1
    pn = t.pn
    bits = [1 << i for i in range(order)]

    witness_sizes = frozenset(
        k for k in range(1, order + 1) if classify_size(k, params).kind == "mixed"
    )
    divpow_cache: dict[int, int] = {}
    zmask_cache: dict[int, int] = {}
    smemo: dict[int, int] = {}  # (pkey << 6 | k) -> spectrum mask, 0 if none

    examined = 0
    orbits = 0
    tiles = 0
    spectral = 0
    mismatches: list[Mismatch] = []
    profile_key = t.profile_key

    def process(mask: int, k: int) -> None:
        nonlocal examined, orbits, tiles, spectral
        examined += 1
        if use_canonical:
            if not _is_canonical(t, mask):
                return
            orbits += 1
        if k == 0:
            return
        pkey = profile_key(mask)
        dp = divpow_cache.get(pkey)
        if dp is None:
            dp = p ** divisibility_exponent(profile_from_key(params, pkey))
            divpow_cache[pkey] = dp
        if k % dp:
            mismatches.append(
                Mismatch("divisibility", mask, k, f"certified divisor {dp} does not divide {k}")
            )
        skey = pkey << 6 | k
        bmask = smemo.get(skey, -1)
        if bmask == -1:
            zm = zmask_cache.get(pkey)
            if zm is None:
                zm = t.zero_mask_for_key(pkey)
                zmask_cache[pkey] = zm
            clique = _find_clique(t, zm, k)
            bmask = 0
            if clique is not None:
                for v in clique:
                    bmask |= bits[v]
            smemo[skey] = bmask
        sp = bmask != 0
        cover = _find_cover(t, mask) if order % k == 0 else None
        tl = cover is not None
        if tl:
            tiles += 1
        if sp:
            spectral += 1
        if tl != sp:
            mismatches.append(
                Mismatch("theorem", mask, k, f"tile={tl} but spectral={sp}")
            )
        if sp and k in witness_sizes:
            mismatches.append(
                Mismatch("witness", mask, k, "spectrum found despite size obstruction")
            )
        if sp and k > pn and mask != full:
            mismatches.append(
                Mismatch("pigeonhole", mask, k, "spectral set larger than p^n is not the group")
            )
        if tl:
            A = GroupSet(params, mask)
            T = GroupSet.from_indices(params, cover)
            try:
                constructions.spectrum_from_tile(A, T)
            except Exception as exc:  # any failure here is a finding
                mismatches.append(Mismatch("construction", mask, k, f"spectrum_from_tile: {exc}"))
        if sp:
            A = GroupSet(params, mask)
            B = GroupSet(params, bmask)
            try:
                T2, _ = constructions.complement_from_spectrum(A, B)
            except Exception as exc:
                mismatches.append(
                    Mismatch("construction", mask, k, f"complement_from_spectrum: {exc}")
                )
            else:
                if pkey | profile_key(T2.mask) != all_reps:
                    mismatches.append(
                        Mismatch("zero-cover", mask, k, "zero sets of tiling pair do not cover")
                    )

    if sizes is None:
        total = 1 << order
        lo = total * shard_i // shard_n
        hi = total * (shard_i + 1) // shard_n
        for mask in range(lo, hi):
            process(mask, mask.bit_count())
    else:
        for k in sizes:
            for combo in islice(combinations(range(order), k), shard_i, None, shard_n):
                mask = 0
                for i in combo:
                    mask |= bits[i]
                process(mask, k)

    return (examined, orbits if use_canonical else None, tiles, spectral, mismatches)


def enumerate_and_check(
    params: GroupParams,
    size_filter=None,
    use_canonical: bool = False,
    shards: int = 1,
) -> EnumerationReport:
    """Decide tile and spectral for every subset and cross-check everything.

    With a size_filter, only subsets of the listed cardinalities are
    examined (one itertools.combinations stream per size, strided across
    shards); without one, all 2^|G| bitmaps are split into contiguous
    ranges.  Per subset: both oracle verdicts, the divisibility check on
    the zero profile, the cardinality obstruction, the pigeonhole bound,
    and a full construction round trip on every tile and every spectral
    set.  Counts merge by addition and mismatches sort by (mask, kind), so
    the report does not depend on the shard decomposition.
    """
    start = time.perf_counter()
    if shards < 1:
        raise ParameterError(f"shards must be >= 1, got {shards}")
    order = params.order
    if size_filter is None:
        sizes = None
        if order > ENUM_FULL_LIMIT:
            raise CapacityError(
                f"full power-set enumeration capped at order {ENUM_FULL_LIMIT}; "
                f"got {order} (use a size filter)"
            )
        total = 1 << order
    else:
        sizes = tuple(sorted(set(size_filter)))
        for k in sizes:
            if not 0 <= k <= order:
                raise ParameterError(f"size {k} out of range [0, {order}]")
        if order > ENUM_FILTERED_LIMIT:
            raise CapacityError(
                f"size-filtered enumeration capped at order {ENUM_FILTERED_LIMIT}; got {order}"
            )
        total = sum(comb(order, k) for k in sizes)
        if order > ENUM_FULL_LIMIT and total > ENUM_SUBSET_BUDGET:
            raise CapacityError(
                f"{total} subsets exceed the enumeration budget {ENUM_SUBSET_BUDGET}"
            )

    args = [(params.p, params.n, sizes, use_canonical, i, shards) for i in range(shards)]
    if shards == 1:
        results = [_run_shard(args[0])]
    else:
        workers = min(shards, os.cpu_count() or 1)
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_run_shard, args)

    examined = sum(r[0] for r in results)
    orbits = sum(r[1] for r in results) if use_canonical else None
    tiles = sum(r[2] for r in results)
    spectral = sum(r[3] for r in results)
    mismatches: list[Mismatch] = []
    for r in results:
        mismatches.extend(r[4])
    mismatches.sort(key=lambda mm: (mm.mask, mm.kind))
    if examined != total:
        raise RuntimeError(f"shard accounting error: {examined} != {total}")
    return EnumerationReport(
        params=params,
        size_filter=sizes,
        subsets_examined=examined,
        orbits_examined=orbits,
        tiles=tiles,
        spectral=spectral,
        mismatches=mismatches,
        wall_time=time.perf_counter() - start,
    )
