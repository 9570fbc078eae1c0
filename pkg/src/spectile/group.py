"""Arithmetic of the group Z_p x Z_{p^n}.

Elements are pairs (x, y) with x a residue mod p and y a residue mod p^n.
A subset is a bitmap over the linear indices

    index(x, y) = x * p^n + y,

so membership, translation, and difference sets are word operations on a
single Python integer.  The inner product used throughout is

    <u, v> = p^(n-1) * u.x * v.x + u.y * v.y   (mod p^n),

and the multiplicative action of the units of Z_{p^n} is componentwise:
s * (x, y) = (s*x mod p, s*y mod p^n).  Every nonzero element is a unit
multiple of exactly one representative of the form (1, 0) or (c, p^i);
those representatives index the unit-equivalence classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ParameterError

# Largest admissible group order p^(n+1); practical runs stay far below this.
DEFAULT_ORDER_LIMIT = 2**32

# Per-class fiber bitmaps are only tabulated for groups this small.  The
# enumeration harness needs them; single-set operations fall back to counting.
_FIBER_TABLE_LIMIT = 4096
# Below this order the translation rotation masks are prebuilt as lists
# (the enumeration hot path); above it they are cached per offset on demand.
_EAGER_TABLE_LIMIT = 4096


def is_prime(p: int) -> bool:
    """Deterministic trial-division primality test; group orders keep p small."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GroupParams:
    """The pair (p, n) fixing the ambient group Z_p x Z_{p^n}."""

    p: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ParameterError(f"p must be a prime integer, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n!r}")
        if self.p ** (self.n + 1) > DEFAULT_ORDER_LIMIT:
            raise ParameterError(
                f"group order p^(n+1) = {self.p}^{self.n + 1} exceeds the "
                f"limit {DEFAULT_ORDER_LIMIT}"
            )

    @property
    def pn(self) -> int:
        """Order p^n of the second factor."""
        return self.p**self.n

    @property
    def order(self) -> int:
        """Group order p^(n+1)."""
        return self.p ** (self.n + 1)

    def element(self, x: int, y: int) -> "Element":
        return Element(self, x, y)

    def element_from_index(self, index: int) -> "Element":
        if not 0 <= index < self.order:
            raise ParameterError(f"element index {index} out of range [0, {self.order})")
        x, y = divmod(index, self.pn)
        return Element(self, x, y)

    def zero(self) -> "Element":
        return Element(self, 0, 0)

    def elements(self) -> Iterator["Element"]:
        """All group elements in ascending index order."""
        for index in range(self.order):
            yield self.element_from_index(index)

    def units(self) -> list[int]:
        """Residues of Z_{p^n} coprime to p, ascending."""
        return [a for a in range(1, self.pn) if a % self.p != 0]


@dataclass(frozen=True)
class Element:
    """A group element (x, y) with 0 <= x < p and 0 <= y < p^n."""

    params: GroupParams
    x: int
    y: int

    def __post_init__(self) -> None:
        if not (0 <= self.x < self.params.p and 0 <= self.y < self.params.pn):
            raise ParameterError(
                f"element ({self.x}, {self.y}) out of range for p={self.params.p}, "
                f"n={self.params.n}"
            )

    @property
    def index(self) -> int:
        return self.x * self.params.pn + self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __add__(self, other: "Element") -> "Element":
        _require_same_params(self.params, other.params)
        q = self.params
        return Element(q, (self.x + other.x) % q.p, (self.y + other.y) % q.pn)

    def __sub__(self, other: "Element") -> "Element":
        _require_same_params(self.params, other.params)
        q = self.params
        return Element(q, (self.x - other.x) % q.p, (self.y - other.y) % q.pn)

    def __neg__(self) -> "Element":
        q = self.params
        return Element(q, (-self.x) % q.p, (-self.y) % q.pn)

    def scale(self, s: int) -> "Element":
        """Scalar action s * (x, y) = (s*x mod p, s*y mod p^n) for any integer s."""
        q = self.params
        return Element(q, (s * self.x) % q.p, (s * self.y) % q.pn)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def _require_same_params(a: GroupParams, b: GroupParams) -> None:
    if a != b:
        raise ParameterError(f"mismatched group parameters: {a} vs {b}")


@dataclass(frozen=True)
class ClassRep:
    """Representative of a unit-equivalence class: (1,0), (c, p^i), or zero.

    kind is one of "zero", "unit_axis", "mixed"; c and i are meaningful for
    "mixed" only.
    """

    kind: str
    c: int = 0
    i: int = 0

    @classmethod
    def zero(cls) -> "ClassRep":
        return cls("zero")

    @classmethod
    def unit_axis(cls) -> "ClassRep":
        return cls("unit_axis")

    @classmethod
    def mixed(cls, c: int, i: int) -> "ClassRep":
        return cls("mixed", c, i)

    def is_zero(self) -> bool:
        return self.kind == "zero"

    def element(self, params: GroupParams) -> Element:
        """The defining element of the class: (1,0) for the axis, (c, p^i) for mixed."""
        if self.kind == "zero":
            return params.zero()
        if self.kind == "unit_axis":
            return params.element(1 % params.p, 0)
        return params.element(self.c, params.p**self.i)

    def sort_key(self) -> tuple[int, int, int]:
        """Report order: (1,0) first, then (c, p^i) ordered by (i, c)."""
        if self.kind == "zero":
            return (-1, 0, 0)
        if self.kind == "unit_axis":
            return (0, 0, 0)
        return (1, self.i, self.c)

    def label(self) -> str:
        if self.kind == "zero":
            return "(0,0)"
        if self.kind == "unit_axis":
            return "(1,0)"
        return f"({self.c},p^{self.i})"


@dataclass(frozen=True)
class GroupSet:
    """A subset of Z_p x Z_{p^n} stored as a bitmap over element indices."""

    params: GroupParams
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.params.order:
            raise ParameterError("bitmap has bits outside the element index range")

    @classmethod
    def empty(cls, params: GroupParams) -> "GroupSet":
        return cls(params, 0)

    @classmethod
    def full(cls, params: GroupParams) -> "GroupSet":
        return cls(params, (1 << params.order) - 1)

    @classmethod
    def from_indices(cls, params: GroupParams, indices) -> "GroupSet":
        mask = 0
        for i in indices:
            if not 0 <= i < params.order:
                raise ParameterError(f"element index {i} out of range [0, {params.order})")
            mask |= 1 << i
        return cls(params, mask)

    @classmethod
    def from_elements(cls, params: GroupParams, elements) -> "GroupSet":
        mask = 0
        for e in elements:
            if isinstance(e, Element):
                _require_same_params(params, e.params)
                idx = e.index
            else:
                x, y = e
                idx = Element(params, x, y).index
            mask |= 1 << idx
        return cls(params, mask)

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, e: Element) -> bool:
        _require_same_params(self.params, e.params)
        return bool(self.mask >> e.index & 1)

    def indices(self) -> list[int]:
        out = []
        m = self.mask
        while m:
            b = m & -m
            out.append(b.bit_length() - 1)
            m ^= b
        return out

    def elements(self) -> list[Element]:
        return [self.params.element_from_index(i) for i in self.indices()]

    def is_full(self) -> bool:
        return self.mask == (1 << self.params.order) - 1


# ---------------------------------------------------------------------------
# Core operations


def inner_product(u: Element, v: Element) -> int:
    """<u, v> = p^(n-1) * u.x * v.x + u.y * v.y, reduced mod p^n."""
    _require_same_params(u.params, v.params)
    q = u.params
    return (q.p ** (q.n - 1) * u.x * v.x + u.y * v.y) % q.pn


def digits(t: int, p: int, m: int) -> tuple[int, ...]:
    """Base-p digits (t[0], ..., t[m-1]) of t, least significant first."""
    if not 0 <= t < p**m:
        raise ParameterError(f"t={t} out of range [0, {p}^{m})")
    out = []
    for _ in range(m):
        t, d = divmod(t, p)
        out.append(d)
    return tuple(out)


def valuation(t: int, p: int, m: int) -> int | None:
    """Least i with t[i] != 0 in base p, or None for t = 0."""
    if not 0 <= t < p**m:
        raise ParameterError(f"t={t} out of range [0, {p}^{m})")
    if t == 0:
        return None
    i = 0
    while t % p == 0:
        t //= p
        i += 1
    return i


def canonical_rep(u: Element) -> ClassRep:
    """The unique class representative with u = s * rep for some unit s.

    Nonzero classes contain exactly one element of the form (1, 0) or
    (c, p^i), so no tie-breaking is ever exercised.
    """
    if u.is_zero():
        return ClassRep.zero()
    if u.y == 0:
        return ClassRep.unit_axis()
    p = u.params.p
    i = 0
    y = u.y
    while y % p == 0:
        y //= p
        i += 1
    c = (u.x * pow(y % p, -1, p)) % p
    return ClassRep.mixed(c, i)


def class_members(rep: ClassRep, params: GroupParams) -> GroupSet:
    """All elements of a unit-equivalence class, as a set."""
    if rep.is_zero():
        return GroupSet.from_indices(params, [0])
    e = rep.element(params)
    return GroupSet.from_elements(params, (e.scale(a) for a in params.units()))


def scale_translate(A: GroupSet, a: int, g: Element) -> GroupSet:
    """The image {a * e + g : e in A} for a unit a of Z_{p^n}."""
    _require_same_params(A.params, g.params)
    q = A.params
    a %= q.pn
    if a % q.p == 0:
        raise ParameterError(f"a={a} is not a unit of Z_{{{q.p}^{q.n}}}")
    t = group_tables(q)
    return GroupSet(q, t.translate_mask(t.scale_mask(A.mask, a), g.index))


def difference_set(A: GroupSet) -> GroupSet:
    """The set {a - a' : a, a' in A}; contains (0,0) whenever A is nonempty."""
    t = group_tables(A.params)
    out = 0
    for idx in A.indices():
        out |= t.translate_mask(A.mask, t.neg_index(idx))
    return GroupSet(A.params, out)


# ---------------------------------------------------------------------------
# Cached per-group tables


def _rep_id(p: int, pn: int, x: int, y: int) -> int:
    # unit_axis is id 0; mixed(c, i) is id 1 + i*p + c
    if y == 0:
        return 0
    i = 0
    while y % p == 0:
        y //= p
        i += 1
    c = (x * pow(y % p, -1, p)) % p
    return 1 + i * p + c


class GroupTables:
    """Lookup structures for one group, shared by all hot paths.

    Everything sized in the group order is built lazily so that large (but
    in-cap) groups only pay for the tables their operations actually touch;
    below _EAGER_TABLE_LIMIT the rotation masks are prebuilt as lists, which
    the enumeration hot loop relies on.
    """

    __slots__ = (
        "params", "p", "n", "pn", "pn1", "order", "full_mask", "phi_degree",
        "reps", "rep_count", "rep_elem_index", "_class_id", "_class_masks",
        "_fibers", "_rot_keep", "_rot_move",
    )

    def __init__(self, params: GroupParams) -> None:
        p, n = params.p, params.n
        pn = p**n
        order = p * pn
        self.params = params
        self.p = p
        self.n = n
        self.pn = pn
        self.pn1 = p ** (n - 1)
        self.order = order
        self.full_mask = (1 << order) - 1
        self.phi_degree = self.pn1 * (p - 1)

        reps = [ClassRep.unit_axis()]
        for i in range(n):
            for c in range(p):
                reps.append(ClassRep.mixed(c, i))
        self.reps = reps
        self.rep_count = len(reps)
        self.rep_elem_index = [r.element(params).index for r in reps]

        self._class_id = None
        self._class_masks = None
        self._fibers = None
        if order <= _EAGER_TABLE_LIMIT:
            keep, move = [0], [0]
            for gy in range(1, pn):
                k = self._replicated_low_bits(pn - gy)
                keep.append(k)
                move.append(self.full_mask ^ k)
            self._rot_keep = keep
            self._rot_move = move
        else:
            self._rot_keep = {0: 0}
            self._rot_move = {0: 0}

    def _replicated_low_bits(self, width: int) -> int:
        # the low `width` bits of every p^n block
        pattern = (1 << width) - 1
        k = 0
        for b in range(self.p):
            k |= pattern << (b * self.pn)
        return k

    def _ensure_classes(self) -> None:
        if self._class_id is not None:
            return
        class_id = [-1] * self.order
        class_masks = [0] * self.rep_count
        p, pn = self.p, self.pn
        for idx in range(1, self.order):
            x, y = divmod(idx, pn)
            rid = _rep_id(p, pn, x, y)
            class_id[idx] = rid
            class_masks[rid] |= 1 << idx
        self._class_id = class_id
        self._class_masks = class_masks

    @property
    def class_id(self) -> list[int]:
        """Rep id per element index, -1 at the identity."""
        self._ensure_classes()
        return self._class_id

    @property
    def class_masks(self) -> list[int]:
        """Bitmap of each unit-equivalence class, indexed by rep id."""
        self._ensure_classes()
        return self._class_masks

    @property
    def fibers(self):
        """Per-rep bitmaps of the inner-product fibers, grouped by residue
        class mod p^(n-1); None above the tabulation limit."""
        if self.order > _FIBER_TABLE_LIMIT:
            return None
        if self._fibers is None:
            fibers = []
            pn = self.pn
            for rid in range(self.rep_count):
                ux, uy = divmod(self.rep_elem_index[rid], pn)
                groups = [[0] * self.p for _ in range(self.pn1)]
                w = self.pn1 * ux
                for idx in range(self.order):
                    ex, ey = divmod(idx, pn)
                    t = (w * ex + ey * uy) % pn
                    c, j = t % self.pn1, t // self.pn1
                    groups[c][j] |= 1 << idx
                fibers.append([tuple(g) for g in groups])
            self._fibers = fibers
        return self._fibers

    def neg_index(self, idx: int) -> int:
        x, y = divmod(idx, self.pn)
        return ((-x) % self.p) * self.pn + (-y) % self.pn

    def sub_index(self, a: int, b: int) -> int:
        ax, ay = divmod(a, self.pn)
        bx, by = divmod(b, self.pn)
        return ((ax - bx) % self.p) * self.pn + (ay - by) % self.pn

    def _rotation(self, gy: int) -> tuple[int, int]:
        # dict-backed path for large groups: build per-gy masks on demand
        keep = self._rot_keep.get(gy)
        if keep is None:
            keep = self._replicated_low_bits(self.pn - gy)
            self._rot_keep[gy] = keep
            self._rot_move[gy] = self.full_mask ^ keep
        return keep, self._rot_move[gy]

    def translate_mask(self, m: int, g_idx: int) -> int:
        """Bitmap of {e + g : e in m}."""
        gx, gy = divmod(g_idx, self.pn)
        if gy:
            rot = self._rot_keep
            if type(rot) is list:
                m = ((m & rot[gy]) << gy) | ((m & self._rot_move[gy]) >> (self.pn - gy))
            else:
                keep, move = self._rotation(gy)
                m = ((m & keep) << gy) | ((m & move) >> (self.pn - gy))
        if gx:
            k = gx * self.pn
            m = ((m << k) | (m >> (self.order - k))) & self.full_mask
        return m

    def scale_mask(self, m: int, a: int) -> int:
        """Bitmap of {a * e : e in m}; a need not be a unit."""
        p, pn = self.p, self.pn
        out = 0
        while m:
            b = m & -m
            idx = b.bit_length() - 1
            m ^= b
            x, y = divmod(idx, pn)
            out |= 1 << ((a * x % p) * pn + a * y % pn)
        return out

    def inner(self, e_idx: int, u_idx: int) -> int:
        ex, ey = divmod(e_idx, self.pn)
        ux, uy = divmod(u_idx, self.pn)
        return (self.pn1 * ex * ux + ey * uy) % self.pn

    def profile_key(self, mask: int) -> int:
        """Bitmask over rep ids of the classes in the zero set of `mask`.

        Bit rid is set iff the character at reps[rid] sums to zero on the
        set, decided by the slice-count equality criterion.
        """
        key = 0
        fibers = self.fibers
        if fibers is not None:
            for rid in range(self.rep_count):
                for group in fibers[rid]:
                    c0 = (mask & group[0]).bit_count()
                    ok = True
                    for fm in group[1:]:
                        if (mask & fm).bit_count() != c0:
                            ok = False
                            break
                    if not ok:
                        break
                else:
                    key |= 1 << rid
            return key
        # large-group fallback: tally inner products per representative
        idxs = []
        m = mask
        while m:
            b = m & -m
            idxs.append(b.bit_length() - 1)
            m ^= b
        for rid in range(self.rep_count):
            u = self.rep_elem_index[rid]
            counts = [0] * self.pn
            for e in idxs:
                counts[self.inner(e, u)] += 1
            if self._counts_equidistributed(counts):
                key |= 1 << rid
        return key

    def _counts_equidistributed(self, counts: list[int]) -> bool:
        pn1 = self.pn1
        for c in range(pn1):
            first = counts[c]
            for j in range(1, self.p):
                if counts[c + j * pn1] != first:
                    return False
        return True

    def zero_mask_for_key(self, key: int) -> int:
        out = 0
        masks = self.class_masks
        while key:
            b = key & -key
            out |= masks[b.bit_length() - 1]
            key ^= b
        return out


@lru_cache(maxsize=None)
def group_tables(params: GroupParams) -> GroupTables:
    return GroupTables(params)
