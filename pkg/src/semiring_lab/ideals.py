"""Ideals of finite commutative semirings as bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import FiniteSemiring
from .lattice import FiniteLattice, build_lattice


@dataclass(frozen=True)
class IdealSet:
    owner: FiniteSemiring
    bits: int

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def names(self) -> list[str]:
        return self.owner.names_of(self.bits)

    def __str__(self) -> str:
        return self.owner.format_set(self.bits)


def canonical_key(mask: int) -> tuple[int, int]:
    return mask.bit_count(), mask


@lru_cache(maxsize=None)
def _multiple_masks(S: FiniteSemiring) -> tuple[int, ...]:
    # bit set of {i*s : s in S} for each i
    out = []
    for i in range(S.n):
        m = 0
        for s in range(S.n):
            m |= 1 << S.mul[i][s]
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class IdealCheck:
    ok: bool
    condition: str | None = None
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_ideal(S: FiniteSemiring, subset: int) -> IdealCheck:
    """Test the three ideal conditions in order: zero, sums, multiples."""
    if not subset & 1:
        return IdealCheck(False, "contains_zero", (S.zero,))
    members = S.members(subset)
    for i in members:
        for j in members:
            if not subset >> S.add[i][j] & 1:
                return IdealCheck(False, "closed_under_add", (i, j))
    for i in members:
        for s in range(S.n):
            if not subset >> S.mul[i][s] & 1:
                return IdealCheck(False, "absorbs_mul", (i, s))
    return IdealCheck(True)


def close(S: FiniteSemiring, mask: int) -> int:
    """Least ideal containing ``mask``, as a fixpoint of sums and multiples."""
    mult = _multiple_masks(S)
    closed = mask | 1
    while True:
        grown = closed
        members = S.members(closed)
        for i in members:
            grown |= mult[i]
            row = S.add[i]
            for j in members:
                grown |= 1 << row[j]
        if grown == closed:
            return closed
        closed = grown


def ideal_generated_by(S: FiniteSemiring, generators) -> IdealSet:
    mask = 0
    for g in generators:
        mask |= 1 << g
    return IdealSet(S, close(S, mask))


def enumerate_ideal_masks(S: FiniteSemiring) -> list[int]:
    seen = {close(S, 0)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for c in frontier:
            for x in range(S.n):
                if c >> x & 1:
                    continue
                d = close(S, c | 1 << x)
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return sorted(seen, key=canonical_key)


def enumerate_ideals(S: FiniteSemiring) -> list[IdealSet]:
    """All ideals ordered by (size, bitmask)."""
    return [IdealSet(S, m) for m in enumerate_ideal_masks(S)]


def sum_set(S: FiniteSemiring, A: int, B: int) -> int:
    """{a + b | a in A, b in B}."""
    out = 0
    bs = S.members(B)
    for a in S.members(A):
        row = S.add[a]
        for b in bs:
            out |= 1 << row[b]
    return out


@dataclass(frozen=True)
class IdealLattice:
    semiring: FiniteSemiring
    ideals: tuple[int, ...]
    lattice: FiniteLattice

    def label(self, node: int) -> str:
        return self.lattice.labels[node]


def ideal_lattice(S: FiniteSemiring) -> IdealLattice:
    """Id S with meet = intersection and join = elementwise sum I + J.

    The sum is checked against the generated ideal of I u J and against the
    order-theoretic join.
    """
    masks = enumerate_ideal_masks(S)
    pos = {m: k for k, m in enumerate(masks)}

    def join(a, b):
        s = sum_set(S, masks[a], masks[b])
        if s != close(S, masks[a] | masks[b]):
            raise AssertionError(f"I+J differs from the join for {S.format_set(masks[a])}, {S.format_set(masks[b])}")
        return pos[s]

    lattice = build_lattice(
        [S.format_set(m) for m in masks],
        lambda a, b: masks[a] & ~masks[b] == 0,
        join=join,
        meet=lambda a, b: pos[masks[a] & masks[b]],
    )
    return IdealLattice(S, tuple(masks), lattice)
