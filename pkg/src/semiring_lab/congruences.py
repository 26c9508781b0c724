"""Congruences, congruence kernels and the lattices they form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .core import FiniteSemiring
from .ideals import canonical_key
from .lattice import FiniteLattice, build_lattice


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            rx, ry = ry, rx
        self.parent[rx] = ry
        return True


def normalize(labels) -> tuple[int, ...]:
    """Renumber blocks 0, 1, ... in order of their least member."""
    ids: dict[int, int] = {}
    return tuple(ids.setdefault(b, len(ids)) for b in labels)


@dataclass(frozen=True)
class Congruence:
    owner: FiniteSemiring
    block_of: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.block_of == other.block_of

    def __hash__(self):
        return hash(self.block_of)

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    @property
    def num_blocks(self) -> int:
        return max(self.block_of) + 1

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        masks = [0] * self.num_blocks
        for x, b in enumerate(self.block_of):
            masks[b] |= 1 << x
        return tuple(masks)

    def class_of(self, x: int) -> int:
        return self.block_masks[self.block_of[x]]

    def leq(self, other: Congruence) -> bool:
        return all(other.related(x, y) for x, y in self._pairs())

    def _pairs(self):
        for m in self.block_masks:
            members = self.owner.members(m)
            first = members[0]
            for x in members[1:]:
                yield first, x

    def __str__(self) -> str:
        return "|".join(self.owner.format_set(m) for m in self.block_masks)

    def __repr__(self) -> str:
        return f"Congruence({self})"

    def sort_key(self):
        return (-self.num_blocks, self.block_of)


def identity(S: FiniteSemiring) -> Congruence:
    return Congruence(S, tuple(range(S.n)))


def total(S: FiniteSemiring) -> Congruence:
    return Congruence(S, (0,) * S.n)


def is_compatible(S: FiniteSemiring, block_of) -> bool:
    # comparing each element with its block's first member suffices
    rep: dict[int, int] = {}
    for x in range(S.n):
        r = rep.setdefault(block_of[x], x)
        if r == x:
            continue
        ax, ar, mx, mr = S.add[x], S.add[r], S.mul[x], S.mul[r]
        for z in range(S.n):
            if block_of[ax[z]] != block_of[ar[z]] or block_of[mx[z]] != block_of[mr[z]]:
                return False
    return True


def generate(S: FiniteSemiring, pairs, start: Congruence | None = None) -> Congruence:
    """Least congruence containing ``start`` (default: identity) and ``pairs``.

    Worklist closure: every newly merged pair is pushed through all
    translations x -> x+z and x -> xz.
    """
    uf = _UnionFind(S.n)
    work = []
    if start is not None:
        work.extend(start._pairs())
    work.extend(pairs)
    for x, y in work:
        uf.union(x, y)
    while work:
        x, y = work.pop()
        for z in range(S.n):
            for table in (S.add, S.mul):
                u, v = table[x][z], table[y][z]
                if uf.union(u, v):
                    work.append((u, v))
    return Congruence(S, normalize(uf.find(x) for x in range(S.n)))


def principal_congruence(S: FiniteSemiring, a: int, b: int) -> Congruence:
    return generate(S, [(a, b)])


def join(theta: Congruence, phi: Congruence) -> Congruence:
    """Transitive closure of the union; checked to be compatible."""
    S = theta.owner
    uf = _UnionFind(S.n)
    for x, y in itertools.chain(theta._pairs(), phi._pairs()):
        uf.union(x, y)
    result = Congruence(S, normalize(uf.find(x) for x in range(S.n)))
    if not is_compatible(S, result.block_of):
        raise AssertionError("join of congruences is not compatible")
    return result


def meet(theta: Congruence, phi: Congruence) -> Congruence:
    return Congruence(theta.owner, normalize(zip(theta.block_of, phi.block_of)))


def enumerate_congruences(S: FiniteSemiring) -> list[Congruence]:
    """All congruences, by number of blocks descending then block array.

    Closes {identity} u {principal congruences} under joins with principals;
    every congruence is a join of principal ones.
    """
    principals = {principal_congruence(S, a, b) for a, b in itertools.combinations(range(S.n), 2)}
    delta = identity(S)
    principals.discard(delta)
    principals = sorted(principals, key=Congruence.sort_key)
    seen = {delta, *principals}
    frontier = list(principals)
    while frontier:
        nxt = []
        for c in frontier:
            for p in principals:
                if p.leq(c):
                    continue
                d = join(c, p)
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return sorted(seen, key=Congruence.sort_key)


def kernel(theta: Congruence) -> int:
    """The 0-class [0]theta as a bitmask."""
    return theta.class_of(theta.owner.zero)


def render_kernel(theta: Congruence) -> str:
    return theta.owner.format_set(kernel(theta))


def congruence_lattice(S: FiniteSemiring, congs: list[Congruence] | None = None) -> FiniteLattice:
    congs = congs if congs is not None else enumerate_congruences(S)
    pos = {c: k for k, c in enumerate(congs)}
    return build_lattice(
        [str(c) for c in congs],
        lambda a, b: congs[a].leq(congs[b]),
        join=lambda a, b: pos[join(congs[a], congs[b])],
        meet=lambda a, b: pos[meet(congs[a], congs[b])],
    )


@dataclass(frozen=True)
class KernelFamily:
    semiring: FiniteSemiring
    kernels: tuple[int, ...]
    lattice: FiniteLattice

    def join(self, A: int, B: int) -> int:
        return _kernel_join(self.semiring, self.kernels, A, B)


def _kernel_join(S: FiniteSemiring, kernels, A: int, B: int) -> int:
    """Least kernel containing A u B (intersection of all kernels above)."""
    out = S.full_mask
    for k in kernels:
        if (A | B) & ~k == 0:
            out &= k
    return out


def enumerate_kernels(S: FiniteSemiring, congs: list[Congruence] | None = None) -> KernelFamily:
    congs = congs if congs is not None else enumerate_congruences(S)
    masks = sorted({kernel(c) for c in congs}, key=canonical_key)
    pos = {m: k for k, m in enumerate(masks)}

    def kmeet(a, b):
        m = masks[a] & masks[b]
        if m not in pos:
            raise AssertionError("kernels are not closed under intersection")
        return pos[m]

    lattice = build_lattice(
        [S.format_set(m) for m in masks],
        lambda a, b: masks[a] & ~masks[b] == 0,
        join=lambda a, b: pos[_kernel_join(S, masks, masks[a], masks[b])],
        meet=kmeet,
    )
    return KernelFamily(S, tuple(masks), lattice)


def kernel_map_join_failure(S: FiniteSemiring, congs: list[Congruence] | None = None):
    """First pair (theta, phi) with [0](theta v phi) != [0]theta v_Ker [0]phi."""
    congs = congs if congs is not None else enumerate_congruences(S)
    family = enumerate_kernels(S, congs)
    for theta, phi in itertools.combinations(congs, 2):
        if kernel(join(theta, phi)) != family.join(kernel(theta), kernel(phi)):
            return theta, phi
    return None


def is_distributive_at_zero(S: FiniteSemiring, congs: list[Congruence] | None = None):
    """Check [0]((T v F) ^ P) == [0]((T ^ P) v (F ^ P)) for all triples.

    Returns (holds, witness triple or None).
    """
    congs = congs if congs is not None else enumerate_congruences(S)
    for theta, phi, psi in itertools.product(congs, repeat=3):
        lhs = kernel(meet(join(theta, phi), psi))
        rhs = kernel(join(meet(theta, psi), meet(phi, psi)))
        if lhs != rhs:
            return False, (theta, phi, psi)
    return True, None
