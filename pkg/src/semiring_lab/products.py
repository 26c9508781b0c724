"""Direct decomposability of ideals and congruence kernels of S1 x S2.

Every condition is evaluated literally on the enumerated sets and
relations, so the equivalences between conditions act as cross-checks of
independent code paths rather than being assumed.
"""

from __future__ import annotations

import csv
import io
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, TypeVar

from .congruences import (
    Congruence,
    enumerate_congruences,
    is_compatible,
    join,
    kernel,
    meet,
    normalize,
)
from .core import FiniteSemiring, ProductSemiring, direct_product, is_idempotent, is_unitary
from .ideals import enumerate_ideal_masks, sum_set

T1_CONDITIONS = ("T1.i", "T1.ii", "T1.iii", "T1.iv")
KERNEL_CONDITIONS = ("T2.strong", "T3.direct", "T4.sufficient")

T = TypeVar("T")
R = TypeVar("R")


class ImplicationViolation(AssertionError):
    """A proved implication failed on a concrete instance; indicates a bug."""


class InapplicableError(ValueError):
    pass


def thread_count() -> int:
    raw = os.environ.get("SEMIRING_LAB_THREADS", "0").strip() or "0"
    value = int(raw)
    if value < 0:
        raise ValueError("SEMIRING_LAB_THREADS must be >= 0")
    return value or (os.cpu_count() or 1)


def _ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int | None) -> list[R]:
    items = list(items)
    if not workers or workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _least(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass
class DecompositionVerdict:
    subject: str
    mask: int
    conditions: dict[str, bool]
    witnesses: dict[str, tuple] = field(default_factory=dict)
    factors: tuple[int, int] | None = None

    @property
    def witness(self) -> tuple | None:
        for name, w in self.witnesses.items():
            if not self.conditions.get(name, True):
                return w
        return None


def _axes(ctx: ProductSemiring) -> tuple[int, int]:
    left_axis = ctx.rectangle(ctx.left.full_mask, 1)   # S1 x {0}
    right_axis = ctx.rectangle(1, ctx.right.full_mask)  # {0} x S2
    return left_axis, right_axis


# -- ideals of a product ------------------------------------------------------

def t1_condition_iii(ctx: ProductSemiring, I: int) -> tuple[bool, int | None]:
    """(a,b) in I implies (a,0), (0,b) in I; witness is the failing (a,b)."""
    for k in ctx.base.members(I):
        a, b = ctx.pair_of[k]
        if not (I >> ctx.index_of(a, 0) & 1 and I >> ctx.index_of(0, b) & 1):
            return False, k
    return True, None


def t1_condition_i(ctx: ProductSemiring, I: int) -> tuple[int, int] | None:
    p1, p2 = ctx.project(I, 0), ctx.project(I, 1)
    if ctx.rectangle(p1, p2) != I:
        return None
    return p1, p2


def t1_condition_ii(ctx: ProductSemiring, I: int) -> tuple[bool, int | None]:
    S = ctx.base
    left_axis, right_axis = _axes(ctx)
    first = left_axis & sum_set(S, right_axis, I)
    second = sum_set(S, left_axis, I) & right_axis
    outside = (first | second) & ~I
    return (True, None) if not outside else (False, _least(outside))


def t1_condition_iv(ctx: ProductSemiring, I: int) -> tuple[bool, int | None]:
    S = ctx.base
    left_axis, right_axis = _axes(ctx)
    both = sum_set(S, left_axis, I) & sum_set(S, right_axis, I)
    diff = both ^ I
    return (True, None) if not diff else (False, _least(diff))


def ideal_verdict(ctx: ProductSemiring, I: int) -> DecompositionVerdict:
    factors = t1_condition_i(ctx, I)
    ok_ii, w_ii = t1_condition_ii(ctx, I)
    ok_iii, w_iii = t1_condition_iii(ctx, I)
    ok_iv, w_iv = t1_condition_iv(ctx, I)
    verdict = DecompositionVerdict(
        subject=ctx.base.format_set(I),
        mask=I,
        conditions={"T1.i": factors is not None, "T1.ii": ok_ii, "T1.iii": ok_iii, "T1.iv": ok_iv},
        factors=factors,
    )
    for name, w in (("T1.ii", w_ii), ("T1.iii", w_iii), ("T1.iv", w_iv)):
        if w is not None:
            verdict.witnesses[name] = (ctx.base.elem_names[w],)
    if factors is None:
        verdict.witnesses["T1.i"] = (
            ctx.left.format_set(ctx.project(I, 0)),
            ctx.right.format_set(ctx.project(I, 1)),
        )
    else:
        if ctx.rectangle(*factors) != I:
            raise ImplicationViolation("factors do not reassemble the ideal")
    return verdict


def _check_t1_chain(v: DecompositionVerdict) -> None:
    c = v.conditions
    if c["T1.iii"] != c["T1.i"]:
        raise ImplicationViolation(f"(iii) <=> (i) fails on {v.subject}")
    if c["T1.i"] and not c["T1.iv"]:
        raise ImplicationViolation(f"(i) => (iv) fails on {v.subject}")
    if c["T1.iv"] and not c["T1.ii"]:
        raise ImplicationViolation(f"(iv) => (ii) fails on {v.subject}")


def skew_ideals(ctx: ProductSemiring) -> list[int]:
    """Ideals of the product that are not a product of factor ideals."""
    return [I for I in enumerate_ideal_masks(ctx.base) if t1_condition_i(ctx, I) is None]


@dataclass
class Theorem1Audit:
    product: ProductSemiring
    rows: list[DecompositionVerdict]

    @property
    def strictness_witnesses(self) -> list[DecompositionVerdict]:
        """Rows where (ii) holds but (iii) does not."""
        return [r for r in self.rows if r.conditions["T1.ii"] and not r.conditions["T1.iii"]]

    @property
    def skew(self) -> list[DecompositionVerdict]:
        return [r for r in self.rows if not r.conditions["T1.i"]]


def audit_theorem1(ctx: ProductSemiring, workers: int | None = None) -> Theorem1Audit:
    rows = _ordered_map(lambda I: ideal_verdict(ctx, I), enumerate_ideal_masks(ctx.base), workers)
    for row in rows:
        _check_t1_chain(row)
    return Theorem1Audit(ctx, rows)


@dataclass(frozen=True)
class CorollaryVerdict:
    case: str | None
    holds: bool | None

    @property
    def applicable(self) -> bool:
        return self.case is not None


def corollary_case(S1: FiniteSemiring, S2: FiniteSemiring) -> str | None:
    u1, u2 = is_unitary(S1) is not None, is_unitary(S2) is not None
    i1, i2 = is_idempotent(S1), is_idempotent(S2)
    if u1 and u2:
        return "unitary x unitary"
    if u1 and i2:
        return "unitary x idempotent"
    if i1 and u2:
        return "idempotent x unitary"
    if i1 and i2:
        return "idempotent x idempotent"
    return None


def corollary_decomposability_check(ctx: ProductSemiring) -> CorollaryVerdict:
    case = corollary_case(ctx.left, ctx.right)
    if case is None:
        return CorollaryVerdict(None, None)
    return CorollaryVerdict(case, not skew_ideals(ctx))


def is_field(F: FiniteSemiring) -> bool:
    one = is_unitary(F)
    if one is None or one == F.zero:
        return False
    has_neg = all(any(F.add[x][y] == F.zero for y in range(F.n)) for x in range(F.n))
    has_inv = all(any(F.mul[x][y] == one for y in range(F.n)) for x in range(F.n) if x != F.zero)
    return has_neg and has_inv


def field_proposition_check(S: FiniteSemiring, F: FiniteSemiring) -> bool:
    """Every ideal of S x F decomposes, and F has only the trivial ideals."""
    if not is_field(F):
        raise InapplicableError(f"{F.name} is not a field")
    if enumerate_ideal_masks(F) != [1, F.full_mask]:
        return False
    return not skew_ideals(direct_product(S, F))


# -- congruence kernels ----------------------------------------------------------

def coordinate_congruence(ctx: ProductSemiring, axis: int) -> Congruence:
    """Pi_i: identifies elements with equal i-th coordinate."""
    return Congruence(ctx.base, normalize(p[axis] for p in ctx.pair_of))


def product_congruence(ctx: ProductSemiring, theta1: Congruence, theta2: Congruence) -> Congruence:
    return Congruence(
        ctx.base, normalize((theta1.block_of[a], theta2.block_of[b]) for a, b in ctx.pair_of)
    )


def projected_relation(ctx: ProductSemiring, theta: Congruence, axis: int) -> set[tuple[int, int]]:
    """pi_i(theta) = {(pi_i x, pi_i y) | x theta y}."""
    rel = set()
    for m in theta.block_masks:
        members = ctx.base.members(m)
        for x in members:
            for y in members:
                rel.add((ctx.pair_of[x][axis], ctx.pair_of[y][axis]))
    return rel


def project_congruence(ctx: ProductSemiring, theta: Congruence, axis: int) -> Congruence:
    factor = ctx.left if axis == 0 else ctx.right
    rel = projected_relation(ctx, theta, axis)
    block_of = normalize(min(y for y in range(factor.n) if (x, y) in rel) for x in range(factor.n))
    result = Congruence(factor, block_of)
    as_pairs = {(x, y) for x in range(factor.n) for y in range(factor.n) if result.related(x, y)}
    if as_pairs != rel or not is_compatible(factor, block_of):
        raise ImplicationViolation(f"projection of {theta} to factor {axis + 1} is not a congruence")
    return result


@dataclass(frozen=True)
class ProjectionPair:
    pi1: Congruence
    pi2: Congruence
    theta1: Congruence
    theta2: Congruence


def projection_pair(ctx: ProductSemiring, theta: Congruence) -> ProjectionPair:
    return ProjectionPair(
        coordinate_congruence(ctx, 0),
        coordinate_congruence(ctx, 1),
        project_congruence(ctx, theta, 0),
        project_congruence(ctx, theta, 1),
    )


def _pair_names(ctx: ProductSemiring, *ks: int) -> tuple[str, ...]:
    return tuple(ctx.base.elem_names[k] for k in ks)


def kernel_directly_decomposable(ctx: ProductSemiring, theta: Congruence) -> tuple[bool, tuple | None]:
    """(a,b), (c,d) in [(0,0)]theta implies (a,d) in [(0,0)]theta.

    Also compares with the rectangle test K == pi1(K) x pi2(K).
    """
    K = kernel(theta)
    members = ctx.base.members(K)
    holds, witness = True, None
    for x, y in itertools.product(members, repeat=2):
        a, _ = ctx.pair_of[x]
        _, d = ctx.pair_of[y]
        if not K >> ctx.index_of(a, d) & 1:
            holds, witness = False, _pair_names(ctx, x, y)
            break
    rectangle = ctx.rectangle(ctx.project(K, 0), ctx.project(K, 1)) == K
    if holds != rectangle:
        raise ImplicationViolation(f"(equ2) and the rectangle test disagree on {theta}")
    return holds, witness


def kernel_strongly_decomposable(ctx: ProductSemiring, theta: Congruence) -> tuple[bool, tuple | None]:
    """If (a,b) ~ (0,c) and (d,e) ~ (f,0) then (a,e) ~ (0,0).

    Also compares with K == [0]theta1 x [0]theta2 for the projected congruences.
    """
    left, right = ctx.left, ctx.right
    K = kernel(theta)
    idx = ctx.index_of
    firsts = [
        (a, b, c)
        for a, b, c in itertools.product(range(left.n), range(right.n), range(right.n))
        if theta.related(idx(a, b), idx(0, c))
    ]
    seconds = [
        (d, e, f)
        for d, e, f in itertools.product(range(left.n), range(right.n), range(left.n))
        if theta.related(idx(d, e), idx(f, 0))
    ]
    holds, witness = True, None
    for (a, b, c), (d, e, f) in itertools.product(firsts, seconds):
        if not K >> idx(a, e) & 1:
            holds = False
            witness = _pair_names(ctx, idx(a, b), idx(0, c), idx(d, e), idx(f, 0))
            break
    proj = projection_pair(ctx, theta)
    strong = ctx.rectangle(kernel(proj.theta1), kernel(proj.theta2)) == K
    if holds != strong:
        raise ImplicationViolation(f"quantified condition and [0]theta1 x [0]theta2 disagree on {theta}")
    return holds, witness


def theorem4_sufficient(ctx: ProductSemiring, theta: Congruence) -> tuple[bool, tuple[bool, bool]]:
    """Both [(0,0)]((theta v Pi_i) ^ Pi_j) are contained in [(0,0)]theta."""
    pi1, pi2 = coordinate_congruence(ctx, 0), coordinate_congruence(ctx, 1)
    K = kernel(theta)
    first = kernel(meet(join(theta, pi1), pi2)) & ~K == 0
    second = kernel(meet(join(theta, pi2), pi1)) & ~K == 0
    return first and second, (first, second)


def kernel_verdict(ctx: ProductSemiring, theta: Congruence) -> DecompositionVerdict:
    strong, w_strong = kernel_strongly_decomposable(ctx, theta)
    direct, w_direct = kernel_directly_decomposable(ctx, theta)
    sufficient, parts = theorem4_sufficient(ctx, theta)
    K = kernel(theta)
    verdict = DecompositionVerdict(
        subject=str(theta),
        mask=K,
        conditions={"T2.strong": strong, "T3.direct": direct, "T4.sufficient": sufficient},
    )
    if w_strong:
        verdict.witnesses["T2.strong"] = w_strong
    if w_direct:
        verdict.witnesses["T3.direct"] = w_direct
    if not sufficient:
        verdict.witnesses["T4.sufficient"] = tuple(
            name for name, ok in zip(("Pi1-side", "Pi2-side"), parts) if not ok
        )
    if direct:
        verdict.factors = (ctx.project(K, 0), ctx.project(K, 1))
    return verdict


def _check_kernel_chain(v: DecompositionVerdict) -> None:
    c = v.conditions
    if c["T4.sufficient"] and not c["T2.strong"]:
        raise ImplicationViolation(f"T4 hypothesis without strong decomposability on {v.subject}")
    if c["T2.strong"] and not c["T3.direct"]:
        raise ImplicationViolation(f"strong without direct decomposability on {v.subject}")


@dataclass
class KernelAudit:
    product: ProductSemiring
    congruences: list[Congruence]
    rows: list[DecompositionVerdict]


def audit_kernels(ctx: ProductSemiring, workers: int | None = None) -> KernelAudit:
    congs = enumerate_congruences(ctx.base)
    rows = _ordered_map(lambda t: kernel_verdict(ctx, t), congs, workers)
    for row in rows:
        _check_kernel_chain(row)
    return KernelAudit(ctx, congs, rows)


def audit_csv(ctx: ProductSemiring, rows: list[DecompositionVerdict], conditions) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["subject_id", "subject", *conditions, "witness", "factors"])
    for k, row in enumerate(rows):
        w = row.witness
        factors = ""
        if row.factors is not None:
            factors = f"{ctx.left.format_set(row.factors[0])} x {ctx.right.format_set(row.factors[1])}"
        writer.writerow([
            k,
            row.subject,
            *("true" if row.conditions[c] else "false" for c in conditions),
            " ".join(w) if w else "",
            factors,
        ])
    return out.getvalue()
