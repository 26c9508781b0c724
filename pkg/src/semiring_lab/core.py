"""Finite commutative semirings given by Cayley tables.

Elements are stored by index. After validation the zero is always moved to
index 0 so that every subset of the universe can be handled as an integer
bitmask with bit 0 standing for the zero.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

MAX_ELEMENTS = 64

AXIOMS = (
    "add_commutative",
    "mul_commutative",
    "add_associative",
    "mul_associative",
    "additive_identity",
    "zero_annihilates",
    "distributive",
)


class SemiringError(Exception):
    """Base class for problems with a semiring description."""


class SemiringFormatError(SemiringError):
    """Malformed input: bad names, wrong table shape, unknown entries."""


class AxiomError(SemiringError):
    def __init__(self, report: AxiomReport):
        self.report = report
        axiom, witness = report.violations[0]
        super().__init__(f"axiom {axiom} violated at {witness}")


class CapacityError(SemiringError):
    pass


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[tuple[str, tuple[int, ...]], ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def describe(self, names: Sequence[str]) -> list[str]:
        return [
            f"{axiom}: ({', '.join(names[i] for i in witness)})"
            for axiom, witness in self.violations
        ]


def _index_tables(elem_names, add, mul, zero_name):
    names = list(elem_names)
    n = len(names)
    if n == 0:
        raise SemiringFormatError("a semiring needs at least one element")
    if n > MAX_ELEMENTS:
        raise CapacityError(f"{n} elements exceeds capacity {MAX_ELEMENTS}")
    if len(set(names)) != n:
        dupes = sorted({x for x in names if names.count(x) > 1})
        raise SemiringFormatError(f"duplicate element names: {dupes}")
    pos = {name: i for i, name in enumerate(names)}
    if zero_name not in pos:
        raise SemiringFormatError(f"zero {zero_name!r} is not a declared element")

    def convert(table, label):
        if len(table) != n or any(len(row) != n for row in table):
            raise SemiringFormatError(f"{label} table must be {n}x{n}")
        out = []
        for i, row in enumerate(table):
            out_row = []
            for j, entry in enumerate(row):
                if entry not in pos:
                    raise SemiringFormatError(
                        f"{label}[{names[i]}][{names[j]}] = {entry!r} is not a declared element"
                    )
                out_row.append(pos[entry])
            out.append(out_row)
        return out

    return names, convert(add, "add"), convert(mul, "mul"), pos[zero_name]


def _check_axioms(add, mul, zero) -> AxiomReport:
    n = len(add)
    found: dict[str, tuple[int, ...]] = {}

    def note(axiom, witness):
        found.setdefault(axiom, witness)

    for i, j in itertools.product(range(n), repeat=2):
        if add[i][j] != add[j][i]:
            note("add_commutative", (i, j))
        if mul[i][j] != mul[j][i]:
            note("mul_commutative", (i, j))
    for i in range(n):
        if add[zero][i] != i or add[i][zero] != i:
            note("additive_identity", (i,))
        if mul[zero][i] != zero or mul[i][zero] != zero:
            note("zero_annihilates", (i,))
    for i, j, k in itertools.product(range(n), repeat=3):
        if add[add[i][j]][k] != add[i][add[j][k]]:
            note("add_associative", (i, j, k))
        if mul[mul[i][j]][k] != mul[i][mul[j][k]]:
            note("mul_associative", (i, j, k))
        if mul[add[i][j]][k] != add[mul[i][k]][mul[j][k]]:
            note("distributive", (i, j, k))
    return AxiomReport(tuple((a, found[a]) for a in AXIOMS if a in found))


def verify_axioms(
    elem_names: Sequence[str],
    add: Sequence[Sequence[str]],
    mul: Sequence[Sequence[str]],
    zero_name: str,
) -> AxiomReport:
    """Check the commutative semiring axioms on name-valued tables.

    Witnesses are index tuples in the declared element order; the first
    (lexicographically least) witness per axiom is reported. Format problems
    raise :class:`SemiringFormatError` instead of appearing in the report.
    """
    _, iadd, imul, zero = _index_tables(elem_names, add, mul, zero_name)
    return _check_axioms(iadd, imul, zero)


@dataclass(frozen=True, eq=False)
class FiniteSemiring:
    """A validated finite commutative semiring with zero at index 0.

    ``source_order[k]`` is the declared position of the element now stored at
    index ``k``.
    """

    name: str
    elem_names: tuple[str, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    source_order: tuple[int, ...] = field(default=())
    zero: int = 0

    @classmethod
    def from_tables(cls, name, elem_names, add, mul, zero_name) -> FiniteSemiring:
        names, iadd, imul, zero = _index_tables(elem_names, add, mul, zero_name)
        report = _check_axioms(iadd, imul, zero)
        if not report.valid:
            raise AxiomError(report)
        order = [zero] + [i for i in range(len(names)) if i != zero]
        new_index = {old: new for new, old in enumerate(order)}
        return cls(
            name=name,
            elem_names=tuple(names[i] for i in order),
            add=tuple(tuple(new_index[iadd[i][j]] for j in order) for i in order),
            mul=tuple(tuple(new_index[imul[i][j]] for j in order) for i in order),
            source_order=tuple(order),
        )

    @property
    def n(self) -> int:
        return len(self.elem_names)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.elem_names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not an element of {self.name}") from None

    def mask(self, names) -> int:
        m = 0
        for x in names:
            m |= 1 << self.index(x)
        return m

    def members(self, mask: int) -> list[int]:
        return [i for i in range(self.n) if mask >> i & 1]

    def names_of(self, mask: int) -> list[str]:
        return [self.elem_names[i] for i in self.members(mask)]

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.names_of(mask)) + "}"

    def __repr__(self):
        return f"FiniteSemiring({self.name!r}, n={self.n})"


def is_unitary(S: FiniteSemiring) -> int | None:
    """Index of the multiplicative unit, or None."""
    for e in range(S.n):
        if all(S.mul[e][x] == x for x in range(S.n)):
            return e
    return None


def is_idempotent(S: FiniteSemiring) -> bool:
    return all(S.mul[i][i] == i for i in range(S.n))


@dataclass(frozen=True, eq=False)
class ProductSemiring:
    """Direct product S1 x S2; ``pair_of[k]`` is the coordinate pair of element k."""

    base: FiniteSemiring
    left: FiniteSemiring
    right: FiniteSemiring
    pair_of: tuple[tuple[int, int], ...]

    def index_of(self, a: int, b: int) -> int:
        return a * self.right.n + b

    def element(self, a: str, b: str) -> int:
        return self.index_of(self.left.index(a), self.right.index(b))

    def mask_of_pairs(self, pairs) -> int:
        m = 0
        for a, b in pairs:
            m |= 1 << self.element(a, b)
        return m

    def rectangle(self, left_mask: int, right_mask: int) -> int:
        m = 0
        for a in self.left.members(left_mask):
            for b in self.right.members(right_mask):
                m |= 1 << self.index_of(a, b)
        return m

    def project(self, mask: int, axis: int) -> int:
        out = 0
        for k in self.base.members(mask):
            out |= 1 << self.pair_of[k][axis]
        return out


def direct_product(S1: FiniteSemiring, S2: FiniteSemiring) -> ProductSemiring:
    n = S1.n * S2.n
    if n > MAX_ELEMENTS:
        raise CapacityError(f"{S1.name} x {S2.name} has {n} elements, capacity is {MAX_ELEMENTS}")
    pairs = [(a, b) for a in range(S1.n) for b in range(S2.n)]
    names = [f"({S1.elem_names[a]}|{S2.elem_names[b]})" for a, b in pairs]

    def table(op1, op2):
        return [[names[op1[a][c] * S2.n + op2[b][d]] for c, d in pairs] for a, b in pairs]

    base = FiniteSemiring.from_tables(
        f"{S1.name}x{S2.name}", names, table(S1.add, S2.add), table(S1.mul, S2.mul), names[0]
    )
    return ProductSemiring(base, S1, S2, tuple(pairs))


# -- builtin catalogue ------------------------------------------------------

def _op_table(elems, op):
    return [[op(x, y) for y in elems] for x in elems]


def _chain(k: int) -> tuple[list[str], list[list[str]], list[list[str]]]:
    elems = ["0", "a", "1"] if k == 3 else ["0", "1"]
    rank = {x: i for i, x in enumerate(elems)}
    join = _op_table(elems, lambda x, y: max(x, y, key=rank.get))
    meet = _op_table(elems, lambda x, y: min(x, y, key=rank.get))
    return elems, join, meet


def _zero_mul(elems):
    return [[elems[0]] * len(elems) for _ in elems]


_S8_ELEMS = list("0abcdefg")
_S8_ADD = [
    "0abcdefg",
    "abc0efgd",
    "bc0afgde",
    "c0abgdef",
    "defgdefg",
    "efgdefgd",
    "fgdefgde",
    "gdefgdef",
]
_R4_ELEMS = list("0abc")
_R4_ADD = ["0abc", "a0cb", "bc0a", "cba0"]

BUILTIN_NAMES = ("R2", "R4", "D2", "D3", "S8", "Z2F", "Z3F")


def builtin(name: str) -> FiniteSemiring:
    """The named algebra from the built-in catalogue."""
    if name == "R2":
        elems = ["0", "1"]
        add = _op_table(elems, lambda x, y: str((int(x) + int(y)) % 2))
        return FiniteSemiring.from_tables(name, elems, add, _zero_mul(elems), "0")
    if name == "R4":
        add = [list(row) for row in _R4_ADD]
        return FiniteSemiring.from_tables(name, _R4_ELEMS, add, _zero_mul(_R4_ELEMS), "0")
    if name in ("D2", "D3"):
        elems, join, meet = _chain(int(name[1]))
        return FiniteSemiring.from_tables(name, elems, join, meet, "0")
    if name == "S8":
        add = [list(row) for row in _S8_ADD]
        return FiniteSemiring.from_tables(name, _S8_ELEMS, add, _zero_mul(_S8_ELEMS), "0")
    if name in ("Z2F", "Z3F"):
        p = int(name[1])
        elems = [str(i) for i in range(p)]
        add = _op_table(elems, lambda x, y: str((int(x) + int(y)) % p))
        mul = _op_table(elems, lambda x, y: str(int(x) * int(y) % p))
        return FiniteSemiring.from_tables(name, elems, add, mul, "0")
    raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


# -- file format -------------------------------------------------------------

def parse(text: str) -> FiniteSemiring:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SemiringFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SemiringFormatError("top level must be a JSON object")
    missing = [k for k in ("name", "elements", "zero", "add", "mul") if k not in data]
    if missing:
        raise SemiringFormatError(f"missing keys: {missing}")
    elems = data["elements"]
    if not isinstance(elems, list) or not all(isinstance(x, str) for x in elems):
        raise SemiringFormatError("'elements' must be an array of strings")
    for key in ("add", "mul"):
        table = data[key]
        if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
            raise SemiringFormatError(f"'{key}' must be an array of arrays")
    return FiniteSemiring.from_tables(
        str(data["name"]), elems, data["add"], data["mul"], data["zero"]
    )


def serialize(S: FiniteSemiring) -> str:
    """Canonical JSON text: zero first, one table row per line."""
    names = S.elem_names

    def rows(table):
        return ",\n".join("    " + json.dumps([names[x] for x in row]) for row in table)

    return (
        "{\n"
        f'  "name": {json.dumps(S.name)},\n'
        f'  "elements": {json.dumps(list(names))},\n'
        f'  "zero": {json.dumps(names[S.zero])},\n'
        f'  "add": [\n{rows(S.add)}\n  ],\n'
        f'  "mul": [\n{rows(S.mul)}\n  ]\n'
        "}\n"
    )


def load(spec: str) -> FiniteSemiring:
    """Load ``builtin:NAME`` or a JSON file path."""
    if spec.startswith("builtin:"):
        return builtin(spec[len("builtin:"):])
    return parse(Path(spec).read_text(encoding="utf-8"))
