"""Finite groups given by explicit Cayley tables.

Elements are 0-based indices into the table.  Tables are validated eagerly:
Latin-square shape, identity and inverses always, associativity up to a size
bound (the cubic check is cheap at the scales used here).
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .errors import GroupTableError

ASSOCIATIVITY_CHECK_LIMIT = 64


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @property
    def is_trivial(self) -> bool:
        return len(self.table) == 1


def finite_group(table, name="group", labels=None,
                 assoc_limit=ASSOCIATIVITY_CHECK_LIMIT) -> FiniteGroup:
    """Build a validated group from a Cayley table (rows of element indices)."""
    n = len(table)
    rows = tuple(tuple(row) for row in table)
    if any(len(row) != n for row in rows):
        raise GroupTableError("table is not square")
    rng = set(range(n))
    for row in rows:
        if set(row) != rng:
            raise GroupTableError("table rows are not permutations")
    for j in range(n):
        if {rows[i][j] for i in range(n)} != rng:
            raise GroupTableError("table columns are not permutations")

    identity = next((e for e in range(n)
                     if all(rows[e][x] == x and rows[x][e] == x for x in range(n))),
                    None)
    if identity is None:
        raise GroupTableError("no identity element")
    inverse = []
    for a in range(n):
        b = next((b for b in range(n)
                  if rows[a][b] == identity and rows[b][a] == identity), None)
        if b is None:
            raise GroupTableError(f"element {a} has no inverse")
        inverse.append(b)

    if n <= assoc_limit:
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                        raise GroupTableError(
                            f"not associative at ({a}, {b}, {c})")
    else:
        warnings.warn(f"group of order {n}: associativity not checked "
                      f"(limit {assoc_limit})", stacklevel=2)

    if labels is None:
        labels = tuple(str(i + 1) for i in range(n))
    return FiniteGroup(name, rows, identity, tuple(inverse), tuple(labels))


def trivial_group() -> FiniteGroup:
    return finite_group(((0,),), name="trivial")


def cyclic_group(k: int) -> FiniteGroup:
    if k < 1:
        raise GroupTableError("cyclic group order must be positive")
    table = tuple(tuple((i + j) % k for j in range(k)) for i in range(k))
    return finite_group(table, name=f"cyclic{k}")


def units_group(p: int) -> FiniteGroup:
    """Multiplicative group of nonzero residues mod a prime p.

    Element index i stands for the residue i + 1, so labels carry field values.
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise GroupTableError(f"{p} is not prime")
    table = tuple(tuple(((i + 1) * (j + 1)) % p - 1 for j in range(p - 1))
                  for i in range(p - 1))
    labels = tuple(str(i + 1) for i in range(p - 1))
    return finite_group(table, name=f"units{p}", labels=labels)


def group_from_name(name: str) -> FiniteGroup:
    """Resolve the group tag used in matrix files."""
    if name == "trivial":
        return trivial_group()
    m = re.fullmatch(r"cyclic(\d+)", name)
    if m:
        return cyclic_group(int(m.group(1)))
    m = re.fullmatch(r"units(\d+)", name)
    if m:
        return units_group(int(m.group(1)))
    raise GroupTableError(f"unknown group name {name!r} "
                          "(expected trivial, cyclicK or unitsP)")
