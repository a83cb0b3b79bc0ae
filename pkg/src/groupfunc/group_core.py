"""Exact finite-group arithmetic over dense element indices (identity = 0)."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .errors import (
    CoprimalityError,
    InvariantViolationError,
    NormalityError,
    RangeError,
    SizeLimitError,
    TableValidationError,
)

DEFAULT_ELEMENT_CAP = 5040


class Group:
    """Finite group as a Cayley table on indices 0..order-1 with identity 0.

    Instances are immutable after construction and safe to share; all
    operations are pure lookups on the stored table.
    """

    __slots__ = ("order", "table", "inverse", "labels", "name", "_abelian")

    def __init__(self, table, labels=None, name=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.inverse = tuple(self._find_inverses())
        self.labels = tuple(labels) if labels is not None else None
        self.name = name if name is not None else f"cayley:{self.order}"
        self._abelian = None

    def _find_inverses(self):
        inv = [-1] * self.order
        for a in range(self.order):
            row = self.table[a]
            for b in range(self.order):
                if row[b] == 0 and self.table[b][a] == 0:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise TableValidationError(
                    f"element {a} has no two-sided inverse", witness={"element": a}
                )
        return inv

    def check_element(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.order:
            raise RangeError(f"element index {a!r} out of range for order {self.order}")
        return a

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, a: int, b: int) -> int:
        """a conjugated by b, i.e. b^-1 * a * b."""
        return self.table[self.table[self.inverse[b]][a]][b]

    def commutator(self, x: int, y: int) -> int:
        """x^-1 * y^-1 * x * y."""
        t = self.table
        return t[t[t[self.inverse[x]][self.inverse[y]]][x]][y]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        acc = 0
        base = a
        while k:
            if k & 1:
                acc = self.table[acc][base]
            base = self.table[base][base]
            k >>= 1
        return acc

    def element_order(self, a: int) -> int:
        self.check_element(a)
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = all(
                self.table[a][b] == self.table[b][a]
                for a in range(self.order)
                for b in range(a + 1, self.order)
            )
        return self._abelian

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"


def validate_cayley_table(table: Sequence[Sequence[int]]) -> None:
    """Check all Group axioms on a raw table; raise with a witness on failure."""
    n = len(table)
    if n == 0:
        raise TableValidationError("empty table: group order must be >= 1")
    for i, row in enumerate(table):
        if len(row) != n:
            raise TableValidationError(
                f"row {i} has length {len(row)}, expected {n}", witness={"row": i}
            )
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise TableValidationError(
                    f"entry table[{i}][{j}] = {v!r} is not an element index",
                    witness={"cell": [i, j]},
                )
    for x in range(n):
        if table[0][x] != x or table[x][0] != x:
            raise TableValidationError(
                f"index 0 is not the identity at element {x}",
                witness={"kind": "identity", "element": x},
            )
    full = set(range(n))
    for i in range(n):
        if set(table[i]) != full:
            raise TableValidationError(
                f"row {i} is not a permutation of 0..{n - 1}",
                witness={"kind": "latin-row", "row": i},
            )
        if {table[j][i] for j in range(n)} != full:
            raise TableValidationError(
                f"column {i} is not a permutation of 0..{n - 1}",
                witness={"kind": "latin-column", "column": i},
            )
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            row_a = table[a]
            for c in range(n):
                if table[ab][c] != row_a[table[b][c]]:
                    raise TableValidationError(
                        f"associativity fails at triple ({a},{b},{c})",
                        witness={"kind": "associativity", "triple": [a, b, c]},
                    )


def from_cayley_table(table, labels=None, name=None) -> Group:
    """Build a Group from an imported table, validating every axiom first."""
    validate_cayley_table(table)
    return Group(table, labels=labels, name=name)


def make_cyclic(n: int) -> Group:
    """Cyclic group of order n, written additively: table[a][b] = (a+b) % n."""
    if not isinstance(n, int) or n < 1:
        raise RangeError(f"cyclic group order must be a positive integer, got {n!r}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return Group(table, labels=[str(a) for a in range(n)], name=f"cyclic:{n}")


# -- permutation plumbing ---------------------------------------------------

def _compose(p, q):
    # (p*q)(i) = p[q[i]]: apply q first, then p
    return tuple(p[q[i]] for i in range(len(p)))


def _perm_inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _cycle_label(p) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "e"


def _group_from_perms(perms, name) -> Group:
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_compose(a, b)] for b in perms] for a in perms]
    return Group(table, labels=[_cycle_label(p) for p in perms], name=name)


def make_symmetric(n: int) -> Group:
    """Symmetric group on n points; elements sorted by one-line notation."""
    if not isinstance(n, int) or n < 1:
        raise RangeError(f"symmetric group degree must be a positive integer, got {n!r}")
    if n > 6:
        raise SizeLimitError(f"symmetric:{n} has order {math.factorial(n)}; degree capped at 6")
    perms = list(itertools.permutations(range(n)))  # lexicographic, identity first
    return _group_from_perms(perms, f"symmetric:{n}")


def make_dihedral(n: int) -> Group:
    """Dihedral group of order 2n: indices 0..n-1 rotations, n..2n-1 reflections."""
    if not isinstance(n, int) or n < 1:
        raise RangeError(f"dihedral parameter must be a positive integer, got {n!r}")
    order = 2 * n
    table = [[0] * order for _ in range(order)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n
            table[i][n + j] = n + (i + j) % n
            table[n + i][j] = n + (i - j) % n
            table[n + i][n + j] = (i - j) % n
    labels = [f"r{k}" for k in range(n)] + [f"r{k}s" for k in range(n)]
    return Group(table, labels=labels, name=f"dihedral:{n}")


def make_direct_product(g1: Group, g2: Group) -> Group:
    """Direct product with pair (a, b) encoded as a * |g2| + b."""
    n2 = g2.order
    order = g1.order * n2
    table = [[0] * order for _ in range(order)]
    for a1 in range(g1.order):
        for b1 in range(n2):
            x = a1 * n2 + b1
            for a2 in range(g1.order):
                row1 = g1.table[a1][a2] * n2
                row2 = g2.table[b1]
                for b2 in range(n2):
                    table[x][a2 * n2 + b2] = row1 + row2[b2]
    labels = [
        f"({g1.label(a)},{g2.label(b)})" for a in range(g1.order) for b in range(n2)
    ]
    return Group(table, labels=labels, name=f"product:{g1.name},{g2.name}")


def from_permutations(degree: int, generators: Sequence[Sequence[int]],
                      element_cap: int = DEFAULT_ELEMENT_CAP) -> Group:
    """Closure of the given permutations under composition, identity at index 0.

    Elements are indexed by discovery order: breadth-first from the identity,
    right-multiplying by the generators in input order.
    """
    if not isinstance(degree, int) or degree < 1:
        raise RangeError(f"degree must be a positive integer, got {degree!r}")
    gens = []
    for k, raw in enumerate(generators):
        p = tuple(raw)
        if sorted(p) != list(range(degree)):
            raise TableValidationError(
                f"generator {k} is not a permutation of 0..{degree - 1}",
                witness={"generator": list(raw)},
            )
        gens.append(p)
    identity = tuple(range(degree))
    discovered = {identity: 0}
    queue = [identity]
    for x in queue:
        for g in gens:
            y = _compose(x, g)
            if y not in discovered:
                if len(discovered) >= element_cap:
                    raise SizeLimitError(
                        f"permutation closure exceeds element cap {element_cap}"
                    )
                discovered[y] = len(discovered)
                queue.append(y)
    name = f"perm:{degree}:" + ";".join(",".join(map(str, g)) for g in gens)
    return _group_from_perms(queue, name)


# -- subgroups ---------------------------------------------------------------

class Subgroup:
    """Subset of a parent Group closed under its table, with generator witnesses."""

    __slots__ = ("parent", "members", "generators", "_member_set")

    def __init__(self, parent: Group, members: Iterable[int], generators: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(members))
        self.generators = tuple(generators)
        self._member_set = frozenset(self.members)
        self._check()

    def _check(self):
        g = self.parent
        if 0 not in self._member_set:
            raise InvariantViolationError("subgroup does not contain the identity")
        for a in self.members:
            g.check_element(a)
            if g.inverse[a] not in self._member_set:
                raise InvariantViolationError(f"subgroup not closed under inverse at {a}")
            for b in self.members:
                if g.table[a][b] not in self._member_set:
                    raise InvariantViolationError(
                        f"subgroup not closed under product at ({a},{b})"
                    )
        if g.order % len(self.members) != 0:
            raise InvariantViolationError(
                f"subgroup size {len(self.members)} does not divide order {g.order}"
            )
        if frozenset(_closure_members(g, self.generators)) != self._member_set:
            raise InvariantViolationError("generators do not generate the member set")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self._member_set

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.members == other.members
        )

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def is_whole_group(self) -> bool:
        return len(self.members) == self.parent.order

    def is_abelian(self) -> bool:
        g = self.parent
        return all(
            g.table[a][b] == g.table[b][a]
            for i, a in enumerate(self.members)
            for b in self.members[i + 1:]
        )

    def __repr__(self):
        return f"Subgroup(order={len(self.members)} of {self.parent.name})"


def _closure_members(g: Group, generators: Sequence[int]) -> list[int]:
    seen = {0}
    queue = [0]
    for x in queue:
        for h in generators:
            y = g.table[x][h]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def subgroup_closure(g: Group, generators: Sequence[int]) -> Subgroup:
    """Smallest subgroup containing the generators (BFS right-multiplication)."""
    gens = tuple(g.check_element(a) for a in generators)
    return Subgroup(g, _closure_members(g, gens), gens)


def _reduced_generators(g: Group, members: Sequence[int]) -> tuple[int, ...]:
    gens: list[int] = []
    have = {0}
    for a in members:
        if a not in have:
            gens.append(a)
            have = set(_closure_members(g, gens))
    return tuple(gens)


def subgroup_from_members(g: Group, members: Iterable[int]) -> Subgroup:
    """Wrap a member set known to be closed; generators are found greedily."""
    ms = sorted(set(members))
    return Subgroup(g, ms, _reduced_generators(g, ms))


def trivial_subgroup(g: Group) -> Subgroup:
    return Subgroup(g, (0,), ())


def whole_subgroup(g: Group) -> Subgroup:
    return subgroup_from_members(g, range(g.order))


def is_normal(g: Group, s: Subgroup) -> bool:
    if s.parent is not g:
        raise RangeError("subgroup does not belong to this group")
    return all(g.conj(m, x) in s for x in range(g.order) for m in s.generators)


def normalizer(g: Group, s: Subgroup) -> Subgroup:
    """Largest subgroup in which s is normal: {x : x^-1 s x = s}."""
    if s.parent is not g:
        raise RangeError("subgroup does not belong to this group")
    xs = [
        x
        for x in range(g.order)
        if all(g.conj(m, x) in s for m in s.generators)
    ]
    return subgroup_from_members(g, xs)


# -- cosets ------------------------------------------------------------------

class CosetSystem:
    """Canonical coset transversal (minimal index per coset, identity coset first)."""

    __slots__ = ("subgroup", "representatives", "coset_of", "side")

    def __init__(self, subgroup: Subgroup, representatives, coset_of, side: str):
        self.subgroup = subgroup
        self.representatives = tuple(representatives)
        self.coset_of = tuple(coset_of)
        self.side = side
        n = subgroup.parent.order
        if self.representatives[0] != 0:
            raise InvariantViolationError("identity coset must come first")
        if len(self.representatives) * subgroup.order != n:
            raise InvariantViolationError("coset count times subgroup order != group order")

    @property
    def index(self) -> int:
        return len(self.representatives)

    def representative_of(self, x: int) -> int:
        return self.representatives[self.coset_of[x]]

    def __repr__(self):
        return f"CosetSystem({self.side}, index={self.index})"


def _cosets(g: Group, s: Subgroup, side: str) -> CosetSystem:
    coset_of = [-1] * g.order
    reps = []
    for x in range(g.order):  # ascending scan makes each first-seen element minimal
        if coset_of[x] >= 0:
            continue
        pos = len(reps)
        reps.append(x)
        for m in s.members:
            y = g.table[x][m] if side == "left" else g.table[m][x]
            coset_of[y] = pos
    return CosetSystem(s, reps, coset_of, side)


def left_cosets(g: Group, s: Subgroup) -> CosetSystem:
    """Left cosets x*S with canonical minimal-index representatives."""
    if s.parent is not g:
        raise RangeError("subgroup does not belong to this group")
    return _cosets(g, s, "left")


def right_cosets(g: Group, s: Subgroup) -> CosetSystem:
    """Right cosets S*x with canonical minimal-index representatives."""
    if s.parent is not g:
        raise RangeError("subgroup does not belong to this group")
    return _cosets(g, s, "right")


# -- quotients ---------------------------------------------------------------

class QuotientGroup:
    """Quotient by a normal subgroup, with its verified projection function."""

    __slots__ = ("group", "projection", "kernel", "cosets")

    def __init__(self, group: Group, projection, kernel: Subgroup, cosets: CosetSystem):
        self.group = group
        self.projection = projection
        self.kernel = kernel
        self.cosets = cosets

    def __repr__(self):
        return f"QuotientGroup(order={self.group.order} from {self.kernel.parent.name})"


def quotient(g: Group, n: Subgroup) -> QuotientGroup:
    """Quotient of g by a normal subgroup n over canonical coset representatives."""
    if not is_normal(g, n):
        raise NormalityError(
            f"subgroup of order {n.order} is not normal in {g.name}"
        )
    cosets = left_cosets(g, n)
    reps = cosets.representatives
    coset_of = cosets.coset_of
    k = len(reps)
    table = [[coset_of[g.table[a][b]] for b in reps] for a in reps]
    labels = [g.label(r) for r in reps]
    qgroup = Group(table, labels=labels, name=f"{g.name}/N{n.order}")
    from .function_space import GroupFunction, as_homomorphism

    proj = GroupFunction(g, qgroup, coset_of)
    hom = as_homomorphism(proj)  # raises if the table construction were broken
    if hom.kernel.members != n.members:
        raise InvariantViolationError("projection kernel differs from the quotient kernel")
    return QuotientGroup(qgroup, proj, n, cosets)


# -- derived series ----------------------------------------------------------

def derived_subgroup(g: Group, s: Subgroup) -> Subgroup:
    """Closure of all commutators x^-1 y^-1 x y with x, y in s."""
    if s.parent is not g:
        raise RangeError("subgroup does not belong to this group")
    comms = sorted({g.commutator(x, y) for x in s.members for y in s.members})
    members = _closure_members(g, comms)
    return Subgroup(g, members, tuple(c for c in comms if c != 0) or ())


def derived_series(g: Group, s: Subgroup) -> list[Subgroup]:
    """Iterated derived subgroups until stable: s = N0 >= N1 >= ... >= last."""
    series = [s]
    while True:
        nxt = derived_subgroup(g, series[-1])
        if nxt.members == series[-1].members:
            break
        series.append(nxt)
    return series


def is_soluble(g: Group, s: Subgroup) -> bool:
    return derived_series(g, s)[-1].order == 1


# -- number theory -----------------------------------------------------------

def mod_inverse(n: int, modulus: int) -> int:
    """Least positive m with m*n = 1 (mod modulus); requires gcd(n, modulus) = 1."""
    if n < 1 or modulus < 1:
        raise RangeError(f"mod_inverse requires positive arguments, got ({n}, {modulus})")
    if math.gcd(n, modulus) != 1:
        raise CoprimalityError(f"gcd({n}, {modulus}) != 1: no modular inverse")
    r = pow(n, -1, modulus)
    return r if r else modulus


# -- subgroup enumeration and re-embedding -----------------------------------

class SubgroupEmbedding:
    """A subgroup materialized as a Group of its own, with index translation."""

    __slots__ = ("group", "members", "_positions")

    def __init__(self, group: Group, members: tuple[int, ...]):
        self.group = group
        self.members = members
        self._positions = {m: i for i, m in enumerate(members)}

    def to_parent(self, i: int) -> int:
        return self.members[i]

    def from_parent(self, x: int) -> int:
        return self._positions[x]

    def contains_parent(self, x: int) -> bool:
        return x in self._positions


def subgroup_as_group(s: Subgroup) -> SubgroupEmbedding:
    """Materialize a subgroup as its own Group (identity stays at index 0)."""
    g = s.parent
    members = s.members  # sorted, so 0 stays first
    pos = {m: i for i, m in enumerate(members)}
    table = [[pos[g.table[a][b]] for b in members] for a in members]
    labels = [g.label(m) for m in members]
    inner = Group(table, labels=labels, name=f"{g.name}[sub{len(members)}]")
    return SubgroupEmbedding(inner, members)


def all_subgroups(g: Group) -> list[Subgroup]:
    """Every subgroup, found by closing each known subgroup with one new element."""
    known: dict[tuple[int, ...], tuple[int, ...]] = {(0,): ()}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for members in frontier:
            base_gens = known[members]
            for x in range(1, g.order):
                if x in members:
                    continue
                gens = base_gens + (x,)
                closed = tuple(_closure_members(g, gens))
                if closed not in known:
                    known[closed] = gens
                    nxt.append(closed)
        frontier = nxt
    out = [Subgroup(g, members, gens) for members, gens in known.items()]
    out.sort(key=lambda s: (s.order, s.members))
    return out


def normal_subgroups(g: Group) -> list[Subgroup]:
    return [s for s in all_subgroups(g) if is_normal(g, s)]
