"""Arbitrary functions between finite groups and the function conjugation action."""

from __future__ import annotations

import itertools
from typing import Iterator, Optional, Sequence

from .errors import (
    CertificationError,
    InvariantViolationError,
    PreconditionError,
    ShapeError,
    SizeLimitError,
)
from .group_core import (
    CosetSystem,
    Group,
    QuotientGroup,
    Subgroup,
    right_cosets,
    subgroup_closure,
    subgroup_from_members,
)

DEFAULT_ENUMERATION_CAP = 10**6


class GroupFunction:
    """Total function between two groups, stored as a dense array of indices.

    Equality and hashing are by value array; the two endpoint groups are
    compared by object identity, which is what orbit partitioning needs.
    """

    __slots__ = ("domain", "codomain", "values")

    def __init__(self, domain: Group, codomain: Group, values: Sequence[int]):
        vals = tuple(values)
        if len(vals) != domain.order:
            raise ShapeError(
                f"function has {len(vals)} values for a domain of order {domain.order}"
            )
        for v in vals:
            codomain.check_element(v)
        self.domain = domain
        self.codomain = codomain
        self.values = vals

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def is_identity_preserving(self) -> bool:
        return self.values[0] == 0

    def __eq__(self, other):
        return (
            isinstance(other, GroupFunction)
            and self.domain is other.domain
            and self.codomain is other.codomain
            and self.values == other.values
        )

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), self.values))

    def __repr__(self):
        return f"GroupFunction({self.domain.name} -> {self.codomain.name}, {list(self.values)})"


def constant_identity(domain: Group, codomain: Group) -> GroupFunction:
    """The trivial function sending everything to the identity."""
    return GroupFunction(domain, codomain, (0,) * domain.order)


def inversion_function(g: Group) -> GroupFunction:
    """x -> x^-1 on g; a homomorphism exactly when g is abelian."""
    return GroupFunction(g, g, g.inverse)


def conjugate(f: GroupFunction, a: int) -> GroupFunction:
    """The conjugate by a: x -> f(a)^-1 * f(a*x). Always identity preserving."""
    f.domain.check_element(a)
    h = f.codomain
    fa_inv = h.inverse[f.values[a]]
    row = f.domain.table[a]
    return GroupFunction(f.domain, h, tuple(h.table[fa_inv][f.values[row[x]]]
                                            for x in range(f.domain.order)))


def _require_identity_preserving(f: GroupFunction, op: str) -> None:
    if not f.is_identity_preserving:
        raise PreconditionError(
            f"{op} is defined on identity-preserving functions only (f(1) != 1)"
        )


def act(f: GroupFunction, a: int) -> GroupFunction:
    """Left action of a on f: conjugation by a^-1."""
    _require_identity_preserving(f, "act")
    return conjugate(f, f.domain.inverse[a])


def pointwise_product(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """x -> f(x) * g(x) in the shared codomain."""
    if f.domain is not g.domain or f.codomain is not g.codomain:
        raise ShapeError("pointwise product needs matching domain and codomain")
    t = f.codomain.table
    return GroupFunction(f.domain, f.codomain,
                         tuple(t[x][y] for x, y in zip(f.values, g.values)))


def pointwise_inverse(f: GroupFunction) -> GroupFunction:
    """x -> f(x)^-1; inverts pointwise_product when the codomain span is abelian."""
    inv = f.codomain.inverse
    return GroupFunction(f.domain, f.codomain, tuple(inv[v] for v in f.values))


def homomorphism_failure(f: GroupFunction) -> Optional[tuple[int, int]]:
    """First pair (x, y) with f(x*y) != f(x)*f(y), or None if f is a homomorphism."""
    dt = f.domain.table
    ct = f.codomain.table
    vals = f.values
    for x in range(f.domain.order):
        fx = vals[x]
        row = dt[x]
        for y in range(f.domain.order):
            if vals[row[y]] != ct[fx][vals[y]]:
                return (x, y)
    return None


def is_homomorphism(f: GroupFunction) -> bool:
    return homomorphism_failure(f) is None


class Homomorphism:
    """A GroupFunction with an exhaustively verified homomorphism certificate."""

    __slots__ = ("function", "kernel", "image")

    def __init__(self, function: GroupFunction, kernel: Subgroup, image: Subgroup):
        self.function = function
        self.kernel = kernel
        self.image = image

    @property
    def domain(self) -> Group:
        return self.function.domain

    @property
    def codomain(self) -> Group:
        return self.function.codomain

    def __call__(self, x: int) -> int:
        return self.function.values[x]

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.function.values)

    def __eq__(self, other):
        return isinstance(other, Homomorphism) and self.function == other.function

    def __hash__(self):
        return hash(self.function)

    def __repr__(self):
        return f"Homomorphism({self.domain.name} -> {self.codomain.name}, {list(self.function.values)})"


def as_homomorphism(f: GroupFunction) -> Homomorphism:
    """Certify f as a homomorphism, computing its kernel and image subgroups."""
    bad = homomorphism_failure(f)
    if bad is not None:
        raise CertificationError(
            f"not a homomorphism: f({bad[0]}*{bad[1]}) != f({bad[0]})*f({bad[1]})",
            witness={"pair": list(bad)},
        )
    kernel = subgroup_from_members(
        f.domain, [x for x in range(f.domain.order) if f.values[x] == 0]
    )
    from .group_core import is_normal

    if not is_normal(f.domain, kernel):
        raise InvariantViolationError("homomorphism kernel is not normal")
    image = subgroup_closure(f.codomain, sorted(set(f.values)))
    return Homomorphism(f, kernel, image)


def stabilizer(f: GroupFunction) -> Subgroup:
    """Elements whose conjugate leaves f unchanged."""
    _require_identity_preserving(f, "stabilizer")
    fixed = [a for a in range(f.domain.order) if conjugate(f, a) == f]
    return subgroup_from_members(f.domain, fixed)


class FunctionOrbit:
    """Distinct conjugates of a base function, one per stabilizer coset."""

    __slots__ = ("base", "representatives", "members", "stabilizer")

    def __init__(self, base, representatives, members, stab):
        self.base = base
        self.representatives = tuple(representatives)
        self.members = tuple(members)
        self.stabilizer = stab

    @property
    def size(self) -> int:
        return len(self.members)

    def __repr__(self):
        return f"FunctionOrbit(size={len(self.members)})"


def orbit(f: GroupFunction) -> FunctionOrbit:
    """Orbit of f under conjugation, indexed by canonical transversal elements.

    Conjugation satisfies f^(s*a) = f^a for s in the stabilizer, so the
    transversal runs over right cosets of the stabilizer.
    """
    _require_identity_preserving(f, "orbit")
    stab = stabilizer(f)
    cosets = right_cosets(f.domain, stab)
    members = [conjugate(f, r) for r in cosets.representatives]
    if len(set(members)) != len(members):
        raise InvariantViolationError("orbit members are not pairwise distinct")
    if len(members) * stab.order != f.domain.order:
        raise InvariantViolationError("orbit-stabilizer count mismatch")
    return FunctionOrbit(f, cosets.representatives, members, stab)


def image_subgroup(f: GroupFunction) -> Subgroup:
    """Subgroup of the codomain generated by the value set."""
    return subgroup_closure(f.codomain, sorted(set(f.values)))


def count_identity_preserving(domain: Group, codomain: Group) -> int:
    return codomain.order ** (domain.order - 1)


def enumerate_identity_preserving(
    domain: Group, codomain: Group, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[GroupFunction]:
    """All functions with f(1) = 1, streamed in lexicographic value order."""
    total = count_identity_preserving(domain, codomain)
    if total > cap:
        raise SizeLimitError(
            f"{total} identity-preserving functions exceed the cap {cap}"
        )
    for tail in itertools.product(range(codomain.order), repeat=domain.order - 1):
        yield GroupFunction(domain, codomain, (0,) + tail)


def orbit_census(domain: Group, codomain: Group,
                 cap: int = DEFAULT_ENUMERATION_CAP) -> dict:
    """Partition all identity-preserving functions into conjugation orbits.

    Returns the census payload: total count, orbit-size histogram, and the
    value arrays of the fixed points (which are exactly the homomorphisms).
    """
    histogram: dict[str, int] = {}
    fixed = []
    seen: set[tuple[int, ...]] = set()
    total = 0
    for f in enumerate_identity_preserving(domain, codomain, cap=cap):
        total += 1
        if f.values in seen:
            continue
        members = {conjugate(f, a).values for a in range(domain.order)}
        seen.update(members)
        size = len(members)
        histogram[str(size)] = histogram.get(str(size), 0) + 1
        if size == 1:
            fixed.append(list(f.values))
    return {
        "total": total,
        "orbit_size_histogram": dict(sorted(histogram.items(), key=lambda kv: int(kv[0]))),
        "fixed_points": fixed,
    }


def coset_section(q: QuotientGroup, target_hom: Homomorphism,
                  representatives: Optional[Sequence[int]] = None) -> GroupFunction:
    """Lift a homomorphism into a quotient back to coset representatives.

    The result satisfies projection(section(x)) = target_hom(x) pointwise; with
    the canonical representatives it is identity preserving.
    """
    parent = q.kernel.parent
    if target_hom.codomain is not q.group and target_hom.codomain.table != q.group.table:
        raise ShapeError("target homomorphism does not map into this quotient")
    reps = q.cosets.representatives if representatives is None else tuple(representatives)
    if len(reps) != q.group.order:
        raise ShapeError("need exactly one representative per coset")
    for i, r in enumerate(reps):
        parent.check_element(r)
        if q.cosets.coset_of[r] != i:
            raise ShapeError(f"element {r} does not represent coset {i}")
    return GroupFunction(target_hom.domain, parent,
                         tuple(reps[v] for v in target_hom.function.values))
