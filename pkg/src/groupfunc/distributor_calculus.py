"""Distributors: the commutator analogue measuring failure to be a homomorphism.

The distributor of x and y under f is f(y)^-1 * f(x)^-1 * f(x*y), so that
f(x*y) = f(x) * f(y) * distributor. For the inversion function distributors
are exactly commutators; for a coset section they are the factor set.
"""

from __future__ import annotations

from .errors import CertificationError, InvariantViolationError, SizeLimitError
from .function_space import (
    GroupFunction,
    Homomorphism,
    as_homomorphism,
    conjugate,
    image_subgroup,
    is_homomorphism,
)
from .group_core import (
    Group,
    Subgroup,
    normal_subgroups,
    quotient,
    subgroup_as_group,
    subgroup_closure,
    subgroup_from_members,
)


def distributor(f: GroupFunction, x: int, y: int) -> int:
    """The element f(y)^-1 * f(x)^-1 * f(x*y), cross-checked via the conjugate form."""
    g, h = f.domain, f.codomain
    g.check_element(x)
    g.check_element(y)
    fx, fy, fxy = f.values[x], f.values[y], f.values[g.table[x][y]]
    direct = h.table[h.table[h.inverse[fy]][h.inverse[fx]]][fxy]
    via_conjugate = h.table[h.inverse[fy]][h.table[h.inverse[fx]][fxy]]
    if direct != via_conjugate:
        raise InvariantViolationError(
            f"distributor definitions disagree at ({x},{y})"
        )
    if h.table[h.table[fx][fy]][direct] != fxy:
        raise InvariantViolationError(
            f"distributor reconstruction fails at ({x},{y})"
        )
    return direct


class DistributorTable:
    """All distributor values of one function, materialized on demand."""

    __slots__ = ("function", "entries")

    def __init__(self, function: GroupFunction, entries):
        self.function = function
        self.entries = entries

    def __getitem__(self, pair):
        return self.entries[pair[0]][pair[1]]


def distributor_table(f: GroupFunction) -> DistributorTable:
    n = f.domain.order
    entries = tuple(tuple(distributor(f, x, y) for y in range(n)) for x in range(n))
    return DistributorTable(f, entries)


def distributor_operator(f: GroupFunction, a: int) -> GroupFunction:
    """The function x -> distributor(f, x, a); commutes with conjugation of f."""
    f.domain.check_element(a)
    return GroupFunction(
        f.domain, f.codomain,
        tuple(distributor(f, x, a) for x in range(f.domain.order)),
    )


def verify_triple_identity(f: GroupFunction, x: int, y: int, z: int) -> bool:
    """Check [y,z][x,yz] = [x,y]^f(z) [xy,z], the two expansions of f(x*y*z)."""
    g, h = f.domain, f.codomain
    lhs = h.table[distributor(f, y, z)][distributor(f, x, g.table[y][z])]
    rhs = h.table[h.conj(distributor(f, x, y), f.values[z])][
        distributor(f, g.table[x][y], z)
    ]
    return lhs == rhs


def verify_action_shift(f: GroupFunction, x: int, y: int, z: int) -> bool:
    """Check [x*y, z; f] = [x, z; f] * [y, z; f^x]."""
    g, h = f.domain, f.codomain
    lhs = distributor(f, g.table[x][y], z)
    rhs = h.table[distributor(f, x, z)][distributor(conjugate(f, x), y, z)]
    return lhs == rhs


def distributor_subgroup(f: GroupFunction) -> Subgroup:
    """Subgroup generated by all distributor values; normal in the image span."""
    n = f.domain.order
    values = sorted({distributor(f, x, y) for x in range(n) for y in range(n)})
    sub = subgroup_closure(f.codomain, values)
    img = image_subgroup(f)
    if not set(sub.members) <= set(img.members):
        raise InvariantViolationError("distributor subgroup escapes the image span")
    for m in sub.generators:
        for v in img.generators:
            if f.codomain.conj(m, v) not in sub:
                raise InvariantViolationError(
                    "distributor subgroup is not normal in the image span"
                )
    return sub


def _image_quotient(f: GroupFunction, kernel_members) -> tuple[GroupFunction, Group]:
    """Project f through image-span / <kernel_members> and return the composite."""
    emb = subgroup_as_group(image_subgroup(f))
    inner_kernel = subgroup_from_members(
        emb.group, [emb.from_parent(m) for m in kernel_members]
    )
    q = quotient(emb.group, inner_kernel)
    values = tuple(q.projection(emb.from_parent(v)) for v in f.values)
    return GroupFunction(f.domain, q.group, values), q.group


def canonical_quotient_hom(f: GroupFunction) -> Homomorphism:
    """The homomorphism obtained by killing the distributor subgroup in the image."""
    dist = distributor_subgroup(f)
    projected, _ = _image_quotient(f, dist.members)
    try:
        return as_homomorphism(projected)
    except CertificationError as exc:  # the quotient theorem rules this out
        raise InvariantViolationError(
            f"canonical quotient composite failed certification: {exc}"
        ) from exc


def verify_minimality(f: GroupFunction, order_cap: int = 24) -> bool:
    """Check: projecting mod K gives a homomorphism iff K contains all distributors.

    Runs over every normal subgroup K of the image span, so the span order is
    capped.
    """
    img = image_subgroup(f)
    if img.order > order_cap:
        raise SizeLimitError(
            f"image span order {img.order} exceeds the minimality cap {order_cap}"
        )
    dist_members = set(distributor_subgroup(f).members)
    emb = subgroup_as_group(img)
    dist_inner = {emb.from_parent(m) for m in dist_members}
    for k in normal_subgroups(emb.group):
        q = quotient(emb.group, k)
        vals = tuple(q.projection(emb.from_parent(v)) for v in f.values)
        makes_hom = is_homomorphism(GroupFunction(f.domain, q.group, vals))
        contains = dist_inner <= set(k.members)
        if makes_hom != contains:
            return False
    return True


def census(f: GroupFunction) -> dict:
    """Distributor census payload for reports."""
    dist = distributor_subgroup(f)
    img = image_subgroup(f)
    return {
        "function": {
            "domain": f.domain.name,
            "codomain": f.codomain.name,
            "values": list(f.values),
        },
        "distributor_subgroup_order": dist.order,
        "image_order": img.order,
        "quotient_order": img.order // dist.order,
    }
