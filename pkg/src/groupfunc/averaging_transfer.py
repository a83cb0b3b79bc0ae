"""Orbit averaging into abelian spans, and the transfer homomorphism.

The transfer of G into an abelian image of a subgroup H is the product of the
conjugates of the coset bookkeeping function over a right transversal of H; it
equals a power of the plain orbit average.
"""

from __future__ import annotations

from functools import reduce
from typing import Optional, Sequence

from .errors import (
    AbelianPreconditionError,
    CertificationError,
    InvariantViolationError,
    RangeError,
    ShapeError,
)
from .function_space import (
    GroupFunction,
    Homomorphism,
    as_homomorphism,
    image_subgroup,
    orbit,
    pointwise_product,
    stabilizer,
)
from .group_core import (
    CosetSystem,
    Group,
    Subgroup,
    SubgroupEmbedding,
    right_cosets,
    subgroup_as_group,
)


def average_function(f: GroupFunction) -> Homomorphism:
    """Pointwise product of the whole conjugation orbit of f.

    Requires the span of the values to be abelian; the result is always a
    homomorphism and equals f when f already is one.
    """
    if not image_subgroup(f).is_abelian():
        raise AbelianPreconditionError(
            "averaging needs the subgroup spanned by the values to be abelian"
        )
    orb = orbit(f)
    averaged = reduce(pointwise_product, orb.members)
    try:
        return as_homomorphism(averaged)
    except CertificationError as exc:  # ruled out by the averaging theorem
        raise InvariantViolationError(
            f"orbit average failed certification: {exc}"
        ) from exc


class TransferSetup:
    """Group G, subgroup H, homomorphism into an abelian group, right cosets of H."""

    __slots__ = ("group", "subgroup", "embedding", "target_hom", "cosets")

    def __init__(self, group: Group, subgroup: Subgroup,
                 embedding: SubgroupEmbedding, target_hom: Homomorphism,
                 cosets: CosetSystem):
        self.group = group
        self.subgroup = subgroup
        self.embedding = embedding
        self.target_hom = target_hom
        self.cosets = cosets

    @property
    def index(self) -> int:
        return self.cosets.index

    def __repr__(self):
        return (f"TransferSetup({self.group.name}, subgroup order "
                f"{self.subgroup.order}, index {self.index})")


def make_transfer_setup(group: Group, subgroup: Subgroup,
                        target_hom: Homomorphism) -> TransferSetup:
    """Validate and assemble a transfer setup.

    target_hom must be a homomorphism defined on the subgroup materialized as
    its own group (see subgroup_as_group) with an abelian image.
    """
    if subgroup.parent is not group:
        raise ShapeError("subgroup does not belong to the given group")
    embedding = subgroup_as_group(subgroup)
    dom = target_hom.domain
    if dom is not embedding.group and dom.table != embedding.group.table:
        raise ShapeError(
            "target homomorphism is not defined on the materialized subgroup"
        )
    if not target_hom.image.is_abelian():
        raise AbelianPreconditionError("transfer target image must be abelian")
    return TransferSetup(group, subgroup, embedding, target_hom,
                         right_cosets(group, subgroup))


def _check_transversal(setup: TransferSetup, reps: Sequence[int]) -> tuple[int, ...]:
    reps = tuple(reps)
    positions = [setup.cosets.coset_of[setup.group.check_element(r)] for r in reps]
    if sorted(positions) != list(range(setup.index)):
        raise RangeError("representatives do not hit every right coset exactly once")
    return reps


def transfer_base_function(setup: TransferSetup,
                           representatives: Optional[Sequence[int]] = None) -> GroupFunction:
    """The bookkeeping function sending h*t_i to the image of h.

    Every group element decomposes as g = h * t_i with h in the subgroup and
    t_i the representative of the right coset of g; the function value is the
    target image of h. It is stabilized by the whole subgroup.
    """
    g = setup.group
    if representatives is None:
        rep_of = setup.cosets.representative_of
        reps = None
    else:
        reps = _check_transversal(setup, representatives)
        by_pos = {setup.cosets.coset_of[r]: r for r in reps}
        rep_of = lambda x: by_pos[setup.cosets.coset_of[x]]  # noqa: E731
    values = []
    for x in range(g.order):
        t = rep_of(x)
        h = g.table[x][g.inverse[t]]
        if h not in setup.subgroup:
            raise InvariantViolationError(f"coset decomposition failed at element {x}")
        values.append(setup.target_hom(setup.embedding.from_parent(h)))
    return GroupFunction(g, setup.target_hom.codomain, values)


def multiplicity(setup: TransferSetup,
                 base: Optional[GroupFunction] = None) -> int:
    """Index of the subgroup inside the stabilizer of the base function."""
    f = transfer_base_function(setup) if base is None else base
    stab = stabilizer(f)
    if not set(setup.subgroup.members) <= set(stab.members):
        raise InvariantViolationError(
            "subgroup does not stabilize the transfer base function"
        )
    return stab.order // setup.subgroup.order


def transfer(setup: TransferSetup,
             representatives: Optional[Sequence[int]] = None) -> Homomorphism:
    """The transfer homomorphism: product of base-function conjugates over cosets.

    The value at x is the product over the transversal of f(t)^-1 * f(t*x);
    the result is independent of the transversal and equals the orbit average
    raised to the stabilizer multiplicity.
    """
    g = setup.group
    a = setup.target_hom.codomain
    if representatives is None:
        reps = setup.cosets.representatives
    else:
        reps = _check_transversal(setup, representatives)
    f = transfer_base_function(setup, representatives)
    values = []
    for x in range(g.order):
        acc = 0
        for t in reps:
            term = a.table[a.inverse[f.values[t]]][f.values[g.table[t][x]]]
            acc = a.table[acc][term]
        values.append(acc)
    result = GroupFunction(g, a, values)
    try:
        hom = as_homomorphism(result)
    except CertificationError as exc:
        raise InvariantViolationError(f"transfer failed certification: {exc}") from exc
    if f.is_identity_preserving:
        # power relation needs the identity in the transversal; a transversal
        # without it still yields the same (classical) transfer values
        m = multiplicity(setup, base=f)
        averaged = average_function(f)
        for x in range(g.order):
            if values[x] != a.power(averaged(x), m):
                raise InvariantViolationError(
                    f"transfer is not the {m}-th power of the average at element {x}"
                )
    return hom


def verify_transfer_power_relation(setup: TransferSetup) -> bool:
    """Check transfer(x) = average(x)^multiplicity for every x."""
    f = transfer_base_function(setup)
    m = multiplicity(setup, base=f)
    averaged = average_function(f)
    values = transfer(setup).function.values
    a = setup.target_hom.codomain
    return all(values[x] == a.power(averaged(x), m) for x in range(setup.group.order))


def transfer_report(setup: TransferSetup) -> dict:
    """CLI-facing transfer payload."""
    hom = transfer(setup)
    return {
        "group": setup.group.name,
        "subgroup_order": setup.subgroup.order,
        "index": setup.index,
        "multiplicity_m": multiplicity(setup),
        "transfer_values": list(hom.function.values),
        "is_trivial": hom.is_trivial(),
    }
