"""The distributed average: repairing a function by a true average of distributors.

Instead of averaging a whole function (which needs an abelian codomain), only
the distributor part is averaged. When the distributor span lies in an abelian
subgroup A and the coset count n of a stabilizing subgroup K is invertible
mod |A|, the corrected function f(x) * (prod distributors)^m with m*n = 1
(mod |A|) is a homomorphism. Applied to coset sections this lifts
homomorphisms through coprime abelian (then soluble) kernels.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .errors import (
    AbelianPreconditionError,
    CertificationError,
    ContainmentError,
    CoprimalityError,
    InvariantViolationError,
    NormalityError,
    NotCotwistedError,
    PreconditionError,
    RangeError,
    ShapeError,
    SolubilityError,
)
from .distributor_calculus import distributor, distributor_subgroup
from .function_space import (
    GroupFunction,
    Homomorphism,
    as_homomorphism,
    coset_section,
    pointwise_product,
    stabilizer,
)
from .group_core import (
    CosetSystem,
    Group,
    QuotientGroup,
    Subgroup,
    derived_series,
    is_normal,
    mod_inverse,
    quotient,
    right_cosets,
    subgroup_from_members,
    trivial_subgroup,
)


class DistributedAverageContext:
    """Everything needed to evaluate a distributed average of one function."""

    __slots__ = ("function", "k_subgroup", "a_subgroup", "cosets",
                 "representatives", "m")

    def __init__(self, function: GroupFunction, k_subgroup: Subgroup,
                 a_subgroup: Subgroup, cosets: CosetSystem,
                 representatives: tuple[int, ...], m: int):
        self.function = function
        self.k_subgroup = k_subgroup
        self.a_subgroup = a_subgroup
        self.cosets = cosets
        self.representatives = representatives
        self.m = m

    @property
    def index(self) -> int:
        return len(self.representatives)

    def __repr__(self):
        return (f"DistributedAverageContext(index={self.index}, "
                f"|A|={self.a_subgroup.order}, m={self.m})")


def make_context(f: GroupFunction, k: Optional[Subgroup] = None,
                 a: Optional[Subgroup] = None,
                 representatives: Optional[Sequence[int]] = None,
                 m: Optional[int] = None) -> DistributedAverageContext:
    """Validate a (K, A, transversal, m) choice for the distributed average of f.

    Defaults: K is the full stabilizer of f, A the distributor span, the
    transversal the canonical right-coset representatives of K, and m the
    least positive inverse of the coset count mod |A|.
    """
    if not f.is_identity_preserving:
        raise PreconditionError("distributed average needs f(1) = 1")
    g = f.domain
    stab = stabilizer(f)
    if k is None:
        k = stab
    else:
        if k.parent is not g:
            raise ShapeError("K must be a subgroup of the domain")
        if not set(k.members) <= set(stab.members):
            raise ContainmentError("K must stabilize f under conjugation")
    dist = distributor_subgroup(f)
    if a is None:
        a = dist
    else:
        if a.parent is not f.codomain:
            raise ShapeError("A must be a subgroup of the codomain")
        if not set(dist.members) <= set(a.members):
            raise ContainmentError("A must contain every distributor of f")
    if not a.is_abelian():
        raise AbelianPreconditionError("A must be abelian")
    n = g.order // k.order
    if math.gcd(n, a.order) != 1:
        raise CoprimalityError(
            f"coset count {n} is not coprime to |A| = {a.order}"
        )
    cosets = right_cosets(g, k)
    if representatives is None:
        reps = cosets.representatives
    else:
        reps = tuple(representatives)
        positions = [cosets.coset_of[g.check_element(r)] for r in reps]
        if sorted(positions) != list(range(cosets.index)):
            raise RangeError(
                "representatives do not hit every right coset of K exactly once"
            )
    if m is None:
        m = mod_inverse(n, a.order)
    else:
        if m < 1 or (m * n) % a.order != 1 % a.order:
            raise PreconditionError(
                f"supplied m = {m} does not invert {n} mod {a.order}"
            )
    return DistributedAverageContext(f, k, a, cosets, reps, m)


def average_distributor(ctx: DistributedAverageContext) -> GroupFunction:
    """The corrected-distributor function d(x) = (prod over reps [t, x; f])^m."""
    f = ctx.function
    g, h = f.domain, f.codomain
    values = []
    for x in range(g.order):
        acc = 0
        for t in ctx.representatives:
            acc = h.table[acc][distributor(f, t, x)]
        v = h.power(acc, ctx.m)
        if v not in ctx.a_subgroup:
            raise InvariantViolationError(
                f"averaged distributor escapes A at element {x}"
            )
        values.append(v)
    return GroupFunction(g, h, values)


def distributed_average(ctx: DistributedAverageContext) -> Homomorphism:
    """The homomorphism x -> f(x) * d(x); equals f when f is one already."""
    f = ctx.function
    d = average_distributor(ctx)
    corrected = pointwise_product(f, d)
    try:
        return as_homomorphism(corrected)
    except CertificationError as exc:  # ruled out by the distributed-average theorem
        raise InvariantViolationError(
            f"distributed average failed certification: {exc}"
        ) from exc


def verify_invariance(f: GroupFunction,
                      contexts: Sequence[DistributedAverageContext]) -> bool:
    """Check that every admissible context yields the identical homomorphism."""
    if not contexts:
        return True
    for ctx in contexts:
        if ctx.function != f:
            raise ShapeError("all contexts must wrap the same function")
    reference = distributed_average(contexts[0]).function.values
    return all(
        distributed_average(ctx).function.values == reference for ctx in contexts[1:]
    )


# -- coprime lifting ----------------------------------------------------------

def _rebase_onto(hom: Homomorphism, target: Group) -> Homomorphism:
    if hom.codomain is not target:
        if hom.codomain.table != target.table:
            raise ShapeError("homomorphism codomain does not match the quotient")
        hom = as_homomorphism(GroupFunction(hom.domain, target, hom.function.values))
    return hom


def section_representatives_variant(q: QuotientGroup, variant: int) -> tuple[int, ...]:
    """A deterministic transversal: each non-identity coset contributes its
    variant-th smallest element (wrapping), the identity coset contributes 0."""
    coset_of = q.cosets.coset_of
    buckets: list[list[int]] = [[] for _ in q.cosets.representatives]
    for x in range(q.kernel.parent.order):
        buckets[coset_of[x]].append(x)
    reps = [0]
    for bucket in buckets[1:]:
        reps.append(bucket[variant % len(bucket)])
    return tuple(reps)


def sz_lift_abelian(h: Group, a: Subgroup, f: Homomorphism,
                    section_representatives: Optional[Sequence[int]] = None,
                    section_variant: int = 0,
                    step_log: Optional[list] = None) -> Homomorphism:
    """Lift f : G -> h/a to a homomorphism G -> h for abelian a coprime to |G|.

    The lift is the distributed average of a coset section of f; projecting it
    back down gives f again (asserted). Different sections may give different
    (conjugate) lifts; section_variant picks one deterministically.
    """
    if a.parent is not h:
        raise ShapeError("kernel subgroup does not belong to the extension group")
    if not is_normal(h, a):
        raise NormalityError("kernel subgroup must be normal in the extension")
    if not a.is_abelian():
        raise AbelianPreconditionError("abelian lifting needs an abelian kernel")
    if math.gcd(a.order, f.domain.order) != 1:
        raise CoprimalityError(
            f"kernel order {a.order} shares a factor with domain order {f.domain.order}"
        )
    q = quotient(h, a)
    f = _rebase_onto(f, q.group)
    if section_representatives is None and section_variant:
        section_representatives = section_representatives_variant(q, section_variant)
    section = coset_section(q, f, representatives=section_representatives)
    if not section.is_identity_preserving:
        raise PreconditionError(
            "section representatives must map the identity coset to the identity"
        )
    ctx = make_context(section, a=a)
    lift = distributed_average(ctx)
    proj = q.projection.values
    for x in range(f.domain.order):
        if proj[lift(x)] != f(x):
            raise InvariantViolationError(
                f"lift does not project back to the input at element {x}"
            )
    if step_log is not None:
        step_log.append({
            "kernel_order": a.order,
            "m": ctx.m,
            "index": ctx.index,
        })
    return lift


def sz_lift_soluble(h: Group, n: Subgroup, f: Homomorphism,
                    step_log: Optional[list] = None) -> Homomorphism:
    """Lift f : G -> h/n through the derived series of a soluble coprime kernel."""
    if n.parent is not h:
        raise ShapeError("kernel subgroup does not belong to the extension group")
    if not is_normal(h, n):
        raise NormalityError("kernel subgroup must be normal in the extension")
    series = derived_series(h, n)
    if series[-1].order != 1:
        raise SolubilityError(
            f"kernel is not soluble: derived series stabilizes at order {series[-1].order}"
        )
    if math.gcd(n.order, f.domain.order) != 1:
        raise CoprimalityError(
            f"kernel order {n.order} shares a factor with domain order {f.domain.order}"
        )
    if n.order == 1:
        lifted = _rebase_onto(f, quotient(h, n).group)
        return as_homomorphism(GroupFunction(f.domain, h, lifted.function.values))
    current = f
    for j in range(1, len(series)):
        smaller = series[j]
        if smaller.order == 1:
            target = h
            kernel = series[j - 1]
        else:
            qj = quotient(h, smaller)
            target = qj.group
            kernel = subgroup_from_members(
                target, sorted({qj.projection(x) for x in series[j - 1].members})
            )
        current = sz_lift_abelian(target, kernel, current, step_log=step_log)
    end_proj = quotient(h, n).projection.values
    rebased = _rebase_onto(f, quotient(h, n).group)
    for x in range(f.domain.order):
        if end_proj[current(x)] != rebased(x):
            raise InvariantViolationError(
                f"soluble lift does not project back to the input at element {x}"
            )
    return current


# -- uniqueness ---------------------------------------------------------------

def twist(f: GroupFunction, a_func: GroupFunction,
          a_subgroup: Optional[Subgroup] = None,
          k_subgroup: Optional[Subgroup] = None) -> GroupFunction:
    """Pointwise product f * a used to generate cotwisted test inputs.

    When given, a_subgroup must contain every value of a_func and k_subgroup
    must stabilize a_func.
    """
    if a_func.domain is not f.domain or a_func.codomain is not f.codomain:
        raise ShapeError("twist needs matching domain and codomain")
    if a_subgroup is not None:
        if not set(a_func.values) <= set(a_subgroup.members):
            raise ContainmentError("twisting function takes values outside A")
    if k_subgroup is not None:
        stab = stabilizer(a_func)
        if not set(k_subgroup.members) <= set(stab.members):
            raise ContainmentError("K does not stabilize the twisting function")
    return pointwise_product(f, a_func)


def conjugator_between(f1: Homomorphism, f2: Homomorphism, a: Subgroup,
                       ctx: DistributedAverageContext) -> int:
    """An element c of A with f1(x) = c^-1 * f2(x) * c for all x.

    f1 and f2 must agree modulo a; c is the m-th power of the transversal
    product of the difference function x -> f2(x)^-1 * f1(x). The conjugation
    identity is asserted before returning.
    """
    g = f1.domain
    h = f1.codomain
    if f2.domain is not g or f2.codomain is not h:
        raise ShapeError("both homomorphisms must share domain and codomain")
    if a.parent is not h:
        raise ShapeError("A must be a subgroup of the shared codomain")
    if not is_normal(h, a):
        raise NormalityError("A must be normal in the codomain")
    if not a.is_abelian():
        raise AbelianPreconditionError("A must be abelian")
    diff_values = tuple(h.table[h.inverse[f2(x)]][f1(x)] for x in range(g.order))
    for x, v in enumerate(diff_values):
        if v not in a:
            raise NotCotwistedError(
                f"functions differ outside A at element {x}: {f1(x)} vs {f2(x)}"
            )
    diff = GroupFunction(g, h, diff_values)
    k_members = set(ctx.k_subgroup.members) & set(stabilizer(diff).members)
    k_eff = subgroup_from_members(g, sorted(k_members))
    n_eff = g.order // k_eff.order
    if math.gcd(n_eff, a.order) != 1:
        raise CoprimalityError(
            f"effective coset count {n_eff} is not coprime to |A| = {a.order}"
        )
    m_eff = mod_inverse(n_eff, a.order)
    acc = 0
    for t in right_cosets(g, k_eff).representatives:
        acc = h.table[acc][diff_values[t]]
    c = h.power(acc, m_eff)
    for x in range(g.order):
        if f1(x) != h.conj(f2(x), c):
            raise InvariantViolationError(
                f"conjugator formula fails the conjugation identity at element {x}"
            )
    return c


def conjugator_in_kernel(f1: Homomorphism, f2: Homomorphism, n: Subgroup) -> int:
    """An element c of a soluble normal n with f1(x) = c^-1 * f2(x) * c for all x.

    For abelian n this is the transversal-product formula; otherwise per-layer
    conjugators are composed down the derived series of n and the end-to-end
    conjugation identity is asserted.
    """
    h = f1.codomain
    if f2.codomain is not h or f2.domain is not f1.domain:
        raise ShapeError("both homomorphisms must share domain and codomain")
    if n.parent is not h:
        raise ShapeError("kernel subgroup does not belong to the shared codomain")
    if not is_normal(h, n):
        raise NormalityError("kernel subgroup must be normal in the codomain")
    series = derived_series(h, n)
    if series[-1].order != 1:
        raise SolubilityError("conjugator composition needs a soluble kernel")
    if n.order == 1:
        if f1.function.values != f2.function.values:
            raise NotCotwistedError("distinct homomorphisms with a trivial kernel")
        return 0
    if n.is_abelian():
        return conjugator_between(f1, f2, n, make_context(f2.function, a=n))
    last_abelian = series[-2]  # characteristic in n, hence normal in h
    if not is_normal(h, last_abelian):
        raise InvariantViolationError("derived term is not normal in the codomain")
    q = quotient(h, last_abelian)
    proj = q.projection.values
    g = f1.domain
    pf1 = as_homomorphism(GroupFunction(g, q.group, tuple(proj[f1(x)] for x in range(g.order))))
    pf2 = as_homomorphism(GroupFunction(g, q.group, tuple(proj[f2(x)] for x in range(g.order))))
    n_over = subgroup_from_members(q.group, sorted({proj[x] for x in n.members}))
    c_above = conjugator_in_kernel(pf1, pf2, n_over)
    partial = q.cosets.representatives[c_above]  # canonical lift, stays inside n
    if partial not in n:
        raise InvariantViolationError("lifted conjugator left the kernel")
    f2_rotated = as_homomorphism(
        GroupFunction(g, h, tuple(h.conj(f2(x), partial) for x in range(g.order)))
    )
    c_layer = conjugator_between(
        f1, f2_rotated, last_abelian, make_context(f2_rotated.function, a=last_abelian)
    )
    c = h.table[partial][c_layer]
    if c not in n:
        raise InvariantViolationError("composed conjugator left the kernel")
    for x in range(g.order):
        if f1(x) != h.conj(f2(x), c):
            raise InvariantViolationError(
                f"composed conjugator fails the conjugation identity at element {x}"
            )
    return c
