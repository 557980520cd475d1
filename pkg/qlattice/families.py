"""
Named extremal families and the family predicates.

Constructions take optional anchor subspaces; defaults are spans of unit
vectors in fixed positions so that output files are deterministic. The
predicates are literal pairwise checks and serve as the trusted oracle for
everything the search layer reports.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal

from .exceptions import BadAnchor, BadParameters, ValidationError
from .gfq import field_new
from .logging_config import get_logger
from .subspace import (
    Family,
    Subspace,
    contains,
    enumerate_subspaces,
    intersection_dim,
    lattice,
    span,
    span_dim,
    subspaces_of,
    unit_span,
)

# Module-level logger
logger = get_logger("families")

FamilyName = Literal["K", "T", "J", "A", "B", "S"]

# Required anchor dimension per construction and role, as a function of s.
ANCHOR_ROLES: dict[str, dict[str, Callable[[int], int]]] = {
    "K": {"E": lambda s: 1},
    "T": {"E": lambda s: 1, "U": lambda s: s // 2 + 1},
    "J": {"D": lambda s: 3},
    "A": {"U": lambda s: math.ceil(s / 2) - 1},
    "B": {"W": lambda s: s // 2 + 1},
    "S": {"S": lambda s: s},
}


@dataclass
class FamilySpec:
    """Request for one of the named constructions."""

    name: FamilyName
    n: int
    q: int
    s: int
    anchors: dict[str, Subspace] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate construction name and anchors."""
        if self.name not in ANCHOR_ROLES:
            raise ValidationError(f"unknown construction {self.name!r}")
        unknown = set(self.anchors) - set(ANCHOR_ROLES[self.name])
        if unknown:
            raise BadAnchor(f"{self.name} takes anchors {sorted(ANCHOR_ROLES[self.name])}, got {sorted(unknown)}")
        for anchor in self.anchors.values():
            if anchor.n != self.n or anchor.field.q != self.q:
                raise BadAnchor(f"anchor {anchor} is not a subspace of GF({self.q})^{self.n}")


def _anchor(
    name: str, given: Subspace | None, default: Subspace, dimension: int
) -> Subspace:
    anchor = default if given is None else given
    if anchor.k != dimension:
        raise BadAnchor(f"anchor {name} must have dimension {dimension}, got {anchor.k}")
    return anchor


def _check_union_range(n: int, s: int) -> None:
    if not 2 <= s < n:
        raise BadParameters(f"need 2 <= s < n, got s={s}, n={n}")


def _check_antichain_range(n: int, s: int) -> None:
    if not 2 <= s <= n:
        raise BadParameters(f"need 2 <= s <= n, got s={s}, n={n}")


def build_K(n: int, s: int, q: int, E: Subspace | None = None) -> Family:
    """
    Katona family: all subspaces of dimension <= d for s = 2d, plus the
    (d+1)-spaces through the line E for s = 2d+1.
    """
    _check_union_range(n, s)
    f = field_new(q)
    d = s // 2
    members = lattice(f, n, d)
    if s % 2:
        anchor = _anchor("E", E, unit_span(f, n, [0]), 1)
        members += [g for g in enumerate_subspaces(f, n, d + 1) if contains(anchor, g)]
    elif E is not None:
        logger.debug("Ignoring anchor E for even s")
    return Family.of(f, n, members)


def build_T(
    n: int, s: int, q: int, E: Subspace | None = None, U: Subspace | None = None
) -> Family:
    """
    Hilton-Milner type family, the largest s-union family outside every
    Katona family under the usual hypotheses.

    s = 2d: dimensions < d, the d-spaces meeting U, and U itself (dim U = d+1).
    s = 2d+1: dimensions <= d, the (d+1)-spaces through E meeting U, and all
    (d+1)-subspaces of E+U, where E is a line outside U.
    """
    _check_union_range(n, s)
    f = field_new(q)
    d = s // 2
    u = _anchor("U", U, unit_span(f, n, range(d + 1)), d + 1)

    if s % 2 == 0:
        members = lattice(f, n, d - 1)
        members += [g for g in enumerate_subspaces(f, n, d) if intersection_dim(g, u) >= 1]
        members.append(u)
        return Family.of(f, n, members)

    e = _anchor("E", E, unit_span(f, n, [d + 1]), 1)
    if contains(e, u):
        raise BadAnchor(f"E = {e} must not lie in U = {u}")
    members = lattice(f, n, d)
    members += [
        g
        for g in enumerate_subspaces(f, n, d + 1)
        if contains(e, g) and intersection_dim(g, u) >= 1
    ]
    members += subspaces_of(span(e, u), d + 1)
    return Family.of(f, n, members)


def build_J(n: int, q: int, D: Subspace | None = None) -> Family:
    """All subspaces of dimension <= 2 and the 3-spaces meeting D in at least a plane."""
    if n < 6:
        raise BadParameters(f"J needs n >= 6, got {n}")
    f = field_new(q)
    anchor = _anchor("D", D, unit_span(f, n, range(3)), 3)
    members = lattice(f, n, 2)
    members += [g for g in enumerate_subspaces(f, n, 3) if intersection_dim(g, anchor) >= 2]
    return Family.of(f, n, members)


def build_A(n: int, s: int, q: int, U: Subspace | None = None) -> Family:
    """The ceil(s/2)-layer minus the spaces above U, plus U."""
    _check_antichain_range(n, s)
    f = field_new(q)
    c = math.ceil(s / 2)
    anchor = _anchor("U", U, unit_span(f, n, range(c - 1)), c - 1)
    members = [g for g in enumerate_subspaces(f, n, c) if not contains(anchor, g)]
    members.append(anchor)
    return Family.of(f, n, members)


def build_B(n: int, s: int, q: int, W: Subspace | None = None) -> Family:
    """The floor(s/2)-layer minus the spaces below W, plus W."""
    _check_antichain_range(n, s)
    f = field_new(q)
    half = s // 2
    anchor = _anchor("W", W, unit_span(f, n, range(half + 1)), half + 1)
    members = [g for g in enumerate_subspaces(f, n, half) if not contains(g, anchor)]
    members.append(anchor)
    return Family.of(f, n, members)


def build_swap(n: int, s: int, q: int, S: Subspace | None = None) -> Family:
    """
    Optimal odd-s antichain obtained by swapping one block of the d-layer:
    the d-spaces outside S together with the (d+1)-subspaces of S, for an
    s-space S with s = 2d+1.
    """
    _check_antichain_range(n, s)
    if s % 2 == 0:
        raise BadParameters(f"swap construction needs odd s, got {s}")
    f = field_new(q)
    d = s // 2
    anchor = _anchor("S", S, unit_span(f, n, range(s)), s)
    members = [g for g in enumerate_subspaces(f, n, d) if not contains(g, anchor)]
    members += subspaces_of(anchor, d + 1)
    return Family.of(f, n, members)


def build_family(spec: FamilySpec) -> Family:
    """Dispatch a FamilySpec to its constructor."""
    anchors = spec.anchors
    match spec.name:
        case "K":
            return build_K(spec.n, spec.s, spec.q, anchors.get("E"))
        case "T":
            return build_T(spec.n, spec.s, spec.q, anchors.get("E"), anchors.get("U"))
        case "J":
            if spec.s != 5:
                raise BadParameters(f"J is a 5-union construction, got s={spec.s}")
            return build_J(spec.n, spec.q, anchors.get("D"))
        case "A":
            return build_A(spec.n, spec.s, spec.q, anchors.get("U"))
        case "B":
            return build_B(spec.n, spec.s, spec.q, anchors.get("W"))
        case "S":
            return build_swap(spec.n, spec.s, spec.q, anchors.get("S"))


def anchors_from_family(name: FamilyName, s: int, family: Family) -> dict[str, Subspace]:
    """
    Assign the members of an anchor file to anchor roles by dimension.

    Raises:
        BadAnchor: If a member matches no role or two members match one role
    """
    roles = ANCHOR_ROLES[name]
    by_dimension: dict[int, str] = {}
    for role, dimension_of in roles.items():
        by_dimension[dimension_of(s)] = role
    anchors: dict[str, Subspace] = {}
    for member in family:
        role = by_dimension.get(member.k)
        if role is None:
            raise BadAnchor(f"no anchor of {name} at s={s} has dimension {member.k}")
        if role in anchors:
            raise BadAnchor(f"two anchors given for role {role}")
        anchors[role] = member
    return anchors


# Predicates


def is_s_union(f: Family, s: int) -> bool:
    """dim(F + F') <= s for all pairs, the diagonal included."""
    members = f.members
    for i, a in enumerate(members):
        if a.k > s:
            return False
        for b in members[i + 1 :]:
            if span_dim(a, b) > s:
                return False
    return True


def is_t_intersecting(f: Family, t: int) -> bool:
    """dim(F cap F') >= t for all pairs, the diagonal included."""
    members = f.members
    for i, a in enumerate(members):
        if a.k < t:
            return False
        for b in members[i + 1 :]:
            if intersection_dim(a, b) < t:
                return False
    return True


def is_antichain(f: Family) -> bool:
    """No member lies in a different member."""
    members = f.members
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if contains(a, b) or contains(b, a):
                return False
    return True


def is_cross_t_intersecting(a: Family, b: Family, t: int) -> bool:
    return all(intersection_dim(x, y) >= t for x in a for y in b)


def is_cross_sperner(a: Family, b: Family) -> bool:
    return not any(contains(x, y) or contains(y, x) for x in a for y in b)


def layer(f: Family, i: int) -> Family:
    """The members of dimension i."""
    return Family(f.field, f.n, tuple(m for m in f if m.k == i))


def katona_escape(f: Family, s: int, E: Subspace | None = None) -> Subspace | None:
    """A member of F outside K[n,s] (anchored at E for odd s), or None."""
    d = s // 2
    if s % 2 and E is None:
        E = unit_span(f.field, f.n, [0])
    for member in f:
        if member.k <= d:
            continue
        if s % 2 and member.k == d + 1 and contains(E, member):
            continue
        return member
    return None


def escapes_every_katona(f: Family, s: int) -> bool:
    """True iff F is contained in no K[n,s], trying every anchor line for odd s."""
    if s % 2 == 0:
        return katona_escape(f, s) is not None
    return all(
        katona_escape(f, s, line) is not None
        for line in enumerate_subspaces(f.field, f.n, 1)
    )


def sizes_by_layer(f: Family) -> dict[int, int]:
    """Member count per dimension."""
    counts: dict[int, int] = {}
    for member in f:
        counts[member.k] = counts.get(member.k, 0) + 1
    return counts
