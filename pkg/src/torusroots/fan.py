"""Complete non-singular simplicial fans and their symmetry root systems."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .classify import IrreducibleComponent, TypeLabel, classify
from .configuration import SignAssignment, VectorConfiguration, new_configuration
from .lattice import IntegerMatrix, Vector, adjugate, determinant
from .rootsys import Root, RootSystem, compute_roots, compute_signed_roots

Cone = Tuple[int, ...]


class FanError(ValueError):
    """Input does not describe a complete non-singular simplicial fan."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NonPrimitive(FanError):
    pass


class SingularCone(FanError):
    pass


class NotComplete(FanError):
    pass


def _one_based(indices) -> str:
    return "{%s}" % ",".join(str(i + 1) for i in indices)


@dataclass(frozen=True)
class Fan:
    """Rays v_1..v_m and maximal cones given as sorted 0-based index tuples.

    Construct through :func:`new_fan`, which validates.
    """

    rank: int
    rays: Tuple[Vector, ...]
    max_cones: Tuple[Cone, ...]

    @property
    def m(self) -> int:
        return len(self.rays)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "rays": [list(v) for v in self.rays],
            "max_cones": [[i + 1 for i in c] for c in self.max_cones],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Fan":
        try:
            rays = obj["rays"]
            cones = [[i - 1 for i in c] for c in obj["max_cones"]]
            n = obj.get("rank", len(rays[0]) if rays else 0)
        except (KeyError, TypeError, IndexError) as exc:
            raise FanError("malformed fan object: %s" % exc) from None
        try:
            return new_fan(n, rays, cones)
        except TypeError as exc:
            raise FanError("malformed fan object: %s" % exc) from None


def _side(wall_rays: Sequence[Vector], x: Vector) -> int:
    """Sign of det[wall rays; x]: which side of the wall hyperplane x lies on."""
    d = determinant(IntegerMatrix(list(wall_rays) + [x], len(x)))
    return (d > 0) - (d < 0)


def new_fan(rank: int, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]) -> Fan:
    """Validate and build a fan (0-based cone indices).

    Checks ray primitivity, unimodularity of every maximal cone, and the wall
    condition: each codimension-one face of a maximal cone lies in exactly two
    maximal cones whose remaining rays sit strictly on opposite sides of it.
    """
    n = rank
    if n < 1:
        raise FanError("rank must be positive")
    rays = tuple(tuple(v) for v in rays)
    m = len(rays)
    for i, v in enumerate(rays):
        if len(v) != n or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
            raise FanError("ray %d is not an integer vector of length %d" % (i + 1, n))
        if math.gcd(*v) != 1:
            raise NonPrimitive("ray %d = %s is not primitive" % (i + 1, list(v)), i)
    cones = []
    for c in max_cones:
        cone = tuple(sorted(c))
        if len(cone) != n or len(set(cone)) != n:
            raise FanError("maximal cone %s does not have %d distinct rays" % (_one_based(cone), n))
        if any(not 0 <= i < m for i in cone):
            raise FanError("maximal cone %s refers to a missing ray" % (_one_based(cone),))
        cones.append(cone)
    if not cones:
        raise FanError("fan has no maximal cones")
    if len(set(cones)) != len(cones):
        raise FanError("duplicate maximal cone")
    cones.sort()
    for cone in cones:
        d = determinant(IntegerMatrix([rays[i] for i in cone], n))
        if abs(d) != 1:
            raise SingularCone("cone %s has determinant %d" % (_one_based(cone), d), cone)
    used = set().union(*cones)
    for i in range(m):
        if i not in used:
            raise FanError("ray %d lies in no maximal cone" % (i + 1), i)
    walls: Dict[Cone, List[Cone]] = {}
    for cone in cones:
        for k in range(n):
            walls.setdefault(cone[:k] + cone[k + 1:], []).append(cone)
    for wall in sorted(walls):
        owners = walls[wall]
        if len(owners) != 2:
            raise NotComplete("wall %s lies in %d maximal cone(s)" % (_one_based(wall), len(owners)), wall)
        wall_rays = [rays[i] for i in wall]
        (a,), (b,) = (set(c) - set(wall) for c in owners)
        if _side(wall_rays, rays[a]) * _side(wall_rays, rays[b]) >= 0:
            raise NotComplete("rays %d and %d are not separated by wall %s"
                              % (a + 1, b + 1, _one_based(wall)), wall)
    return Fan(n, rays, tuple(cones))


def grid_coverage(F: Fan, radius: int = 2) -> List[Vector]:
    """Integer points of the box [-radius, radius]^n lying in no maximal cone.

    A sanity check for completeness; unimodular cones give integral cone
    coordinates, so membership is exact.
    """
    inverses = []
    for cone in F.max_cones:
        S = IntegerMatrix([F.rays[i] for i in cone], F.rank).transpose()
        inverses.append((adjugate(S), determinant(S)))
    missed = []
    for x in itertools.product(range(-radius, radius + 1), repeat=F.rank):
        if not any(x):
            continue
        for adj, d in inverses:
            coords = [Fraction(c, d) for c in adj @ x]
            if all(c >= 0 for c in coords):
                break
        else:
            missed.append(x)
    return missed


def fan_configuration(F: Fan) -> VectorConfiguration:
    return new_configuration(F.rank, F.rays)


def fan_roots(F: Fan, omega: Optional[SignAssignment] = None) -> RootSystem:
    V = fan_configuration(F)
    if omega is None:
        return compute_roots(V)
    return compute_signed_roots(V, omega)


def faces(F: Fan) -> FrozenSet[FrozenSet[int]]:
    out = set()
    for cone in F.max_cones:
        for k in range(len(cone) + 1):
            out.update(frozenset(s) for s in itertools.combinations(cone, k))
    return frozenset(out)


def minimal_nonfaces(F: Fan) -> List[Cone]:
    """Inclusion-minimal index sets that are not faces; sizes never exceed n + 1."""
    face_set = faces(F)
    out = []
    for k in range(1, F.rank + 2):
        for s in itertools.combinations(range(F.m), k):
            fs = frozenset(s)
            if fs in face_set:
                continue
            if all(fs - {i} in face_set for i in s):
                out.append(s)
    return out


def nonface_invariance_check(F: Fan, alpha: Root, nonfaces: Optional[Sequence[Cone]] = None) -> bool:
    """Every minimal non-face contains both indices of alpha's support or neither."""
    roots = fan_roots(F)
    if alpha not in roots or alpha.kind != 2:
        raise ValueError("%s is not a type-2 root of the fan" % (alpha,))
    i, j = sorted(alpha.support)
    if nonfaces is None:
        nonfaces = minimal_nonfaces(F)
    return all((i in s) == (j in s) for s in nonfaces)


@dataclass(frozen=True)
class PartitionReport:
    classes: Tuple[Tuple[int, ...], ...]

    @property
    def factor_labels(self) -> Tuple[Tuple[Tuple[int, ...], TypeLabel], ...]:
        """Type A_{|class|-1} for every class with at least two indices."""
        return tuple((c, TypeLabel("A", len(c) - 1)) for c in self.classes if len(c) >= 2)

    def to_json(self) -> dict:
        return {
            "classes": [[i + 1 for i in c] for c in self.classes],
            "factors": [{"class": [i + 1 for i in c], "family": t.family, "rank": t.rank}
                        for c, t in self.factor_labels],
        }


def reflection_partition(F: Fan, omega: Optional[SignAssignment] = None) -> PartitionReport:
    """Orbits of the ray indices under the reflections of the fan's roots.

    The reflection in a root with support {i, j} swaps v_i and v_j up to sign
    and fixes every other ray, so the orbits are the connected components of
    the graph on [m] with the root supports as edges.
    """
    return _partition_from_roots(F.m, fan_roots(F, omega))


def _partition_from_roots(m: int, R: RootSystem) -> PartitionReport:
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for r in R:
        idx = sorted(r.support)
        for a, b in zip(idx, idx[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, List[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return PartitionReport(tuple(tuple(groups[k]) for k in sorted(groups)))


@dataclass(frozen=True)
class SymmetryReport:
    fan: Fan
    omega: Optional[SignAssignment]
    roots: RootSystem
    components: Tuple[IrreducibleComponent, ...]
    partition: PartitionReport
    nonface_invariant: bool
    violations: Tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        from .classify import classification_report
        return {
            "fan": self.fan.to_json(),
            "signs": list(self.omega.signs) if self.omega is not None else None,
            "roots": self.roots.to_json(),
            "classification": classification_report(self.components),
            "partition": self.partition.to_json(),
            "nonface_invariant": self.nonface_invariant,
            "consistent": self.consistent,
            "violations": list(self.violations),
        }


def symmetry_report(F: Fan, omega: Optional[SignAssignment] = None) -> SymmetryReport:
    """Roots, classification and orbit partition, with their structural identity checked.

    The classified components must be exactly one A_{|mu|-1} factor per
    partition class mu of size at least two, supported on mu.
    """
    R = fan_roots(F, omega)
    comps = tuple(classify(R))
    part = _partition_from_roots(F.m, R)
    violations = []

    unsigned = R if omega is None else fan_roots(F)
    for r in unsigned:
        nonzero = sorted(x for x in r.pairing if x)
        if nonzero != [-1, 1]:
            violations.append("root %s has pairing pattern %s" % (r, nonzero))
    if omega is not None:
        full = set(unsigned.alphas)
        for r in R:
            if r.alpha not in full:
                violations.append("signed root %s is not a root of the fan" % (r,))

    nonfaces = minimal_nonfaces(F)
    nonfaces_ok = True
    for r in unsigned:
        if r.kind != 2:
            continue
        i, j = sorted(r.support)
        if not all((i in s) == (j in s) for s in nonfaces):
            nonfaces_ok = False
            violations.append("minimal non-face separates the support of %s" % (r,))

    expected = {c: t for c, t in part.factor_labels}
    seen = set()
    for comp in comps:
        supp = comp.support
        if supp not in expected:
            violations.append("component %s on %s matches no partition class"
                              % (comp.label, _one_based(supp)))
        elif comp.label != expected[supp]:
            violations.append("component on %s is %s, class predicts %s"
                              % (_one_based(supp), comp.label, expected[supp]))
        seen.add(supp)
    for c in expected:
        if c not in seen:
            violations.append("class %s has no component" % (_one_based(c),))
    return SymmetryReport(F, omega, R, comps, part, nonfaces_ok, tuple(violations))


# --- catalog ----------------------------------------------------------------

def _cp(n: int) -> Fan:
    rays = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)] + [tuple([-1] * n)]
    return new_fan(n, rays, list(itertools.combinations(range(n + 1), n)))


def _hirzebruch(k: int) -> Fan:
    return new_fan(2, [(1, 0), (0, 1), (-1, k), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def _polygon(rays: Sequence[Vector]) -> Fan:
    m = len(rays)
    return new_fan(2, rays, [(i, (i + 1) % m) for i in range(m)])


def _blow_up(rays: List[Vector], i: int) -> List[Vector]:
    """Insert v_i + v_{i+1} between two cyclically consecutive rays."""
    a, b = rays[i], rays[(i + 1) % len(rays)]
    return rays[:i + 1] + [tuple(x + y for x, y in zip(a, b))] + rays[i + 1:]


PENTAGON = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)]


def _surface(m: int) -> Fan:
    rays = list(PENTAGON)
    k = 0
    while len(rays) < m:
        rays = _blow_up(rays, 2 * k % len(rays))
        k += 1
    return _polygon(rays)


def _catalog() -> Dict[str, callable]:
    cat = {}
    for n in range(1, 6):
        cat["cp%d" % n] = (lambda n=n: _cp(n))
    cat["cp1xcp1"] = lambda: new_fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)],
                                     [(0, 1), (1, 2), (2, 3), (0, 3)])
    cat["cp1xcp2"] = lambda: new_fan(
        3, [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -1, -1)],
        [(a,) + p for a in (0, 1) for p in itertools.combinations((2, 3, 4), 2)])
    for k in range(4):
        cat["hirzebruch%d" % k] = (lambda k=k: _hirzebruch(k))
    cat["pentagon"] = lambda: _polygon(PENTAGON)
    for m in range(6, 9):
        cat["surface%d" % m] = (lambda m=m: _surface(m))
    return cat


_CATALOG = _catalog()
CATALOG_NAMES: Tuple[str, ...] = tuple(_CATALOG)


def catalog_fan(name: str) -> Fan:
    try:
        return _CATALOG[name]()
    except KeyError:
        raise KeyError("unknown catalog fan %r; known: %s" % (name, ", ".join(CATALOG_NAMES))) from None
