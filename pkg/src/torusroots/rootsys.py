"""Root systems R(V) of vector configurations.

A functional alpha in Hom(Z^n, Z) is a root of V when its pairing vector
(<alpha, v_1>, ..., <alpha, v_m>) has one or two nonzero entries, all of
absolute value one. Roots are identified with their pairing vectors, and the
bilinear form on roots is the standard dot product of those vectors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .configuration import SignAssignment, VectorConfiguration, apply_signs
from .lattice import IntegerMatrix, IntegerSystem, Vector, adjugate, determinant, dot


class ScaleError(RuntimeError):
    """The brute-force search box is too large to enumerate."""


@dataclass(frozen=True, order=True)
class Root:
    """A root alpha together with its cached pairing vector f(alpha)."""

    alpha: Vector
    pairing: Vector

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, x in enumerate(self.pairing) if x)

    @property
    def kind(self) -> int:
        """1 for a root with one nonzero pairing, 2 for one with two."""
        return sum(1 for x in self.pairing if x)

    @property
    def norm(self) -> int:
        """Squared length (alpha, alpha)."""
        return dot(self.pairing, self.pairing)

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.alpha), tuple(-x for x in self.pairing))

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "pairing": list(self.pairing), "kind": self.kind}

    def __str__(self) -> str:
        return "(%s)" % ", ".join(str(x) for x in self.alpha)


@dataclass(frozen=True)
class RootSystem:
    """Finite set of roots over a configuration, sorted by alpha.

    ``dual`` marks a coroot system, whose short roots of the original system
    have been doubled.
    """

    configuration: VectorConfiguration
    roots: Tuple[Root, ...]
    dual: bool = False

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(sorted(set(self.roots))))

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    @property
    def _alpha_index(self) -> Dict[Vector, Root]:
        cache = self.__dict__.get("_index")
        if cache is None:
            cache = {r.alpha: r for r in self.roots}
            object.__setattr__(self, "_index", cache)
        return cache

    def __contains__(self, root) -> bool:
        alpha = root.alpha if isinstance(root, Root) else tuple(root)
        return alpha in self._alpha_index

    def get(self, alpha: Sequence[int]) -> Optional[Root]:
        return self._alpha_index.get(tuple(alpha))

    @property
    def alphas(self) -> List[Vector]:
        return [r.alpha for r in self.roots]

    def subset(self, roots: Iterable[Root]) -> "RootSystem":
        return RootSystem(self.configuration, tuple(roots), self.dual)

    def to_json(self) -> dict:
        out = {
            "configuration": self.configuration.to_json(),
            "roots": [r.to_json() for r in self.roots],
        }
        if self.dual:
            out["dual"] = True
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RootSystem":
        config = VectorConfiguration.from_json(obj["configuration"])
        roots = []
        for item in obj["roots"]:
            alpha = tuple(item["alpha"])
            root = Root(alpha, pairing_vector(config, alpha))
            if "pairing" in item and tuple(item["pairing"]) != root.pairing:
                raise ValueError("stored pairing %r does not match alpha %r" % (item["pairing"], alpha))
            roots.append(root)
        return cls(config, tuple(roots), bool(obj.get("dual", False)))


def pairing_vector(V: VectorConfiguration, alpha: Sequence[int]) -> Vector:
    if len(alpha) != V.rank:
        raise ValueError("functional has length %d, lattice rank is %d" % (len(alpha), V.rank))
    return tuple(dot(alpha, v) for v in V.vectors)


def bilinear(V: VectorConfiguration, alpha: Sequence[int], beta: Sequence[int]) -> int:
    return dot(pairing_vector(V, alpha), pairing_vector(V, beta))


def make_root(V: VectorConfiguration, alpha: Sequence[int]) -> Root:
    return Root(tuple(alpha), pairing_vector(V, alpha))


def is_root_pairing(pairing: Sequence[int]) -> bool:
    nonzero = [x for x in pairing if x]
    return 1 <= len(nonzero) <= 2 and all(abs(x) == 1 for x in nonzero)


def root_targets(m: int) -> Iterator[Vector]:
    """The 2m^2 vectors of Z^m with squared length 1 or 2."""
    for i in range(m):
        for s in (1, -1):
            t = [0] * m
            t[i] = s
            yield tuple(t)
    for i, j in itertools.combinations(range(m), 2):
        for si in (1, -1):
            for sj in (1, -1):
                t = [0] * m
                t[i], t[j] = si, sj
                yield tuple(t)


def compute_roots(V: VectorConfiguration) -> RootSystem:
    """R(V) as the preimage of the length-1 and length-2 vectors of Z^m."""
    system = IntegerSystem(V.matrix)
    assert system.rank == V.rank, "pairing map must be injective for a full-rank configuration"
    roots = []
    for target in root_targets(V.m):
        sol = system.solve(target)
        if sol is not None:
            roots.append(Root(sol.particular, target))
    return RootSystem(V, tuple(roots))


def compute_signed_roots(V: VectorConfiguration, omega: SignAssignment) -> RootSystem:
    """R(V, omega): roots of the signed configuration pairing to +1 once and -1 once."""
    signed = apply_signs(V, omega)
    full = compute_roots(signed)
    kept = [r for r in full if r.kind == 2 and sorted(x for x in r.pairing if x) == [-1, 1]]
    return RootSystem(signed, tuple(kept))


def cartan_integer(beta: Root, alpha: Root) -> int:
    """2 (beta, alpha) / (alpha, alpha)."""
    num = 2 * dot(beta.pairing, alpha.pairing)
    den = alpha.norm
    if den == 0:
        raise AssertionError("root %s has zero length" % (alpha,))
    q, r = divmod(num, den)
    if r:
        raise AssertionError("non-integral Cartan number for %s, %s" % (beta, alpha))
    return q


def reflect(V: VectorConfiguration, alpha: Root, beta: Root) -> Root:
    """r_alpha(beta) = beta - a_{beta,alpha} alpha."""
    a = cartan_integer(beta, alpha)
    new_alpha = tuple(b - a * x for b, x in zip(beta.alpha, alpha.alpha))
    new_pairing = tuple(b - a * x for b, x in zip(beta.pairing, alpha.pairing))
    assert pairing_vector(V, new_alpha) == new_pairing
    return Root(new_alpha, new_pairing)


def dual(R: RootSystem) -> RootSystem:
    """Coroots 2 alpha / (alpha, alpha): short roots double, long ones stay.

    Lengths are 1, 2 or 4, so every coroot is integral and dualising twice
    returns the original set.
    """
    out = []
    for r in R:
        norm = r.norm
        out.append(Root(
            tuple(_exact_div(2 * x, norm) for x in r.alpha),
            tuple(_exact_div(2 * x, norm) for x in r.pairing),
        ))
    return RootSystem(R.configuration, tuple(out), not R.dual)


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise AssertionError("coroot is not integral")
    return q


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    negation_closed: bool
    reflection_closed: bool
    witness: Optional[Tuple[Root, ...]] = None

    def describe(self) -> str:
        if self.closed:
            return "closed under negation and reflections"
        if not self.negation_closed:
            (a,) = self.witness
            return "not closed under negation: -%s missing" % (a,)
        a, b, c = self.witness
        return "not closed under reflections: r_%s(%s) = %s missing" % (a, b, c)


def verify_closure(R: RootSystem) -> ClosureReport:
    """Check closure under negation and under every reflection r_alpha."""
    V = R.configuration
    for a in R:
        if -a not in R:
            return ClosureReport(False, False, True, (a,))
    for a in R:
        for b in R:
            c = reflect(V, a, b)
            if c not in R:
                return ClosureReport(False, True, False, (a, b, c))
    return ClosureReport(True, True, True)


# --- brute-force oracle -----------------------------------------------------

def hadamard_bound(V: VectorConfiguration) -> Optional[int]:
    """n times a Hadamard bound on the adjugate of one full-rank n x n row block.

    Every root coordinate is at most this in absolute value. Returns None if no
    n rows are independent (impossible for a valid configuration).
    """
    n = V.rank
    for rows in itertools.combinations(V.vectors, n):
        if determinant(IntegerMatrix(rows, n)) != 0:
            # cofactors are (n-1)-minors, each bounded by the product of row norms
            sq = math.prod(dot(v, v) for v in rows)
            return n * math.isqrt(sq - 1) + n if sq > 1 else n
    return None


def oracle_box(V: VectorConfiguration) -> Tuple[int, ...]:
    """Per-coordinate bound b with |alpha_i| <= b_i for every root alpha.

    For any invertible block S of n configuration rows, alpha = S^-1 t where t
    holds alpha's pairings with those rows, and at most two entries of t are
    nonzero (each +-1). So |alpha_i| is at most the two largest |adj(S)_ij|
    over |det S|. Each block gives a valid bound; the coordinatewise minimum
    over blocks is kept, capped by the Hadamard bound.
    """
    n = V.rank
    cap = hadamard_bound(V)
    best = [cap] * n
    for rows in itertools.combinations(V.vectors, n):
        S = IntegerMatrix(rows, n)
        d = abs(determinant(S))
        if d == 0:
            continue
        adj = adjugate(S)
        for i in range(n):
            top = sorted((abs(x) for x in adj.row(i)), reverse=True)[:2]
            best[i] = min(best[i], sum(top) // d)
    return tuple(best)


def oracle_roots(V: VectorConfiguration, max_candidates: int = 50_000_000) -> RootSystem:
    """R(V) by exhaustive search over the bounding box of all roots."""
    box = oracle_box(V)
    volume = math.prod(2 * b + 1 for b in box)
    if volume > max_candidates:
        raise ScaleError("search box %s has %d points (limit %d)" % (box, volume, max_candidates))
    n = V.rank
    vt = np.array(V.vectors, dtype=np.int64).T  # n x m
    found = []
    head, tail = box[0], box[1:]
    tail_points = list(itertools.product(*(range(-b, b + 1) for b in tail)))
    tail_grid = np.array(tail_points, dtype=np.int64).reshape(len(tail_points), n - 1)
    for a0 in range(-head, head + 1):
        cand = np.hstack([np.full((tail_grid.shape[0], 1), a0, dtype=np.int64), tail_grid])
        P = cand @ vt
        nz = np.count_nonzero(P, axis=1)
        ok = (nz >= 1) & (nz <= 2) & (np.abs(P).max(axis=1) == 1)
        for alpha in cand[ok]:
            a = tuple(int(x) for x in alpha)
            found.append(Root(a, pairing_vector(V, a)))
    return RootSystem(V, tuple(found))
