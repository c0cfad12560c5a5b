"""Irreducible decomposition and A/B/C/D classification of root systems.

Each component is labelled twice: once by matching its Dynkin diagram against
the classical catalog, and once from the type data of its simple roots
(short type-1 simple root gives B, conjugate type-2 simple roots give D,
otherwise A). The two labels must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .lattice import IntegerMatrix, Vector, dot
from .rootsys import Root, RootSystem, cartan_integer, verify_closure


class UnexpectedType(RuntimeError):
    """The Dynkin diagram is not of type A, B, C or D."""

    def __init__(self, message: str, cartan: Optional[IntegerMatrix] = None):
        super().__init__(message)
        self.cartan = cartan


class NotASubsystem(ValueError):
    """A root subset is not closed, or not contained in the parent system."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ClassificationMismatch(AssertionError):
    """Catalog and simple-root criteria produced different labels."""


@dataclass(frozen=True, order=True)
class TypeLabel:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "B", "C", "D"):
            raise ValueError("unknown family %r" % (self.family,))
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.family == "D" and self.rank < 4:
            raise ValueError("type D needs rank >= 4")

    def __str__(self) -> str:
        return "%s%d" % (self.family, self.rank)


@dataclass(frozen=True)
class IrreducibleComponent:
    roots: Tuple[Root, ...]
    simple_roots: Tuple[Root, ...]
    cartan: IntegerMatrix
    label: TypeLabel
    criteria_label: TypeLabel
    conjugate_pairs: Tuple[Tuple[Root, Root], ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def short_roots(self) -> Tuple[Root, ...]:
        """Simple roots shorter than the longest simple root."""
        longest = max(r.norm for r in self.simple_roots)
        return tuple(r for r in self.simple_roots if r.norm < longest)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(set().union(*(r.support for r in self.roots))))

    def to_json(self) -> dict:
        return {
            "family": self.label.family,
            "rank": self.label.rank,
            "simple_roots": [list(r.alpha) for r in self.simple_roots],
            "cartan": self.cartan.tolist(),
            "conjugate_pairs": [[list(a.alpha), list(b.alpha)] for a, b in self.conjugate_pairs],
            "short_roots": [list(r.alpha) for r in self.short_roots],
        }


# --- decomposition ----------------------------------------------------------

def components(R: RootSystem) -> List[Tuple[Root, ...]]:
    """Connected components of the non-orthogonality graph, ordered by first root."""
    roots = R.roots
    parent = list(range(len(roots)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(roots)), 2):
        if dot(roots[i].pairing, roots[j].pairing) != 0:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: Dict[int, List[Root]] = {}
    for i, r in enumerate(roots):
        groups.setdefault(find(i), []).append(r)
    return [tuple(groups[k]) for k in sorted(groups)]


def positivity_functional(roots: Iterable[Root]) -> Vector:
    """w = (1, B, B^2, ...) with B = 1 + 2 max|alpha_i|, nonzero on every root.

    Each root is a balanced base-B digit string under w, so <alpha, w> = 0
    forces alpha = 0.
    """
    roots = list(roots)
    if not roots:
        return ()
    n = len(roots[0].alpha)
    B = 1 + 2 * max(abs(x) for r in roots for x in r.alpha)
    return tuple(B ** k for k in range(n))


def simple_roots(component: Sequence[Root]) -> Tuple[Root, ...]:
    """Positive roots that are not a sum of two positive roots, sorted by alpha."""
    w = positivity_functional(component)
    positive = [r for r in component if dot(r.alpha, w) > 0]
    if len(positive) * 2 != len(component):
        raise AssertionError("positivity functional vanishes on a root or component is not symmetric")
    pos_alphas = {r.alpha for r in positive}
    simple = []
    for r in positive:
        decomposable = any(
            tuple(a - b for a, b in zip(r.alpha, q.alpha)) in pos_alphas
            for q in positive if q is not r
        )
        if not decomposable:
            simple.append(r)
    return tuple(sorted(simple))


def cartan_matrix(simple: Sequence[Root]) -> IntegerMatrix:
    """Entry (i, j) is a_{s_i, s_j} = 2 (s_i, s_j) / (s_j, s_j)."""
    k = len(simple)
    return IntegerMatrix(([cartan_integer(a, b) for b in simple] for a in simple), k)


def conjugate_pairs(roots: Iterable[Root]) -> List[Tuple[Root, Root]]:
    """Linearly independent type-2 pairs with a common two-element support."""
    by_support: Dict[Tuple[int, ...], List[Root]] = {}
    for r in roots:
        if r.kind == 2 and all(abs(x) <= 1 for x in r.pairing):
            by_support.setdefault(tuple(sorted(r.support)), []).append(r)
    pairs = []
    for support in sorted(by_support):
        group = sorted(by_support[support])
        for a, b in itertools.combinations(group, 2):
            if a.pairing != tuple(-x for x in b.pairing):
                pairs.append((a, b))
    return pairs


# --- catalog route ----------------------------------------------------------

def _catalog_simple_vectors(family: str, rank: int) -> List[Tuple[int, ...]]:
    n = rank
    if family == "A":
        return [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1)) for i in range(n)]
    base = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(n - 1)]
    last = [0] * n
    if family == "B":
        last[-1] = 1
        return base + [tuple(last)]
    if family == "C":
        last[-1] = 2
        return base + [tuple(last)]
    if family == "D":
        last[-2] = last[-1] = 1
        return base + [tuple(last)]
    raise ValueError(family)


def catalog_cartan(label: TypeLabel) -> IntegerMatrix:
    """Cartan matrix of the standard realisation of a classical type."""
    vecs = _catalog_simple_vectors(label.family, label.rank)
    return IntegerMatrix(([2 * dot(a, b) // dot(b, b) for b in vecs] for a in vecs), label.rank)


@dataclass(frozen=True)
class DynkinDiagram:
    size: int
    edges: Dict[Tuple[int, int], int] = field(hash=False)
    # for each multiple edge, the endpoint carrying the shorter root
    short_end: Dict[Tuple[int, int], int] = field(hash=False)

    @classmethod
    def from_cartan(cls, C: IntegerMatrix) -> "DynkinDiagram":
        n = C.nrows
        edges, short = {}, {}
        for i, j in itertools.combinations(range(n), 2):
            if C[i, j] == 0 and C[j, i] == 0:
                continue
            if C[i, j] == 0 or C[j, i] == 0 or C[i, j] > 0 or C[j, i] > 0:
                raise UnexpectedType("inconsistent Cartan entries at (%d, %d)" % (i, j), C)
            edges[(i, j)] = C[i, j] * C[j, i]
            if C[i, j] != C[j, i]:
                # |a_ij| > 1 means s_j is the short one
                short[(i, j)] = j if abs(C[i, j]) > abs(C[j, i]) else i
        return cls(n, edges, short)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbours(self, v: int) -> List[int]:
        return sorted(b if a == v else a for a, b in self.edges if v in (a, b))

    def is_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            for u in self.neighbours(stack.pop()):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.size

    def arm_length(self, start: int, came_from: int) -> int:
        length, prev, cur = 1, came_from, start
        while True:
            nxt = [u for u in self.neighbours(cur) if u != prev]
            if not nxt:
                return length
            prev, cur = cur, nxt[0]
            length += 1


def classify_cartan(C: IntegerMatrix, dual: bool = False) -> TypeLabel:
    """Identify a connected Cartan matrix from its Dynkin diagram shape.

    B2 and C2 share a diagram; ``dual`` selects C2. The rank-3 diagram with a
    branch point cannot occur, and D3 = A3 is reported as A3.
    """
    n = C.nrows
    if any(C[i, i] != 2 for i in range(n)):
        raise UnexpectedType("Cartan diagonal must be 2", C)
    if n == 1:
        return TypeLabel("A", 1)
    g = DynkinDiagram.from_cartan(C)
    if not g.is_connected():
        raise UnexpectedType("Dynkin diagram is disconnected", C)
    if len(g.edges) != n - 1:
        raise UnexpectedType("Dynkin diagram has a cycle", C)
    if any(mult > 2 for mult in g.edges.values()):
        raise UnexpectedType("triple edge (type G2)", C)
    degrees = [g.degree(v) for v in range(n)]
    doubles = [e for e, mult in g.edges.items() if mult == 2]
    if len(doubles) > 1:
        raise UnexpectedType("more than one double edge", C)
    if doubles:
        if max(degrees) > 2:
            raise UnexpectedType("branched diagram with a double edge", C)
        (i, j), = doubles
        if n == 2:
            return TypeLabel("C" if dual else "B", 2)
        leaf = i if degrees[i] == 1 else j if degrees[j] == 1 else None
        if leaf is None:
            raise UnexpectedType("double edge in the interior (type F4)", C)
        return TypeLabel("B" if g.short_end[(i, j)] == leaf else "C", n)
    if max(degrees) <= 2:
        return TypeLabel("A", n)
    branches = [v for v in range(n) if degrees[v] >= 3]
    if len(branches) != 1 or degrees[branches[0]] != 3:
        raise UnexpectedType("diagram has several branch points", C)
    b = branches[0]
    arms = sorted(g.arm_length(u, b) for u in g.neighbours(b))
    if arms[0] == arms[1] == 1:
        return TypeLabel("D", n)
    raise UnexpectedType("branched simply-laced diagram with arms %s (type E)" % (arms,), C)


def classify_by_catalog(simple: Sequence[Root], dual: bool = False) -> TypeLabel:
    return classify_cartan(cartan_matrix(simple), dual)


# --- criteria route ---------------------------------------------------------

def classify_by_criteria(simple: Sequence[Root], dual: bool = False) -> TypeLabel:
    """Label a component from its simple roots alone.

    A type-1 simple root (support of size one) makes it B, or C in a dual
    system where those roots were doubled. Otherwise conjugate simple roots
    make it D, except in rank 3 where that diagram is A3.
    """
    k = len(simple)
    if k == 1:
        return TypeLabel("A", 1)
    if any(r.kind == 1 for r in simple):
        return TypeLabel("C" if dual else "B", k)
    if conjugate_pairs(simple) and k >= 4:
        return TypeLabel("D", k)
    return TypeLabel("A", k)


# --- driver -----------------------------------------------------------------

def classify_component(roots: Sequence[Root], dual: bool = False) -> IrreducibleComponent:
    simple = simple_roots(roots)
    C = cartan_matrix(simple)
    label = classify_cartan(C, dual)
    crit = classify_by_criteria(simple, dual)
    if label != crit:
        raise ClassificationMismatch(
            "catalog says %s, simple-root criteria say %s for simple roots %s"
            % (label, crit, ", ".join(map(str, simple))))
    notes = []
    if len(simple) == 3 and not dual and all(r.kind == 2 for r in simple) and conjugate_pairs(simple):
        notes.append("conjugate simple roots in rank 3: D3 reported as A3")
    if len(simple) == 1 and not dual and simple[0].kind == 1:
        notes.append("rank-1 component on a short root")
    return IrreducibleComponent(
        roots=tuple(roots),
        simple_roots=simple,
        cartan=C,
        label=label,
        criteria_label=crit,
        conjugate_pairs=tuple(conjugate_pairs(roots)),
        notes=tuple(notes),
    )


def classify_subsystem(R: RootSystem, subset: Optional[Iterable] = None) -> List[IrreducibleComponent]:
    """Check that ``subset`` is a closed subsystem of R, then classify it.

    ``subset`` may hold Root objects or bare alpha vectors; None means all of R.
    """
    if subset is None:
        sub = R
    else:
        chosen = []
        for item in subset:
            alpha = item.alpha if isinstance(item, Root) else tuple(item)
            root = R.get(alpha)
            if root is None:
                raise NotASubsystem("%s is not a root of the system" % (alpha,), alpha)
            chosen.append(root)
        sub = R.subset(chosen)
    report = verify_closure(sub)
    if not report.closed:
        raise NotASubsystem(report.describe(), report)
    return [classify_component(c, R.dual) for c in components(sub)]


def classify(R: RootSystem) -> List[IrreducibleComponent]:
    return classify_subsystem(R)


def type_string(comps: Sequence[IrreducibleComponent]) -> str:
    """Product notation such as ``A1 x A2``; the empty product is ``0``."""
    if not comps:
        return "0"
    return " x ".join(str(c.label) for c in comps)


def classification_report(comps: Sequence[IrreducibleComponent]) -> dict:
    return {
        "components": [c.to_json() for c in comps],
        "criteria_agreement": all(c.label == c.criteria_label for c in comps),
    }
