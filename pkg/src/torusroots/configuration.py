"""Finite vector configurations in a rank-n lattice and their sign variants."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .lattice import IntegerMatrix, Vector, rank


class ConfigurationError(ValueError):
    """A vector configuration violates its invariants."""


class ZeroVector(ConfigurationError):
    pass


class RankDeficient(ConfigurationError):
    pass


@dataclass(frozen=True)
class VectorConfiguration:
    """Ordered nonzero vectors v_1..v_m spanning a full-rank sublattice of Z^n.

    Order matters and duplicates are allowed; every downstream index refers to
    the position in ``vectors``.
    """

    rank: int
    vectors: Tuple[Vector, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(tuple(int(x) for x in v) for v in self.vectors))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        n = self.rank
        if n < 1:
            raise ConfigurationError("rank must be positive, got %d" % n)
        if not self.vectors:
            raise ConfigurationError("configuration needs at least one vector")
        for i, v in enumerate(self.vectors):
            if len(v) != n:
                raise ConfigurationError("vector %d has length %d, expected %d" % (i + 1, len(v), n))
            if not any(v):
                raise ZeroVector("vector %d is zero" % (i + 1))
        if self.labels is not None and len(self.labels) != len(self.vectors):
            raise ConfigurationError("got %d labels for %d vectors" % (len(self.labels), len(self.vectors)))
        r = rank(self.matrix)
        if r != n:
            raise RankDeficient("vectors span a rank-%d sublattice of a rank-%d lattice" % (r, n))

    @property
    def m(self) -> int:
        return len(self.vectors)

    @property
    def matrix(self) -> IntegerMatrix:
        """The m x n matrix whose k-th row is v_k."""
        return IntegerMatrix(self.vectors, self.rank)

    def to_json(self) -> dict:
        out = {"rank": self.rank, "vectors": [list(v) for v in self.vectors]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "VectorConfiguration":
        try:
            vectors = obj["vectors"]
            n = obj.get("rank", len(vectors[0]) if vectors else 0)
        except (KeyError, TypeError, IndexError) as exc:
            raise ConfigurationError("malformed configuration object: %s" % exc) from None
        try:
            return new_configuration(n, vectors, obj.get("labels"))
        except TypeError as exc:
            raise ConfigurationError("malformed configuration object: %s" % exc) from None


def new_configuration(rank: int, vectors: Iterable[Sequence[int]],
                      labels: Optional[Sequence[str]] = None) -> VectorConfiguration:
    vecs = []
    for v in vectors:
        if any(isinstance(x, bool) or not isinstance(x, int) for x in v):
            raise ConfigurationError("vector entries must be integers: %r" % (v,))
        vecs.append(tuple(v))
    return VectorConfiguration(rank, tuple(vecs), tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class SignAssignment:
    signs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))
        for s in self.signs:
            if s not in (1, -1):
                raise ValueError("signs must be +1 or -1, got %r" % (s,))

    def __len__(self) -> int:
        return len(self.signs)

    @classmethod
    def trivial(cls, m: int) -> "SignAssignment":
        return cls((1,) * m)

    @classmethod
    def block(cls, q: int, m: int) -> "SignAssignment":
        """+1 on the first q entries, -1 on the remaining m - q."""
        if not 0 <= q <= m:
            raise ValueError("block size q=%d out of range for m=%d" % (q, m))
        return cls((1,) * q + (-1,) * (m - q))

    def negated(self) -> "SignAssignment":
        return SignAssignment(tuple(-s for s in self.signs))

    @classmethod
    def parse(cls, text: str, m: int) -> "SignAssignment":
        """Parse ``"+,-,+,+"`` or the block shorthand ``"q=2"``."""
        text = text.strip()
        match = re.fullmatch(r"q\s*=\s*(\d+)", text)
        if match:
            return cls.block(int(match.group(1)), m)
        tokens = [t.strip() for t in text.split(",")]
        table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
        try:
            signs = tuple(table[t] for t in tokens)
        except KeyError as exc:
            raise ValueError("bad sign token %s in %r" % (exc, text)) from None
        if len(signs) != m:
            raise ValueError("sign list has %d entries, configuration has %d vectors" % (len(signs), m))
        return cls(signs)

    def __str__(self) -> str:
        return ",".join("+" if s > 0 else "-" for s in self.signs)


def apply_signs(V: VectorConfiguration, omega: SignAssignment) -> VectorConfiguration:
    """Replace each v_i by eps_i * v_i."""
    if len(omega) != V.m:
        raise ValueError("sign assignment has length %d, configuration has %d vectors" % (len(omega), V.m))
    vectors = tuple(v if s == 1 else tuple(-x for x in v) for v, s in zip(V.vectors, omega.signs))
    return VectorConfiguration(V.rank, vectors, V.labels)
