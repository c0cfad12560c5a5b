"""Shared constructors for the test suite."""

import itertools
import random

from torusroots.configuration import ConfigurationError, new_configuration


def basis(n):
    return [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]


def std_config(n):
    """{e_1, ..., e_n}."""
    return new_configuration(n, basis(n))


def cp_config(n):
    """{e_1, ..., e_n, -(e_1 + ... + e_n)}."""
    return new_configuration(n, basis(n) + [tuple([-1] * n)])


def b_roots(n):
    """The listed roots +-e_i, +-e_i +- e_j of the standard basis configuration."""
    out = set()
    for i, e in enumerate(basis(n)):
        out.add(e)
        out.add(tuple(-x for x in e))
    for i, j in itertools.combinations(range(n), 2):
        for si in (1, -1):
            for sj in (1, -1):
                v = [0] * n
                v[i], v[j] = si, sj
                out.add(tuple(v))
    return out


def a_roots_with_units(n):
    """+-e_i and +-(e_i - e_j), the roots listed for the CP^n configuration."""
    out = set()
    for e in basis(n):
        out.add(e)
        out.add(tuple(-x for x in e))
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * n
        v[i], v[j] = 1, -1
        out.add(tuple(v))
        out.add(tuple(-x for x in v))
    return out


def random_configurations(count, seed=20240601, max_rank=4, max_vectors=8, max_entry=3):
    """Seeded valid configurations; half use entries in [-1, 1] so roots are common."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_rank)
        m = rng.randint(n, max_vectors)
        bound = 1 if rng.random() < 0.5 else max_entry
        vectors = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(m)]
        try:
            out.append(new_configuration(n, vectors))
        except ConfigurationError:
            continue
    return out
