"""Seeded randomized consistency checks, run by ``vanishing-roots selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import exact_linalg as xl
from .constructions import (
    classify_construction,
    construction_lattice,
    default_catalog,
    structured_det,
    structured_matrix,
)
from .lattice import Lattice, Sublattice, check_index_formula
from .roots import classify

DEFAULT_SEED = 20240607


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def random_unimodular(rng: random.Random, n: int, bound: int = 3, steps: int | None = None) -> list[list[int]]:
    """Product of elementary operations and sign flips, entries kept within ``bound``."""
    u = xl.identity(n)
    if n < 2:
        return [[rng.choice((-1, 1))]] if n else []
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        q = rng.choice((-1, 1))
        candidate = [x + q * y for x, y in zip(u[i], u[j])]
        if max(abs(x) for x in candidate) <= bound:
            u[i] = candidate
    for i in range(n):
        if rng.random() < 0.5:
            u[i] = [-x for x in u[i]]
    for _ in range(n):
        i, j = rng.sample(range(n), 2)
        u[i], u[j] = u[j], u[i]
    return u


def random_nondegenerate_lattice(rng: random.Random, n: int, bound: int = 4) -> Lattice:
    """Random symmetric integral Gram matrix with nonzero determinant."""
    while True:
        g = xl.zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = rng.randint(-bound, bound)
        if xl.det(g) != 0:
            return Lattice(g)


def random_full_rank_sublattice(rng: random.Random, ambient: Lattice, max_diag: int = 3) -> Sublattice:
    """Basis ``U1 diag(d) U2`` with ``U1``, ``U2`` unimodular."""
    n = ambient.rank
    diag = [[rng.randint(1, max_diag) if i == j else 0 for j in range(n)] for i in range(n)]
    b = xl.matmul(xl.matmul(random_unimodular(rng, n), diag), random_unimodular(rng, n))
    return Sublattice(ambient, b)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def check_snf(rng, trials=60) -> CheckResult:
    for _ in range(trials):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        u, d, v = xl.smith_normal_form(m)
        if xl.matmul(xl.matmul(u, m), v) != d:
            return CheckResult("smith normal form", False, f"U M V != D for {m}")
        if abs(xl.det(u)) != 1 or abs(xl.det(v)) != 1:
            return CheckResult("smith normal form", False, f"non-unimodular transform for {m}")
        diag = [d[i][i] for i in range(min(rows, cols))]
        nz = [x for x in diag if x]
        if diag[: len(nz)] != nz or any(x < 0 for x in nz):
            return CheckResult("smith normal form", False, f"bad diagonal {diag}")
        if any(b % a for a, b in zip(nz, nz[1:])):
            return CheckResult("smith normal form", False, f"divisibility fails {diag}")
        if rows == cols:
            p = 1
            for x in diag:
                p *= x
            if abs(xl.det(m)) != p:
                return CheckResult("smith normal form", False, f"det mismatch for {m}")
    return CheckResult("smith normal form", True, f"{trials} random matrices")


def check_hnf(rng, trials=60) -> CheckResult:
    for _ in range(trials):
        m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        h, u = xl.hermite_normal_form(m)
        if xl.matmul(u, m) != h or abs(xl.det(u)) != 1:
            return CheckResult("hermite normal form", False, f"bad transform for {m}")
        if xl.hermite_normal_form(h).h != h:
            return CheckResult("hermite normal form", False, f"not idempotent for {m}")
        k = xl.kernel_basis_z(m)
        if k and any(any(r) for r in xl.matmul(m, xl.transpose(k))):
            return CheckResult("hermite normal form", False, f"kernel check fails for {m}")
    return CheckResult("hermite normal form", True, f"{trials} random matrices")


def check_index_formula_random(rng, trials=100) -> CheckResult:
    for _ in range(trials):
        n = rng.randint(1, 6)
        s = random_full_rank_sublattice(rng, random_nondegenerate_lattice(rng, n))
        lhs, rhs = check_index_formula(s)
        if lhs != rhs:
            return CheckResult("index formula", False, f"{lhs} != {rhs}")
    return CheckResult("index formula", True, f"{trials} random sublattices")


def check_structured_det(rng, trials=200) -> CheckResult:
    for _ in range(trials):
        a, b, c, d = (rng.randint(-3, 8) for _ in range(4))
        r = rng.randint(2, 10)
        if structured_det(a, b, c, d, r) != xl.det(structured_matrix(a, b, c, d, r)):
            return CheckResult("structured determinant", False, f"{(a, b, c, d, r)}")
    return CheckResult("structured determinant", True, f"{trials} random tuples")


def check_basis_invariance(rng, conjugations=3) -> CheckResult:
    for c in default_catalog():
        lat = construction_lattice(c)
        if lat.rank == 0:
            continue
        base = classify_construction(c)
        for _ in range(conjugations):
            b = random_unimodular(rng, lat.rank)
            other = classify(lat.change_basis(b))
            if (other.components, other.disc, other.root_count) != (
                base.components,
                base.disc,
                base.root_count,
            ):
                return CheckResult("basis invariance", False, c.label)
    return CheckResult("basis invariance", True, f"{conjugations} conjugations per construction")


def run_selftest(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    return [
        check_snf(rng),
        check_hnf(rng),
        check_index_formula_random(rng),
        check_structured_det(rng),
        check_basis_invariance(rng),
    ]
