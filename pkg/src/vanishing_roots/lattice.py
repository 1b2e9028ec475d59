"""Integral lattices given by a Gram matrix.

A :class:`Lattice` is stored abstractly: its basis is the standard basis of
``Z^rank`` and all geometry lives in the symmetric integral Gram matrix.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod

from . import exact_linalg as xl
from .errors import (
    CapacityError,
    DegenerateFormError,
    NotIntegralError,
    NotPositiveDefiniteError,
)

DEFAULT_MAX_DISC = 64
MAX_DISC_ENV = "VANISHING_ROOTS_MAX_DISC"


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    label: str = ""

    def __init__(self, gram, label: str = ""):
        rows = [list(r) for r in gram]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        try:
            ints = xl.as_int_matrix(rows)
        except ValueError as exc:
            raise NotIntegralError(f"Gram matrix is not integral: {exc}") from None
        for i in range(n):
            for j in range(i):
                if ints[i][j] != ints[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", tuple(tuple(r) for r in ints))
        object.__setattr__(self, "label", label)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def gram_matrix(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def pair(self, x, y):
        return sum(xi * gij * yj for xi, row in zip(x, self.gram) for gij, yj in zip(row, y))

    def norm(self, x):
        return self.pair(x, x)

    def det(self) -> int:
        return xl.det(self.gram_matrix())

    def change_basis(self, b, label: str | None = None) -> "Lattice":
        """Lattice spanned by the rows of ``b``: Gram ``b G b^T``."""
        g = xl.matmul(xl.matmul(b, self.gram_matrix()), xl.transpose(b))
        return Lattice(g, self.label if label is None else label)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "gram": self.gram_matrix(), "label": self.label}

    @classmethod
    def from_dict(cls, data: dict) -> "Lattice":
        if not isinstance(data, dict) or "gram" not in data:
            raise ValueError("lattice JSON must be an object with a 'gram' key")
        gram = data["gram"]
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise ValueError("'gram' must be a list of rows")
        for row in gram:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ValueError(f"Gram entry {x!r} is not an integer")
        if "rank" in data and data["rank"] != len(gram):
            raise ValueError(f"rank {data['rank']} does not match Gram size {len(gram)}")
        return cls(gram, data.get("label", ""))

    @classmethod
    def from_json(cls, text: str) -> "Lattice":
        return cls.from_dict(json.loads(text))


def root_lattice(family: str, n: int) -> Lattice:
    """Standard Cartan-matrix Gram of A_n, D_n (n >= 4) or E_6/E_7/E_8."""
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif family == "E" and n in (6, 7, 8):
        # chain 0-1-...-(n-2) with node n-1 attached to node 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise ValueError(f"no simply laced root lattice {family}{n}")
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return Lattice(g, f"{family}{n}")


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def discriminant_group(lat: Lattice) -> DiscriminantGroup:
    snf = xl.smith_normal_form(lat.gram_matrix())
    diag = snf.diagonal
    if any(d == 0 for d in diag):
        raise DegenerateFormError(f"Gram matrix of rank-{lat.rank} lattice is degenerate")
    return DiscriminantGroup(tuple(d for d in diag if d > 1))


def leading_minors(lat: Lattice) -> list[int]:
    g = lat.gram_matrix()
    return [xl.det([row[:k] for row in g[:k]]) for k in range(1, lat.rank + 1)]


def check_positive_definite(lat: Lattice) -> None:
    """Raise :class:`NotPositiveDefiniteError` naming the first bad minor."""
    for k, minor in enumerate(leading_minors(lat), start=1):
        if minor <= 0:
            raise NotPositiveDefiniteError(k, minor)


def is_positive_definite(lat: Lattice) -> bool:
    return all(m > 0 for m in leading_minors(lat))


def is_even(lat: Lattice) -> bool:
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


@dataclass(frozen=True)
class Sublattice:
    """Full or partial sublattice spanned by integer rows in ambient coordinates."""

    ambient: Lattice
    basis_in_ambient: tuple[tuple[int, ...], ...]

    def __init__(self, ambient: Lattice, basis_in_ambient):
        basis = xl.as_int_matrix(basis_in_ambient)
        if any(len(r) != ambient.rank for r in basis):
            raise ValueError("basis rows must have ambient rank length")
        if xl.rank(basis) != len(basis):
            raise ValueError("sublattice basis rows are linearly dependent")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis_in_ambient", tuple(tuple(r) for r in basis))

    def lattice(self) -> Lattice:
        return self.ambient.change_basis([list(r) for r in self.basis_in_ambient])


def sublattice_index(s: Sublattice) -> int:
    k = len(s.basis_in_ambient)
    if k != s.ambient.rank:
        raise ValueError(f"sublattice of rank {k} is not of full rank {s.ambient.rank}")
    return abs(xl.det([list(r) for r in s.basis_in_ambient]))


def check_index_formula(s: Sublattice) -> tuple[int, int]:
    """Return ``([S^v:S], [L^v:L] * [L:S]^2)`` for ``S`` inside ``L``."""
    index = sublattice_index(s)
    lhs = discriminant_group(s.lattice()).order
    rhs = discriminant_group(s.ambient).order * index**2
    return lhs, rhs


@dataclass(frozen=True)
class Overlattice:
    """Even overlattice ``M`` of ``L`` with ``L <= M <= L^v``.

    ``basis`` expresses a basis of ``M`` in the coordinates of ``L``; ``glue``
    lists the elements of the isotropic subgroup of ``L^v/L`` in the
    invariant-factor coordinates of the discriminant group.
    """

    basis: tuple[tuple[Fraction, ...], ...]
    lattice: Lattice
    index: int
    glue: tuple[tuple[int, ...], ...] = field(default=())


def _max_disc_from_env() -> int:
    raw = os.environ.get(MAX_DISC_ENV)
    if raw is None:
        return DEFAULT_MAX_DISC
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{MAX_DISC_ENV} must be an integer, got {raw!r}") from None


def enumerate_even_overlattices(lat: Lattice, max_disc: int | None = None) -> list[Overlattice]:
    """All even integral ``M`` with ``L <= M <= L^v``, ``L`` itself first.

    Subgroups of ``L^v/L`` are enumerated by brute force, so the discriminant
    order is capped (``max_disc``, default 64 or ``$VANISHING_ROOTS_MAX_DISC``).
    """
    if max_disc is None:
        max_disc = _max_disc_from_env()
    if not is_even(lat):
        raise ValueError("overlattice enumeration requires an even lattice")
    check_positive_definite(lat)
    g = lat.gram_matrix()
    n = lat.rank
    snf = xl.smith_normal_form(g)
    diag = snf.diagonal
    if any(d == 0 for d in diag):
        raise DegenerateFormError("degenerate Gram matrix")
    order = prod(diag)
    if order > max_disc:
        raise CapacityError(
            f"discriminant group of order {order} exceeds the capacity bound {max_disc}"
        )
    # G = U^-1 D V^-1, so L^v = G^-1 Z^n = V D^-1 Z^n: column i of V over d_i.
    factors = [(i, d) for i, d in enumerate(diag) if d > 1]
    gens = [[Fraction(snf.v[r][i], d) for r in range(n)] for i, d in factors]
    mods = [d for _, d in factors]

    def vector(elem):
        return [sum(c * gen[r] for c, gen in zip(elem, gens)) for r in range(n)]

    def pair(x, y):
        return sum(xi * g[i][j] * y[j] for i, xi in enumerate(x) if xi for j in range(n))

    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, mods))

    elements = list(itertools.product(*(range(d) for d in mods)))
    vecs = {e: vector(e) for e in elements}
    isotropic = [
        e for e in elements if any(e) and pair(vecs[e], vecs[e]).denominator == 1
        and pair(vecs[e], vecs[e]).numerator % 2 == 0
    ]
    zero = tuple(0 for _ in mods)

    def close(group, x):
        new = set(group)
        frontier = list(group)
        while frontier:
            y = frontier.pop()
            z = add(y, x)
            if z not in new:
                new.add(z)
                frontier.append(z)
        return frozenset(new)

    seen = {frozenset([zero])}
    queue = [frozenset([zero])]
    while queue:
        group = queue.pop()
        for x in isotropic:
            if x in group:
                continue
            if any(pair(vecs[x], vecs[y]).denominator != 1 for y in group):
                continue
            bigger = close(group, x)
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)

    result = []
    for group in sorted(seen, key=lambda s: (len(s), sorted(s))):
        reps = [vecs[e] for e in sorted(group) if any(e)]
        basis = _span_basis(xl.identity(n), reps)
        m_gram = xl.matmul(xl.matmul(basis, g), xl.transpose(basis))
        sub = Lattice(m_gram, lat.label and f"{lat.label}+glue{len(group)}")
        result.append(
            Overlattice(
                basis=tuple(tuple(r) for r in basis),
                lattice=sub,
                index=len(group),
                glue=tuple(sorted(group)),
            )
        )
    return result


def _span_basis(int_rows, rat_rows) -> list[list[Fraction]]:
    """Rational basis (Hermite canonical) of the Z-span of the given rows."""
    rows = [[Fraction(x) for x in r] for r in int_rows] + [list(r) for r in rat_rows]
    den = lcm(1, *(x.denominator for r in rows for x in r))
    scaled = [[int(x * den) for x in r] for r in rows]
    return [[Fraction(x, den) for x in r] for r in xl.hnf_rows(scaled)]
