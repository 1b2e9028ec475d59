"""Norm-2 vectors of definite lattices and their ADE classification."""

from __future__ import annotations

import re
from operator import add, mul, sub
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt, lcm, prod
from typing import Optional

from . import exact_linalg as xl
from .errors import NotPositiveDefiniteError, ReducibleRootSystemError
from .lattice import (
    DiscriminantGroup,
    Lattice,
    check_positive_definite,
    discriminant_group,
    enumerate_even_overlattices,
)

Vector = tuple[int, ...]

_E_WEYL = {6: 51840, 7: 2903040, 8: 696729600}
_E_ROOTS = {6: 72, 7: 126, 8: 240}
_E_DISC = {6: 3, 7: 2, 8: 1}


@dataclass(frozen=True, order=True)
class AdeType:
    """Irreducible simply laced type: ``A(n>=1)``, ``D(n>=4)`` or ``E(6|7|8)``.

    Rank-3 systems of D shape do not exist as graphs here; ``A3`` is used.
    """

    family: str
    n: int

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.n >= 1)
            or (self.family == "D" and self.n >= 4)
            or (self.family == "E" and self.n in (6, 7, 8))
        )
        if not ok:
            raise ValueError(f"not an ADE type: {self.family}{self.n}")

    def __str__(self):
        return f"{self.family}{self.n}"

    @classmethod
    def parse(cls, text: str) -> "AdeType":
        m = re.fullmatch(r"\s*([ADE])_?\(?(\d+)\)?\s*", text)
        if not m:
            raise ValueError(f"cannot parse ADE type {text!r}")
        family, n = m.group(1), int(m.group(2))
        if family == "D" and n == 3:
            family = "A"
        return cls(family, n)

    @property
    def rank(self) -> int:
        return self.n

    @property
    def root_count(self) -> int:
        if self.family == "A":
            return self.n * (self.n + 1)
        if self.family == "D":
            return 2 * self.n * (self.n - 1)
        return _E_ROOTS[self.n]

    @property
    def disc_order(self) -> int:
        if self.family == "A":
            return self.n + 1
        if self.family == "D":
            return 4
        return _E_DISC[self.n]

    @property
    def weyl_order(self) -> int:
        if self.family == "A":
            return factorial(self.n + 1)
        if self.family == "D":
            return 2 ** (self.n - 1) * factorial(self.n)
        return _E_WEYL[self.n]


def A(n):
    return AdeType("A", n)


def D(n):
    return AdeType("D", n)


def E(n):
    return AdeType("E", n)


def format_types(types) -> str:
    return "+".join(str(t) for t in types) if types else "none"


def types_by_invariants(rank: int, disc_order: int) -> list[AdeType]:
    """Irreducible types with the given rank and discriminant order.

    This is the lookup shortcut; it cannot see reducibility or non-spanning
    roots, so :func:`classify` only uses it as a cross-check.
    """
    out = []
    if rank >= 1 and disc_order == rank + 1:
        out.append(A(rank))
    if rank >= 4 and disc_order == 4:
        out.append(D(rank))
    if rank in _E_DISC and disc_order == _E_DISC[rank]:
        out.append(E(rank))
    return out


def enumerate_roots(lat: Lattice, norm: int = 2) -> list[Vector]:
    """All ``x`` in ``Z^rank`` with ``x G x^T == norm``, sorted lexicographically.

    Fincke-Pohst style depth-first search over the exact rational LDL^T
    decomposition ``Q(x) = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2``.
    """
    check_positive_definite(lat)
    n = lat.rank
    if n == 0:
        return []
    g = [[Fraction(x) for x in row] for row in lat.gram]
    q = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    # LDL^T with unit upper factor: G = U^T diag(q) U, U[i][j] = mu[i][j].
    for i in range(n):
        q[i] = g[i][i] - sum(mu[k][i] ** 2 * q[k] for k in range(i))
        for j in range(i + 1, n):
            mu[i][j] = (g[i][j] - sum(mu[k][i] * mu[k][j] * q[k] for k in range(i))) / q[i]

    # Integer rescaling: mu = M / den, q = P / S; scaled budget R' = R S den^2
    # and the level-i contribution is P_i (v den - C)^2 with C = -sum M_ij x_j.
    den = lcm(*(mu[i][j].denominator for i in range(n) for j in range(i + 1, n)), 1)
    scale = lcm(*(qi.denominator for qi in q))
    big_m = [[int(mu[i][j] * den) for j in range(n)] for i in range(n)]
    big_p = [int(qi * scale) for qi in q]
    found: list[Vector] = []
    x = [0] * n

    def search(i: int, remaining: int):
        c = -sum(big_m[i][j] * x[j] for j in range(i + 1, n))
        s = isqrt(remaining // big_p[i])
        lo = -((s - c) // den)  # ceil((c - s) / den)
        hi = (c + s) // den
        for v in range(lo, hi + 1):
            rest = remaining - big_p[i] * (v * den - c) ** 2
            if rest < 0:
                continue
            x[i] = v
            if i == 0:
                if rest == 0:
                    found.append(tuple(x))
            else:
                search(i - 1, rest)
        x[i] = 0

    search(n - 1, norm * scale * den * den)
    return sorted(found)


@dataclass(frozen=True)
class RootSystem:
    lattice: Lattice
    roots: tuple[Vector, ...]
    simple_roots: tuple[int, ...] = ()
    cartan: tuple[tuple[int, ...], ...] = ()

    def simple_vectors(self) -> list[Vector]:
        return [self.roots[i] for i in self.simple_roots]


@dataclass(frozen=True)
class AxiomVerdict:
    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _gram_times(lat: Lattice, v) -> list:
    return [sum(map(mul, row, v)) for row in lat.gram]


def _dot(a, b):
    return sum(map(mul, a, b))


def verify_root_axioms(r: RootSystem) -> AxiomVerdict:
    """Check Bourbaki's SR_I-SR_III, returning the first failure with a witness.

    SR_I: finite and 0 not a root.  SR_II: every reflection
    ``x -> x - <x, t^v> t`` with ``<x, t^v> = 2 (x, t) / (t, t)`` preserves
    the set.  SR_III: every ``<x, t^v>`` is an integer.
    """
    lat = r.lattice
    roots = [tuple(v) for v in r.roots]
    zero = tuple(0 for _ in range(lat.rank))
    if zero in roots:
        return AxiomVerdict(False, "SR_I", (zero,), "zero vector in root set")
    root_set = set(roots)
    for t in roots:
        if _dot(t, _gram_times(lat, t)) == 0:
            return AxiomVerdict(False, "SR_I", (t,), "isotropic root")
        neg = tuple(-a for a in t)
        if neg not in root_set:
            # the reflection in t sends t to -t
            return AxiomVerdict(
                False, "SR_II", (t, t, neg), f"reflection in {t} maps it to non-root {neg}"
            )
    # s_t = s_{-t} and s_t(-x) = -s_t(x), so half of the set suffices from here on
    half = [v for v in roots if next(a for a in v if a) > 0]
    for t in half:
        gt = _gram_times(lat, t)
        tt = _dot(t, gt)
        pairings = [sum(map(mul, x, gt)) for x in half]
        for x, p in zip(half, pairings):
            if not p:
                continue
            num = 2 * p
            if num % tt:
                return AxiomVerdict(
                    False, "SR_III", (x, t), f"<x, t^v> = {Fraction(num, tt)} is not an integer"
                )
            c = num // tt
            if c == 1:
                image = tuple(map(sub, x, t))
            elif c == -1:
                image = tuple(map(add, x, t))
            else:
                image = tuple(a - c * b for a, b in zip(x, t))
            if image not in root_set:
                return AxiomVerdict(
                    False,
                    "SR_II",
                    (t, x, image),
                    f"reflection in {t} maps {x} to non-root {image}",
                )
    return AxiomVerdict(True)


def positivity_weights(roots) -> list[int]:
    """Weights ``1, B, B^2, ...`` with ``B = 2 * max|coordinate| + 1``.

    With this ``B`` the functional is injective on the root coordinates, so no
    root is orthogonal to it and no two roots tie.
    """
    m = max((abs(c) for v in roots for c in v), default=0)
    base = 2 * m + 1
    dim = len(roots[0]) if roots else 0
    return [base**i for i in range(dim)]


def simple_roots(roots) -> list[Vector]:
    """Indecomposable positive roots for the deterministic functional above."""
    roots = [tuple(v) for v in roots]
    if not roots:
        return []
    w = positivity_weights(roots)
    positive = sorted((v for v in roots if _dot(v, w) > 0), key=lambda v: _dot(v, w))
    pos_set = set(positive)
    out = []
    for a in positive:
        decomposable = any(
            tuple(x - y for x, y in zip(a, b)) in pos_set for b in positive if b != a
        )
        if not decomposable:
            out.append(a)
    return out


def root_system(lat: Lattice) -> RootSystem:
    roots = tuple(enumerate_roots(lat))
    simple = simple_roots(roots)
    index = {v: i for i, v in enumerate(roots)}
    cartan = tuple(tuple(lat.pair(a, b) for b in simple) for a in simple)
    return RootSystem(lat, roots, tuple(index[v] for v in simple), cartan)


def dynkin_components(cartan) -> list[list[int]]:
    """Connected components of the Dynkin graph, each sorted, in order of first node."""
    n = len(cartan)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and cartan[i][j] and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def identify_component(cartan, nodes) -> AdeType:
    """Name a connected simply laced Dynkin graph by its shape."""
    k = len(nodes)
    adj = {i: [j for j in nodes if j != i and cartan[i][j]] for i in nodes}
    for i in nodes:
        if cartan[i][i] != 2 or any(cartan[i][j] != -1 for j in adj[i]):
            raise AssertionError(f"Cartan row {i} is not simply laced")
    edges = sum(len(v) for v in adj.values()) // 2
    if edges != k - 1:
        raise AssertionError("Dynkin graph is not a tree")
    degrees = sorted(len(v) for v in adj.values())
    if k == 1 or degrees[-1] <= 2:
        return A(k)
    branch_nodes = [i for i in nodes if len(adj[i]) >= 3]
    if len(branch_nodes) != 1 or len(adj[branch_nodes[0]]) != 3:
        raise AssertionError("Dynkin graph has an unsupported branching")
    centre = branch_nodes[0]
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return D(k)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return E(k)
    raise AssertionError(f"Dynkin graph with arms {arms} is not of ADE type")


def component_types(r: RootSystem) -> list[AdeType]:
    return sorted(
        identify_component(r.cartan, comp) for comp in dynkin_components(r.cartan)
    )


def reflect(lat: Lattice, x, t) -> Vector:
    c = lat.pair(x, t)
    return tuple(a - c * b for a, b in zip(x, t))


def weyl_orbit(r: RootSystem, root) -> set[Vector]:
    """Closure of ``root`` under reflections in the simple roots."""
    lat = r.lattice
    simple = [(s, _gram_times(lat, s)) for s in r.simple_vectors()]
    orbit = {tuple(root)}
    frontier = [tuple(root)]
    while frontier:
        x = frontier.pop()
        for s, gs in simple:
            c = _dot(x, gs)
            if c:
                y = tuple(a - c * b for a, b in zip(x, s))
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
    return orbit


def weyl_orbit_is_transitive(r: RootSystem) -> bool:
    if not r.roots:
        raise ValueError("empty root system")
    if len(dynkin_components(r.cartan)) != 1:
        raise ReducibleRootSystemError("transitivity is only defined for irreducible systems")
    return weyl_orbit(r, r.roots[0]) == set(r.roots)


def span_index(lat: Lattice, vectors) -> Optional[int]:
    """``[lat : span(vectors)]``, or ``None`` if the span has lower rank."""
    if lat.rank == 0:
        return 1
    basis = xl.hnf_rows([list(v) for v in vectors]) if vectors else []
    if len(basis) < lat.rank:
        return None
    return abs(xl.det(basis))


@dataclass
class ClassificationReport:
    rank: int
    disc: DiscriminantGroup
    root_count: int
    components: list[AdeType]
    roots_span_lattice: bool
    weyl_order: int
    root_span_index: Optional[int] = None
    possible_overlattice_types: Optional[list[list[AdeType]]] = None
    root_system: Optional[RootSystem] = field(default=None, repr=False, compare=False)

    @property
    def no_roots(self) -> bool:
        return self.root_count == 0

    @property
    def irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def summary(self) -> str:
        return format_types(self.components) if self.components else "no roots"

    def candidate_types(self) -> Optional[set[tuple[AdeType, ...]]]:
        if self.possible_overlattice_types is None:
            return None
        return {tuple(t) for t in self.possible_overlattice_types}

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "disc": {
                "invariant_factors": list(self.disc.invariant_factors),
                "order": self.disc.order,
            },
            "root_count": self.root_count,
            "components": [str(t) for t in self.components],
            "roots_span_lattice": self.roots_span_lattice,
            "root_span_index": self.root_span_index,
            "weyl_order": self.weyl_order,
            "possible_overlattice_types": None
            if self.possible_overlattice_types is None
            else [[str(t) for t in ts] for ts in self.possible_overlattice_types],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClassificationReport":
        pot = d.get("possible_overlattice_types")
        return cls(
            rank=d["rank"],
            disc=DiscriminantGroup(tuple(d["disc"]["invariant_factors"])),
            root_count=d["root_count"],
            components=[AdeType.parse(t) for t in d["components"]],
            roots_span_lattice=d["roots_span_lattice"],
            weyl_order=d["weyl_order"],
            root_span_index=d.get("root_span_index"),
            possible_overlattice_types=None
            if pot is None
            else [[AdeType.parse(t) for t in ts] for ts in pot],
        )


def classify(lat: Lattice, overlattices: bool = False, max_disc: int | None = None) -> ClassificationReport:
    """Enumerate roots, verify the axioms and name the Dynkin components.

    With ``overlattices=True`` the report also lists, for every even
    overlattice of ``lat`` that is spanned by its own roots, the root system
    type of that overlattice.
    """
    check_positive_definite(lat)
    disc = discriminant_group(lat)
    rs = root_system(lat)
    if rs.roots:
        verdict = verify_root_axioms(rs)
        if not verdict:
            raise AssertionError(f"norm-2 vectors failed {verdict.axiom}: {verdict.detail}")
    types = component_types(rs)
    # every root is an integral combination of the simple roots
    idx = span_index(lat, rs.simple_vectors())
    report = ClassificationReport(
        rank=lat.rank,
        disc=disc,
        root_count=len(rs.roots),
        components=types,
        roots_span_lattice=idx == 1,
        weyl_order=prod(t.weyl_order for t in types),
        root_span_index=idx,
        root_system=rs,
    )
    if sum(t.root_count for t in types) != report.root_count:
        raise AssertionError("root count disagrees with the component types")
    if report.roots_span_lattice and report.irreducible:
        shortcut = types_by_invariants(lat.rank, disc.order)
        if types[0] not in shortcut:
            raise AssertionError(
                f"Dynkin type {types[0]} disagrees with rank/disc lookup {shortcut}"
            )
    if overlattices:
        candidates = []
        for over in enumerate_even_overlattices(lat, max_disc=max_disc):
            sub = classify(over.lattice)
            if sub.roots_span_lattice and sub.components:
                if sub.components not in candidates:
                    candidates.append(sub.components)
        report.possible_overlattice_types = sorted(candidates)
    return report


__all__ = [
    "A",
    "D",
    "E",
    "AdeType",
    "AxiomVerdict",
    "ClassificationReport",
    "NotPositiveDefiniteError",
    "RootSystem",
    "classify",
    "component_types",
    "enumerate_roots",
    "format_types",
    "root_system",
    "simple_roots",
    "span_index",
    "types_by_invariants",
    "verify_root_axioms",
    "weyl_orbit",
    "weyl_orbit_is_transitive",
]
