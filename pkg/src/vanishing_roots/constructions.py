"""Homology data for the threefold families with finite monodromy.

Every family produces the second homology of a smooth hyperplane section
``Y`` (a basis, and the pairing equal to the *negated* intersection index),
the second homology of ``X`` and the pushforward ``i_*`` between them.  The
vanishing lattice is the saturated integer kernel of ``i_*`` with the induced
pairing.  In the negated convention an exceptional ``(-1)``-curve has
self-pairing ``+1`` and the pullback of a line class on ``P^2`` has ``-1``.

Classes of ``Y`` that inject into ``H_2(X)`` and never meet the kernel (for
instance the base-surface classes of a scroll) are left out of the bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, Optional

from . import exact_linalg as xl
from .errors import ConstructionError, DegenerateFormError
from .lattice import Lattice, check_positive_definite
from .roots import A, D, E, AdeType, ClassificationReport, classify, format_types


@dataclass(frozen=True)
class HomologyData:
    y_basis: tuple[str, ...]
    pairing: tuple[tuple[int, ...], ...]
    x_basis: tuple[str, ...]
    pushforward: tuple[tuple[int, ...], ...]
    # rows in Y-coordinates spanning the same lattice as the kernel, used in
    # place of the canonical kernel basis when the literature basis is nicer
    preferred_kernel: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        n = len(self.y_basis)
        p = self.pairing
        if len(p) != n or any(len(r) != n for r in p):
            raise ValueError("pairing must be y_rank x y_rank")
        if any(p[i][j] != p[j][i] for i in range(n) for j in range(i)):
            raise ValueError("pairing must be symmetric")
        if len(self.pushforward) != len(self.x_basis) or any(
            len(r) != n for r in self.pushforward
        ):
            raise ValueError("pushforward must be x_rank x y_rank")

    @property
    def y_rank(self) -> int:
        return len(self.y_basis)

    @property
    def x_rank(self) -> int:
        return len(self.x_basis)


def _t(m):
    return tuple(tuple(r) for r in m)


def _block_pairing(blocks) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = xl.zeros(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def kernel_basis(h: HomologyData) -> list[list[int]]:
    """Canonical (Hermite-reduced) saturated basis of ``Ker i_*``."""
    return xl.kernel_basis_z([list(r) for r in h.pushforward], cols=h.y_rank)


def canonical_gram(h: HomologyData) -> list[list[int]]:
    k = kernel_basis(h)
    return xl.matmul(xl.matmul(k, [list(r) for r in h.pairing]), xl.transpose(k))


def vanishing_lattice(h: HomologyData, label: str = "") -> Lattice:
    """Kernel of the pushforward with the induced pairing.

    Raises :class:`DegenerateFormError` or
    :class:`~vanishing_roots.errors.NotPositiveDefiniteError` when the induced
    form is unusable; either signals a modelling error in the homology data.
    """
    k = kernel_basis(h)
    if h.preferred_kernel is not None:
        preferred = [list(r) for r in h.preferred_kernel]
        zero = xl.matmul([list(r) for r in h.pushforward], xl.transpose(preferred))
        if any(any(r) for r in zero) or xl.hnf_rows(preferred) != k:
            raise AssertionError("preferred kernel basis does not span the kernel")
        k = preferred
    g = xl.matmul(xl.matmul(k, [list(r) for r in h.pairing]), xl.transpose(k))
    lat = Lattice(g, label)
    if lat.rank and xl.det(g) == 0:
        raise DegenerateFormError("induced form on the kernel is degenerate")
    check_positive_definite(lat)
    return lat


class OutcomeKind(Enum):
    ROOT_SYSTEM = "root_system"
    NOT_HYPERSURFACE = "not_hypersurface"
    IMPOSSIBLE = "impossible"
    AMBIGUOUS_OVERLATTICE = "ambiguous_overlattice"


@dataclass(frozen=True)
class ExpectedOutcome:
    kind: OutcomeKind
    types: tuple[AdeType, ...] = ()

    def __str__(self):
        if self.kind is OutcomeKind.ROOT_SYSTEM:
            return format_types(self.types)
        if self.kind is OutcomeKind.AMBIGUOUS_OVERLATTICE:
            return "one of {" + ", ".join(str(t) for t in self.types) + "}"
        return self.kind.value.replace("_", " ")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "types": [str(t) for t in self.types]}

    @classmethod
    def from_dict(cls, d: dict) -> "ExpectedOutcome":
        return cls(OutcomeKind(d["kind"]), tuple(AdeType.parse(t) for t in d["types"]))


def root_system_type(*types) -> ExpectedOutcome:
    return ExpectedOutcome(OutcomeKind.ROOT_SYSTEM, tuple(types))


NOT_HYPERSURFACE = ExpectedOutcome(OutcomeKind.NOT_HYPERSURFACE)
IMPOSSIBLE = ExpectedOutcome(OutcomeKind.IMPOSSIBLE)


def is_vanishing_root_system(report: ClassificationReport) -> bool:
    """Irreducible ADE system whose roots span the whole lattice."""
    return report.rank > 0 and report.irreducible and report.roots_span_lattice


def outcome_matches(expected: ExpectedOutcome, report: ClassificationReport) -> bool:
    kind = expected.kind
    if kind is OutcomeKind.NOT_HYPERSURFACE:
        return report.rank == 0
    if kind is OutcomeKind.IMPOSSIBLE:
        # covers ev(Y) = 0, no roots, reducible and non-spanning root sets
        if is_vanishing_root_system(report):
            return False
        cands = report.candidate_types()
        return not cands or all(len(c) != 1 for c in cands)
    if kind is OutcomeKind.ROOT_SYSTEM:
        ok = is_vanishing_root_system(report) and tuple(report.components) == expected.types
        cands = report.candidate_types()
        if cands is not None:
            ok = ok and cands == {expected.types}
        return ok
    cands = report.candidate_types()
    if cands is None:
        return False
    return cands == {(t,) for t in expected.types}


# ---------------------------------------------------------------- families


class Construction:
    """Base class; subclasses are frozen dataclasses describing one family member."""

    family: ClassVar[str]
    # identifies the variety when the family member is a single known variety
    variety: ClassVar[Optional[str]] = None
    needs_overlattices: ClassVar[bool] = False

    def homology(self) -> HomologyData:
        raise NotImplementedError

    def expected(self) -> ExpectedOutcome:
        raise NotImplementedError

    @property
    def label(self) -> str:
        raise NotImplementedError

    @property
    def variety_name(self) -> Optional[str]:
        return self.variety

    def params(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family, "params": self.params(), "label": self.label}


def _require(cond, msg):
    if not cond:
        raise ConstructionError(msg)


QUADRIC_P4 = "quadric Q in P4"
VERONESE_P3 = "Veronese variety v2(P3)"
BLOWUP_P3 = "blowup of P3 at a point, embedded by |2H-E|"
SEGRE_P1_CUBED = "Segre variety P1 x P1 x P1"

THEOREM_VARIETIES = (QUADRIC_P4, VERONESE_P3, BLOWUP_P3, SEGRE_P1_CUBED)


@dataclass(frozen=True)
class Scroll(Construction):
    """``P(E)`` over a surface with ``c_2(E) = r``; ``Y`` is the surface blown up at r points."""

    r: int
    family: ClassVar[str] = "scroll"

    def __post_init__(self):
        _require(isinstance(self.r, int) and self.r >= 1, f"scroll needs r >= 1, got {self.r}")

    def homology(self):
        # Y: exceptional lines l_1..l_r; X: the ruling fibre class.
        r = self.r
        return HomologyData(
            y_basis=tuple(f"l{j}" for j in range(1, r + 1)),
            pairing=_t(xl.identity(r)),
            x_basis=("fibre",),
            pushforward=((1,) * r,),
        )

    def expected(self):
        if self.r == 1:
            return NOT_HYPERSURFACE
        return root_system_type(A(self.r - 1))

    @property
    def variety_name(self):
        # c_2(E) = 2 over P^2 with E = O(1) + O(2) is the |2H-E| blowup of P^3
        return BLOWUP_P3 if self.r == 2 else None

    @property
    def label(self):
        return f"scroll r={self.r}"

    def params(self):
        return {"r": self.r}


def _pencil_y_basis(m):
    # Y: e (section class), f (fibre class), l_1..l_m (one line in each
    # degenerate fibre).  e.f = 1, f.f = f.l_j = e.l_j = 0, l_i.l_j = -delta,
    # e.e chosen 0; the pairing negates all of these.
    names = ("e", "f") + tuple(f"l{j}" for j in range(1, m + 1))
    hyperbolic = [[0, -1], [-1, 0]]
    return names, _t(_block_pairing([hyperbolic, xl.identity(m)]))


@dataclass(frozen=True)
class OrdinaryQuadricPencil(Construction):
    """Quadric fibration whose monodromy swaps the two rulings."""

    m: int
    family: ClassVar[str] = "ordinary-pencil"

    def __post_init__(self):
        _require(isinstance(self.m, int) and self.m >= 1, f"pencil needs m >= 1, got {self.m}")

    def homology(self):
        names, pairing = _pencil_y_basis(self.m)
        # i_*(e) = s, i_*(f) = 2l, i_*(l_j) = l
        return HomologyData(
            y_basis=names,
            pairing=pairing,
            x_basis=("s", "l"),
            pushforward=((1, 0) + (0,) * self.m, (0, 2) + (1,) * self.m),
        )

    def expected(self):
        if self.m <= 2:
            return IMPOSSIBLE
        if self.m == 3:
            return root_system_type(A(3))
        return root_system_type(D(self.m))

    @property
    def label(self):
        return f"ordinary-pencil m={self.m}"

    def params(self):
        return {"m": self.m}


@dataclass(frozen=True)
class ExtraordinaryQuadricPencil(Construction):
    """Quadric fibration with both rulings defined globally (families U and V)."""

    m: int
    family: ClassVar[str] = "extraordinary-pencil"

    def __post_init__(self):
        _require(isinstance(self.m, int) and self.m >= 1, f"pencil needs m >= 1, got {self.m}")

    def homology(self):
        names, pairing = _pencil_y_basis(self.m)
        # i_*(e) = s, i_*(f) = u + v, i_*(l_j) = u with u, v independent
        return HomologyData(
            y_basis=names,
            pairing=pairing,
            x_basis=("s", "u", "v"),
            pushforward=(
                (1, 0) + (0,) * self.m,
                (0, 1) + (1,) * self.m,
                (0, 1) + (0,) * self.m,
            ),
        )

    def expected(self):
        # a single degenerate fibre would give ev(Y) = 0, excluded for pencils
        if self.m == 1:
            return IMPOSSIBLE
        return root_system_type(A(self.m - 1))

    @property
    def variety_name(self):
        return SEGRE_P1_CUBED if self.m == 2 else None

    @property
    def label(self):
        return f"extraordinary-pencil m={self.m}"

    def params(self):
        return {"m": self.m}


@dataclass(frozen=True)
class VeronesePencil(Construction):
    """Fibration in Veronese planes; only a finite-index sublattice of the kernel is known."""

    m: int
    family: ClassVar[str] = "veronese-pencil"
    needs_overlattices: ClassVar[bool] = True

    def __post_init__(self):
        _require(isinstance(self.m, int) and self.m >= 1, f"pencil needs m >= 1, got {self.m}")

    def homology(self):
        # Y: f (fibre of Y'), l_j = [E_j] conic components; i_*(f) = 2 i_*(l_j).
        # The modelled H_2(X) has rank 1, so the kernel is the known sublattice L.
        m = self.m
        return HomologyData(
            y_basis=("f",) + tuple(f"l{j}" for j in range(1, m + 1)),
            pairing=_t(_block_pairing([[[0]], xl.identity(m)])),
            x_basis=("l",),
            pushforward=((2,) + (1,) * m,),
        )

    def expected(self):
        m = self.m
        if m <= 2:
            return IMPOSSIBLE
        if m == 3:
            return root_system_type(A(3))
        if m == 8:
            return ExpectedOutcome(OutcomeKind.AMBIGUOUS_OVERLATTICE, (D(8), E(8)))
        return root_system_type(D(m))

    @property
    def label(self):
        return f"veronese-pencil m={self.m}"

    def params(self):
        return {"m": self.m}


def _h_l_basis(r):
    # Y = P^2 blown up in r points: h (pullback of a line), l_1..l_r.
    names = ("h",) + tuple(f"l{j}" for j in range(1, r + 1))
    return names, _t(_block_pairing([[[-1]], xl.identity(r)]))


def lambda_basis(r: int) -> list[list[int]]:
    """Integral basis of ``{3a + sum c = 0}`` in ``(h, l_1..l_r)`` coordinates.

    ``lambda_1 = 3 l_1 - h`` and ``lambda_j = l_1 - l_j``; the Gram matrix has
    8 in the corner, 3 along the first row, 2 on the diagonal and 1 elsewhere.
    """
    rows = [[-1, 3] + [0] * (r - 1)]
    for j in range(2, r + 1):
        row = [0, 1] + [0] * (r - 1)
        row[j] = -1
        rows.append(row)
    return rows


def _degree_three_homology(r, x_name):
    names, pairing = _h_l_basis(r)
    return HomologyData(
        y_basis=names,
        pairing=pairing,
        x_basis=(x_name,),
        pushforward=((3,) + (1,) * r,),
        preferred_kernel=_t(lambda_basis(r)),
    )


DEL_PEZZO_ROWS = {
    "V3": (3, None),
    "V4": (4, None),
    "V5": (5, None),
    "V6": (6, "V6"),
    "V6'": (6, "V6'"),
    "V7": (7, None),
    "V8": (8, None),
}

TABLE2_EXPECTED = {
    "V3": E(6),
    "V4": D(5),
    "V5": A(4),
    "V6": A(1),
    "V6'": A(2),
    "V7": A(1),
    "V8": A(1),
}


@dataclass(frozen=True)
class Quadric(Construction):
    """Smooth quadric threefold in ``P^4``; ``Y`` is a quadric surface."""

    family: ClassVar[str] = "quadric"
    variety: ClassVar[Optional[str]] = QUADRIC_P4

    def homology(self):
        return _two_rulings_homology()

    def expected(self):
        return root_system_type(A(1))

    @property
    def label(self):
        return "quadric"

    def params(self):
        return {}


def _two_rulings_homology():
    # Y = P^1 x P^1 with ruling classes a, b (a.b = 1); both map to the line class.
    return HomologyData(
        y_basis=("a", "b"),
        pairing=((0, -1), (-1, 0)),
        x_basis=("line",),
        pushforward=((1, 1),),
    )


@dataclass(frozen=True)
class DelPezzo(Construction):
    """Embedded Del Pezzo threefold of the given degree (``variant`` splits degree 6)."""

    degree: int
    variant: str = ""
    family: ClassVar[str] = "del-pezzo"

    def __post_init__(self):
        _require(
            isinstance(self.degree, int) and 3 <= self.degree <= 8,
            f"Del Pezzo degree must be in 3..8, got {self.degree}",
        )
        if self.degree == 6:
            _require(
                self.variant in ("V6", "V6'"),
                f"degree 6 needs variant V6 or V6', got {self.variant!r}",
            )
        else:
            _require(self.variant in ("", f"V{self.degree}"), f"bad variant {self.variant!r}")
            object.__setattr__(self, "variant", "")

    @property
    def row(self) -> str:
        return self.variant or f"V{self.degree}"

    def homology(self):
        row = self.row
        if self.degree <= 5:
            # Y = P^2 blown up at 9 - d points; i_*[h] = 3 i_*[l_j]
            return _degree_three_homology(9 - self.degree, "line")
        if row == "V6":
            return ExtraordinaryQuadricPencil(2).homology()
        if row == "V6'":
            return Scroll(3).homology()  # P(T_P2), c_2 = 3
        if row == "V7":
            return Scroll(2).homology()  # P(O(1) + O(2)), c_2 = 2
        # v2(P^3): Y is a quadric surface, ruling lines map to lines of P^3
        return _two_rulings_homology()

    def expected(self):
        return root_system_type(TABLE2_EXPECTED[self.row])

    @property
    def variety_name(self):
        return {"V6": SEGRE_P1_CUBED, "V7": BLOWUP_P3, "V8": VERONESE_P3}.get(self.row)

    @property
    def label(self):
        return f"del-pezzo {self.row}"

    def params(self):
        out = {"degree": self.degree}
        if self.variant:
            out["variant"] = self.variant
        return out


@dataclass(frozen=True)
class VeroneseQuadric(Construction):
    """``v2(Q)``: ``Y`` is a degree-4 Del Pezzo surface whose five exceptional curves are conics."""

    family: ClassVar[str] = "veronese-quadric"

    def homology(self):
        names, pairing = _h_l_basis(5)
        # H_2(X) generated by a conic; i_*(h) = 3[C], i_*(l_j) = [C]
        return HomologyData(
            y_basis=names,
            pairing=pairing,
            x_basis=("conic",),
            pushforward=((3, 1, 1, 1, 1, 1),),
        )

    def expected(self):
        return root_system_type(D(5))

    @property
    def label(self):
        return "veronese-quadric"

    def params(self):
        return {}


@dataclass(frozen=True)
class BlowupExtension(Construction):
    """Blow up ``k`` points on ``Y`` and on ``X``; new classes map isomorphically."""

    base: Construction
    k: int
    family: ClassVar[str] = "blowup"

    def __post_init__(self):
        _require(isinstance(self.base, Construction), "blowup base must be a construction")
        _require(isinstance(self.k, int) and self.k >= 1, f"blowup needs k >= 1, got {self.k}")

    def homology(self):
        h = self.base.homology()
        k = self.k
        n, x = h.y_rank, h.x_rank
        pushforward = [list(r) + [0] * k for r in h.pushforward]
        for j in range(k):
            pushforward.append([0] * n + [int(i == j) for i in range(k)])
        preferred = None
        if h.preferred_kernel is not None:
            preferred = _t([list(r) + [0] * k for r in h.preferred_kernel])
        return HomologyData(
            y_basis=h.y_basis + tuple(f"l'{j}" for j in range(1, k + 1)),
            pairing=_t(_block_pairing([[list(r) for r in h.pairing], xl.identity(k)])),
            x_basis=h.x_basis + tuple(f"E{j}" for j in range(1, k + 1)),
            pushforward=_t(pushforward),
            preferred_kernel=preferred,
        )

    def expected(self):
        return self.base.expected()

    @property
    def needs_overlattices(self):
        return self.base.needs_overlattices

    @property
    def label(self):
        return f"blowup k={self.k} of {self.base.label}"

    def params(self):
        return {"base": self.base.to_dict(), "k": self.k}


FAMILIES = {
    cls.family: cls
    for cls in (
        Scroll,
        OrdinaryQuadricPencil,
        ExtraordinaryQuadricPencil,
        VeronesePencil,
        DelPezzo,
        Quadric,
        VeroneseQuadric,
        BlowupExtension,
    )
}


def construction_from_dict(d: dict) -> Construction:
    """Inverse of :meth:`Construction.to_dict` (the ``label`` key is ignored)."""
    if not isinstance(d, dict) or "family" not in d:
        raise ConstructionError("construction entry must be an object with a 'family' key")
    family = d["family"]
    if family not in FAMILIES:
        raise ConstructionError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    params = dict(d.get("params", {}))
    if family == "blowup":
        if "base" not in params:
            raise ConstructionError("blowup needs a 'base' construction")
        params["base"] = construction_from_dict(params["base"])
    try:
        return FAMILIES[family](**params)
    except TypeError as exc:
        raise ConstructionError(f"bad parameters for {family}: {exc}") from None


# ------------------------------------------------------------ operations


def build_homology(c: Construction) -> HomologyData:
    return c.homology()


def expected_outcome(c: Construction) -> ExpectedOutcome:
    return c.expected()


def construction_lattice(c: Construction) -> Lattice:
    return vanishing_lattice(c.homology(), c.label)


def classify_construction(c: Construction) -> ClassificationReport:
    return classify(construction_lattice(c), overlattices=c.needs_overlattices)


def structured_matrix(a, b, c, d, r: int) -> list[list[int]]:
    if r < 2:
        raise ValueError(f"structured matrix needs r >= 2, got {r}")
    m = [[c if i == j else d for j in range(r)] for i in range(r)]
    m[0] = [a] + [b] * (r - 1)
    for i in range(1, r):
        m[i][0] = b
    return m


def structured_det(a, b, c, d, r: int):
    """Closed-form determinant of :func:`structured_matrix`."""
    if r < 2:
        raise ValueError(f"structured determinant needs r >= 2, got {r}")
    return (c - d) ** (r - 2) * (a * (c + (r - 2) * d) - (r - 1) * b**2)


def table2_constructions() -> list[DelPezzo]:
    return [DelPezzo(deg, var or "") for deg, var in DEL_PEZZO_ROWS.values()]


def default_catalog() -> list[Construction]:
    """Every family at small parameters, with the Del Pezzo table rows and blowups."""
    cat: list[Construction] = [Quadric()]
    cat += [Scroll(r) for r in range(1, 7)]
    cat += [OrdinaryQuadricPencil(m) for m in range(1, 9)]
    cat += [ExtraordinaryQuadricPencil(m) for m in range(1, 9)]
    cat += [VeronesePencil(m) for m in range(1, 10)]
    cat += table2_constructions()
    cat.append(VeroneseQuadric())
    cat += [BlowupExtension(VeroneseQuadric(), k) for k in (1, 2)]
    return cat


def is_a1(report: ClassificationReport) -> bool:
    return is_vanishing_root_system(report) and report.components == [A(1)] and (
        report.possible_overlattice_types in (None, [[A(1)]])
    )


def theorem_filter(catalog) -> list[Construction]:
    """Constructions whose vanishing root system is exactly ``A1``."""
    return [c for c in catalog if is_a1(classify_construction(c))]


__all__ = [
    "BlowupExtension",
    "Construction",
    "DelPezzo",
    "ExpectedOutcome",
    "ExtraordinaryQuadricPencil",
    "HomologyData",
    "OrdinaryQuadricPencil",
    "OutcomeKind",
    "Quadric",
    "Scroll",
    "THEOREM_VARIETIES",
    "VeroneseQuadric",
    "VeronesePencil",
    "build_homology",
    "canonical_gram",
    "classify_construction",
    "construction_from_dict",
    "default_catalog",
    "expected_outcome",
    "outcome_matches",
    "structured_det",
    "structured_matrix",
    "table2_constructions",
    "theorem_filter",
    "vanishing_lattice",
]
