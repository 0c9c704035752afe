"""Trigraded Lie algebra models g = g- + g0 + g+ with exact structure constants.

A model stores the bracket table of a finite-dimensional complex Lie algebra
together with a splitting into three blocks (minus/zero/plus) coming from a
Langlands decomposition of a homogeneous space: g0 reductive, h = g0 + g+ the
isotropy subalgebra, g- a complement realizing the tangent space.

Structure constants are stored only for ordered generator pairs i < j in the
global order (part, index); antisymmetry is structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction

from .linalg import QMatrix


class Part(IntEnum):
    MINUS = 0
    ZERO = 1
    PLUS = 2


PART_NAMES = {Part.MINUS: "minus", Part.ZERO: "zero", Part.PLUS: "plus"}


@dataclass(frozen=True)
class Generator:
    part: Part
    index: int
    name: str
    gid: int  # position in the global (part, index) order


class Rep:
    """g0-representation by exact rational matrices, one per g0 generator.

    ``ghost`` marks modules with no group-level associated bundle; that is
    metadata only, every formula treats ghosts like ordinary modules.
    ``g_module`` marks restrictions of representations of the whole algebra,
    which is what the exactness audit keys on.
    """

    __slots__ = ("label", "dim", "matrices", "ghost", "g_module")

    def __init__(self, label: str, matrices: list[QMatrix], ghost: bool = False,
                 g_module: bool = False):
        self.label = label
        self.matrices = matrices
        self.dim = matrices[0].rows if matrices else 0
        for m in matrices:
            if m.rows != self.dim or m.cols != self.dim:
                raise ValueError("rep matrices must be square of equal size")
        self.ghost = ghost
        self.g_module = g_module

    def act(self, coeffs: dict[int, Fraction] | list[Fraction]) -> QMatrix:
        """Matrix of a g0 element given by coefficients over the g0 basis."""
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for b, c in items:
            if not c:
                continue
            mat = self.matrices[b].data
            for i in range(self.dim):
                row = mat[i]
                orow = out[i]
                for j in range(self.dim):
                    if row[j]:
                        orow[j] += c * row[j]
        return QMatrix(out)


BracketTable = dict[tuple[int, int], dict[int, Fraction]]


class LieModel:
    def __init__(self, dims: tuple[int, int, int], names: list[str],
                 brackets: BracketTable, reps: dict[str, Rep] | None = None,
                 meta: dict | None = None, realization: list[QMatrix] | None = None):
        self.dims = tuple(dims)
        self.total = sum(dims)
        if len(names) != self.total:
            raise ValueError("need one name per generator")
        if len(set(names)) != self.total:
            raise ValueError("generator names must be unique")
        self.names = list(names)
        self.offsets = (0, dims[0], dims[0] + dims[1])
        self.generators: list[Generator] = []
        for part in Part:
            for idx in range(dims[part]):
                gid = self.offsets[part] + idx
                self.generators.append(Generator(part, idx, names[gid], gid))
        self.brackets: BracketTable = {}
        for (i, j), comp in brackets.items():
            if not (0 <= i < j < self.total):
                raise ValueError(f"bad bracket key ({i},{j})")
            entry = {k: Fraction(c) for k, c in comp.items() if c}
            for k in entry:
                if not 0 <= k < self.total:
                    raise ValueError(f"bracket ({i},{j}) hits generator {k} out of range")
            if entry:
                self.brackets[(i, j)] = entry
        self.reps: dict[str, Rep] = reps or {}
        self.meta = meta or {}
        self.realization = realization
        # masks for fast trigrade bookkeeping of monomials
        self.minus_mask = ((1 << dims[0]) - 1)
        self.zero_mask = ((1 << dims[1]) - 1) << dims[0]
        self.plus_mask = ((1 << dims[2]) - 1) << (dims[0] + dims[1])
        self._dual_d: list[list[tuple[int, Fraction]]] | None = None

    # -- basic structure ---------------------------------------------------

    def part_of(self, gid: int) -> Part:
        if gid < self.offsets[1]:
            return Part.MINUS
        if gid < self.offsets[2]:
            return Part.ZERO
        return Part.PLUS

    def gid(self, part: Part, index: int) -> int:
        if not 0 <= index < self.dims[part]:
            raise IndexError(f"no generator {index} in part {PART_NAMES[part]}")
        return self.offsets[part] + index

    def part_range(self, part: Part) -> range:
        start = self.offsets[part]
        return range(start, start + self.dims[part])

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        """[e_i, e_j] as a sparse coefficient dict."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        comp = self.brackets.get((j, i), {})
        return {k: -c for k, c in comp.items()}

    def bracket(self, x: list[Fraction], y: list[Fraction]) -> list[Fraction]:
        """Bilinear extension of the structure constants to coefficient vectors."""
        if len(x) != self.total or len(y) != self.total:
            raise ValueError("coefficient vectors must have length = total dim")
        out = [Fraction(0)] * self.total
        for (i, j), comp in self.brackets.items():
            f = x[i] * y[j] - x[j] * y[i]
            if f:
                for k, c in comp.items():
                    out[k] += f * c
        return out

    def proj(self, part: Part, v: list[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.total
        for gid in self.part_range(part):
            out[gid] = Fraction(v[gid])
        return out

    def zero_coefficients(self, v: list[Fraction] | dict[int, Fraction]) -> list[Fraction]:
        """Coordinates of the g0-part of a coefficient vector over the g0 basis."""
        if isinstance(v, dict):
            return [v.get(g, Fraction(0)) for g in self.part_range(Part.ZERO)]
        return [v[g] for g in self.part_range(Part.ZERO)]

    # -- dual differential table -------------------------------------------

    def dual_d(self) -> list[list[tuple[int, Fraction]]]:
        """For each generator a, the terms of d(xi^a) = -sum c^a_bc xi^b xi^c (b<c)."""
        if self._dual_d is None:
            table: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.total)]
            for (i, j), comp in self.brackets.items():
                mask = (1 << i) | (1 << j)
                for k, c in comp.items():
                    table[k].append((mask, -c))
            self._dual_d = table
        return self._dual_d

    # -- coadjoint action ----------------------------------------------------

    def coadjoint_dual_table(self, u: int) -> list[dict[int, Fraction]]:
        """For generator u, the map xi^a -> sum_y c^a_{y,u} xi^y on dual generators.

        This is (u . xi)(y) = -xi([u, y]) extended over the dual basis.
        """
        table: list[dict[int, Fraction]] = [dict() for _ in range(self.total)]
        for y in range(self.total):
            comp = self.bracket_basis(u, y)
            for a, c in comp.items():
                if c:
                    table[a][y] = table[a].get(y, Fraction(0)) - c
        for a in range(self.total):
            table[a] = {y: c for y, c in table[a].items() if c}
        return table


@dataclass
class ValidationReport:
    ok: bool
    failures: list[dict] = field(default_factory=list)

    def add(self, check: str, detail: str):
        self.ok = False
        self.failures.append({"check": check, "detail": detail})


# The bracket-vanishing conditions a Langlands decomposition must satisfy:
# h = g0 + g+ is a subalgebra with g+ an ideal of h, and g-, g0, g+ are
# g0-submodules.  Each entry is (left part, right part, part that must vanish).
LANGLANDS_CONDITIONS = [
    (Part.ZERO, Part.ZERO, Part.MINUS),
    (Part.ZERO, Part.PLUS, Part.MINUS),
    (Part.PLUS, Part.PLUS, Part.MINUS),
    (Part.PLUS, Part.PLUS, Part.ZERO),
    (Part.ZERO, Part.MINUS, Part.ZERO),
    (Part.ZERO, Part.MINUS, Part.PLUS),
    (Part.ZERO, Part.ZERO, Part.PLUS),
    (Part.ZERO, Part.PLUS, Part.ZERO),
]


def validate_model(m: LieModel) -> ValidationReport:
    """Check Jacobi and the eight bracket-vanishing conditions.

    Failures are data, not exceptions, so corrupted models can be probed in
    tests.
    """
    report = ValidationReport(ok=True)

    for (pa, pb, pbad) in LANGLANDS_CONDITIONS:
        for i in m.part_range(pa):
            for j in m.part_range(pb):
                comp = m.bracket_basis(i, j)
                for k, c in comp.items():
                    if c and m.part_of(k) == pbad:
                        report.add(
                            "langlands",
                            f"[{m.names[i]},{m.names[j]}] has {PART_NAMES[pbad]}-component "
                            f"{c}*{m.names[k]}",
                        )

    n = m.total
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc: dict[int, Fraction] = {}
                for inner, outer in (((j, k), i), ((k, i), j), ((i, j), k)):
                    comp = m.bracket_basis(*inner)
                    for mid, c in comp.items():
                        out = m.bracket_basis(outer, mid)
                        for t, c2 in out.items():
                            acc[t] = acc.get(t, Fraction(0)) + c * c2
                bad = {t: c for t, c in acc.items() if c}
                if bad:
                    report.add(
                        "jacobi",
                        f"jacobi({m.names[i]},{m.names[j]},{m.names[k]}) = "
                        + " + ".join(f"{c}*{m.names[t]}" for t, c in sorted(bad.items())),
                    )
    return report


def validate_rep(m: LieModel, rep: Rep) -> ValidationReport:
    """Check rho([u,v]) = rho(u)rho(v) - rho(v)rho(u) over the g0 basis."""
    report = ValidationReport(ok=True)
    zero_range = list(m.part_range(Part.ZERO))
    for a_pos, u in enumerate(zero_range):
        for b_pos in range(a_pos + 1, len(zero_range)):
            v = zero_range[b_pos]
            comp = m.bracket_basis(u, v)
            expected = rep.act(m.zero_coefficients(comp))
            ru, rv = rep.matrices[a_pos], rep.matrices[b_pos]
            got = QMatrix(
                [
                    [
                        sum((ru.data[i][k] * rv.data[k][j] - rv.data[i][k] * ru.data[k][j]
                             for k in range(rep.dim)), Fraction(0))
                        for j in range(rep.dim)
                    ]
                    for i in range(rep.dim)
                ]
            )
            if got != expected:
                report.add(
                    "rep",
                    f"{rep.label}: commutator mismatch on ({m.names[u]},{m.names[v]})",
                )
    return report
