"""Builders for the homogeneous models: projective, Grassmannian, Lagrangian
Grassmannian, conformal, foliated projective, split-tangent, and the g2 flag
variety.

Matrix families are realized through explicit block conventions so the index
formulas of the classical structure equations hold literally; g2 is assembled
from a Chevalley basis graded by the coefficient of the crossed (short)
simple root.  Generator names are w* (minus), z* (zero), u* (plus) in the
global (part, index) order.
"""

from __future__ import annotations

from fractions import Fraction

from .charforms import tangent_rep
from .chevalley import ChevalleyBasis, g2_root_system
from .linalg import QMatrix, rref
from .model import BracketTable, LieModel, Part, Rep


def _E(n: int, i: int, j: int) -> QMatrix:
    data = [[Fraction(0)] * n for _ in range(n)]
    data[i][j] = Fraction(1)
    return QMatrix(data)


def _madd(*terms: tuple[Fraction, QMatrix]) -> QMatrix:
    n = terms[0][1].rows
    data = [[Fraction(0)] * n for _ in range(n)]
    for c, m in terms:
        for i in range(n):
            for j in range(n):
                if m.data[i][j]:
                    data[i][j] += c * m.data[i][j]
    return QMatrix(data)


def _commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    n = a.rows
    data = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            aik = a.data[i][k]
            bik = b.data[i][k]
            if aik:
                for j in range(n):
                    if b.data[k][j]:
                        data[i][j] += aik * b.data[k][j]
            if bik:
                for j in range(n):
                    if a.data[k][j]:
                        data[i][j] -= bik * a.data[k][j]
    return QMatrix(data)


def _model_from_matrices(dims, matrices: list[QMatrix], names: list[str],
                         meta: dict) -> LieModel:
    """Structure constants of a matrix-realized algebra.

    Every pairwise commutator is expressed over the given basis with one
    joint row reduction; a commutator outside the span is a hard error.
    """
    total = len(matrices)
    n = matrices[0].rows
    flat = [[m.data[i][j] for m in matrices] for i in range(n) for j in range(n)]
    pairs = [(i, j) for i in range(total) for j in range(i + 1, total)]
    aug_rows = []
    comms = {}
    for (i, j) in pairs:
        comms[(i, j)] = _commutator(matrices[i], matrices[j])
    for rix in range(n * n):
        mi, mj = divmod(rix, n)
        row = list(flat[rix])
        for (i, j) in pairs:
            row.append(comms[(i, j)].data[mi][mj])
        aug_rows.append(row)
    red, pivots = rref(QMatrix(aug_rows))
    for p in pivots:
        if p >= total:
            raise ValueError("commutator not in the span of the basis")
    if pivots != list(range(total)):
        raise ValueError("generator matrices are linearly dependent")
    brackets: BracketTable = {}
    for col, (i, j) in enumerate(pairs):
        comp = {}
        for prow, pcol in enumerate(pivots):
            c = red.data[prow][total + col]
            if c:
                comp[pcol] = c
        if comp:
            brackets[(i, j)] = comp
    return LieModel(dims, names, brackets, reps={}, meta=meta, realization=matrices)


def _names(dims) -> list[str]:
    out = []
    for prefix, count in zip(("w", "z", "u"), dims):
        out.extend(f"{prefix}{i + 1}" for i in range(count))
    return out


def _sub_block_rep(m: LieModel, label: str, lo: int, hi: int) -> Rep:
    """g0-action on the minus sub-block [lo, hi); the block must be invariant."""
    size = hi - lo
    mats = []
    for u in m.part_range(Part.ZERO):
        data = [[Fraction(0)] * size for _ in range(size)]
        for j in range(lo, hi):
            for k, c in m.bracket_basis(u, j).items():
                if lo <= k < hi:
                    data[k - lo][j - lo] = c
                elif c and k < m.dims[0]:
                    raise ValueError(f"minus block [{lo},{hi}) not g0-invariant")
        mats.append(QMatrix(data))
    return Rep(label, mats)


# -- projective space --------------------------------------------------------


def projective(n: int, o_weights: tuple[int, ...] = (1,)) -> LieModel:
    """Projective model: g = sl(n+1), g- the first column below the corner,
    g0 = gl(n) embedded tracelessly, g+ the first row.

    Reps: tangent; module (the restricted C^{n+1}); euler (module twisted by
    the weight-one ghost line); O(d) ghost lines for each requested weight d.
    """
    if n < 1:
        raise ValueError("n >= 1")
    N = n + 1
    minus = [_E(N, i, 0) for i in range(1, N)]
    zero = []
    for i in range(1, N):
        for j in range(1, N):
            zij = _E(N, i, j)
            if i == j:
                zij = _madd((Fraction(1), zij), (Fraction(-1), _E(N, 0, 0)))
            zero.append(zij)
    plus = [_E(N, 0, j) for j in range(1, N)]
    dims = (n, n * n, n)
    meta = {"family": "projective", "params": {"n": n, "o_weights": list(o_weights)}}
    m = _model_from_matrices(dims, minus + zero + plus, _names(dims), meta)

    m.reps["tangent"] = tangent_rep(m)
    module_mats = [zero[t] for t in range(n * n)]
    m.reps["module"] = Rep("module", module_mats, g_module=True)
    ident = QMatrix.identity(N)
    euler_mats = []
    for t, (i, j) in enumerate((i, j) for i in range(1, N) for j in range(1, N)):
        tr = Fraction(1) if i == j else Fraction(0)
        euler_mats.append(_madd((Fraction(1), zero[t]), (tr, ident)))
    m.reps["euler"] = Rep("euler", euler_mats)
    m.reps["trivial"] = Rep("trivial", [QMatrix([[Fraction(0)]]) for _ in range(n * n)])
    for d in o_weights:
        mats = []
        for (i, j) in ((i, j) for i in range(1, N) for j in range(1, N)):
            w = Fraction(d) if i == j else Fraction(0)
            mats.append(QMatrix([[w]]))
        m.reps[f"O({d})"] = Rep(f"O({d})", mats, ghost=(d % (n + 1) != 0))
    return m


# -- Grassmannians ------------------------------------------------------------


def grassmannian(p: int, q: int) -> LieModel:
    """Grassmannian model: g = sl(p+q), g- the lower-left q x p block, g0 the
    block-diagonal traceless pairs, g+ the upper-right p x q block.

    The g0 basis is chosen so that grassmannian(1, n) reproduces the
    projective(n) bracket table verbatim.
    """
    if p < 1 or q < 1:
        raise ValueError("p, q >= 1")
    N = p + q
    u_range = range(0, p)
    q_range = range(p, N)
    minus = [_E(N, I, j) for I in q_range for j in u_range]
    zero = []
    inv_p = Fraction(1, p)
    for I in q_range:
        for J in q_range:
            mat = _E(N, I, J)
            if I == J:
                mat = _madd((Fraction(1), mat),
                            *[(-inv_p, _E(N, u, u)) for u in u_range])
            zero.append(mat)
    for i in u_range:
        for j in u_range:
            if i != j:
                zero.append(_E(N, i, j))
    for i in range(p - 1):
        zero.append(_madd((Fraction(1), _E(N, i, i)), (Fraction(-1), _E(N, i + 1, i + 1))))
    plus = [_E(N, i, J) for i in u_range for J in q_range]
    dims = (p * q, p * p + q * q - 1, p * q)
    meta = {"family": "grassmannian", "params": {"p": p, "q": q}}
    m = _model_from_matrices(dims, minus + zero + plus, _names(dims), meta)

    m.reps["tangent"] = tangent_rep(m)
    zero_mats = m.realization[m.offsets[1]:m.offsets[2]]
    m.reps["module"] = Rep("module", zero_mats, g_module=True)
    m.reps["U"] = Rep(
        "U", [QMatrix([[mat.data[i][j] for j in u_range] for i in u_range])
              for mat in zero_mats], ghost=True)
    m.reps["Q"] = Rep(
        "Q", [QMatrix([[mat.data[I][J] for J in q_range] for I in q_range])
              for mat in zero_mats], ghost=True)
    return m


def lagrangian_grassmannian(n: int) -> LieModel:
    """Lagrangian Grassmannian model: g = sp(2n) with g+- the symmetric
    off-diagonal blocks and g0 = gl(n)."""
    if n < 1:
        raise ValueError("n >= 1")
    N = 2 * n

    def sym_pairs():
        return [(a, b) for a in range(n) for b in range(a, n)]

    minus = []
    plus = []
    for a, b in sym_pairs():
        if a == b:
            minus.append(_E(N, n + a, a))
            plus.append(_E(N, a, n + a))
        else:
            minus.append(_madd((Fraction(1), _E(N, n + a, b)), (Fraction(1), _E(N, n + b, a))))
            plus.append(_madd((Fraction(1), _E(N, a, n + b)), (Fraction(1), _E(N, b, n + a))))
    zero = [
        _madd((Fraction(1), _E(N, a, b)), (Fraction(-1), _E(N, n + b, n + a)))
        for a in range(n) for b in range(n)
    ]
    k = n * (n + 1) // 2
    dims = (k, n * n, k)
    meta = {"family": "lagrangian_grassmannian", "params": {"n": n}}
    m = _model_from_matrices(dims, minus + zero + plus, _names(dims), meta)
    m.reps["tangent"] = tangent_rep(m)
    return m


# -- conformal ----------------------------------------------------------------


def conformal(n: int) -> LieModel:
    """Conformal model: g = so(n+2) for the split form with antidiagonal
    pairing; g- the null column under the corner, g0 the scaling plus the
    middle so(n), g+ the null row.

    ``meta`` carries the induced symmetric pairing on g- and the transport
    g+ -> g- realizing the three-term Atiyah tensor identity and the
    pairing 2-form that represents c_1/( -n tau ).
    """
    if n < 3:
        raise ValueError("n >= 3")
    N = n + 2
    mid = list(range(1, N - 1))
    mirror = {k: N - 1 - k for k in mid}

    minus = [_madd((Fraction(1), _E(N, k, 0)), (Fraction(-1), _E(N, N - 1, mirror[k])))
             for k in mid]
    plus = [_madd((Fraction(1), _E(N, 0, k)), (Fraction(-1), _E(N, mirror[k], N - 1)))
            for k in mid]
    zero = [_madd((Fraction(1), _E(N, 0, 0)), (Fraction(-1), _E(N, N - 1, N - 1)))]
    for a in mid:
        for b in mid:
            if a == mirror[b]:
                continue  # E(a,b) pairs with itself and cancels
            partner = (mirror[b], mirror[a])
            if (a, b) < partner:
                zero.append(_madd((Fraction(1), _E(N, a, b)),
                                  (Fraction(-1), _E(N, mirror[b], mirror[a]))))
    dims = (n, n * (n - 1) // 2 + 1, n)
    pairing = [[Fraction(int(mirror[a] == b)) for b in mid] for a in mid]
    transport = [[Fraction(0)] * n for _ in range(n)]
    for ai, a in enumerate(mid):
        transport[mid.index(mirror[a])][ai] = Fraction(-1)
    meta = {
        "family": "conformal",
        "params": {"n": n},
        "pairing": pairing,
        "plus_transport": transport,
    }
    m = _model_from_matrices(dims, minus + zero + plus, _names(dims), meta)
    m.reps["tangent"] = tangent_rep(m)
    scaling = [QMatrix([[-mat.data[0][0]]]) for mat in m.realization[m.offsets[1]:m.offsets[2]]]
    m.reps["O(1)"] = Rep("O(1)", scaling, ghost=True)
    return m


# -- foliated and split projective geometries -----------------------------------


def foliated_projective(p: int, q: int) -> LieModel:
    """Model of a 1-flat foliation: projective transformations of P^{p+q}
    preserving a P^{p-1}; leaf block i in 1..p, normal block I in p+1..p+q.

    Reps: TF (leaf tangent), normal, tangent.
    """
    if p < 1 or q < 1:
        raise ValueError("p, q >= 1")
    N = p + q + 1
    leaf = range(1, p + 1)
    nor = range(p + 1, N)
    minus = [_E(N, i, 0) for i in leaf] + [_E(N, I, 0) for I in nor]
    zero = []
    for i in leaf:
        for j in leaf:
            if i != j:
                zero.append(_E(N, i, j))
    for I in nor:
        for J in nor:
            if I != J:
                zero.append(_E(N, I, J))
    for i in leaf:
        zero.append(_madd((Fraction(1), _E(N, i, i)), (Fraction(-1), _E(N, 0, 0))))
    for I in nor:
        zero.append(_madd((Fraction(1), _E(N, I, I)), (Fraction(-1), _E(N, 0, 0))))
    plus = [_E(N, 0, J) for J in nor] + [_E(N, i, J) for i in leaf for J in nor]
    dims = (p + q, p * p + q * q, q + p * q)
    meta = {"family": "foliated_projective", "params": {"p": p, "q": q}}
    m = _model_from_matrices(dims, minus + zero + plus, _names(dims), meta)
    m.reps["tangent"] = tangent_rep(m)
    m.reps["TF"] = _sub_block_rep(m, "TF", 0, p)
    m.reps["normal"] = _sub_block_rep(m, "normal", p, p + q)
    return m


def split_projective(p: int, q: int) -> LieModel:
    """Product-of-affine-spaces model carried by a projective connection with
    split tangent bundle: g = (gl(p) + C^p) x (gl(q) + C^q), no g+ part."""
    if p < 1 or q < 1:
        raise ValueError("p, q >= 1")
    N = p + q + 1
    first = range(1, p + 1)
    second = range(p + 1, N)
    minus = [_E(N, i, 0) for i in first] + [_E(N, I, 0) for I in second]
    zero = [_E(N, i, j) for i in first for j in first]
    zero += [_E(N, I, J) for I in second for J in second]
    dims = (p + q, p * p + q * q, 0)
    meta = {"family": "split_projective", "params": {"p": p, "q": q}}
    m = _model_from_matrices(dims, minus + zero, _names(dims), meta)
    m.reps["tangent"] = tangent_rep(m)
    return m


# -- the g2 flag variety ---------------------------------------------------------


def g2_flag() -> LieModel:
    """The five-dimensional g2 flag model (crossed short root).

    Grading by the coefficient of the short simple root alpha: the minus part
    collects the roots with negative alpha-coefficient in the block order
    (-3a-b, -3a-2b | -2a-b | -a, -a-b); the zero part is spanned by two
    Cartan combinations dual to the weights of the grade -1 pair plus the
    long-root vectors; the plus part mirrors the minus order.  The graded
    tangent module is the block-diagonal g0-action on g-.
    """
    rs = g2_root_system()
    cb = ChevalleyBasis(rs)

    minus_roots = [(-3, -1), (-3, -2), (-2, -1), (-1, 0), (-1, -1)]
    plus_roots = [(1, 0), (1, 1), (2, 1), (3, 1), (3, 2)]
    # h1, h2 are the Cartan elements dual to the roots of the grade -1
    # generators (-a and -a-b): coroot coordinates (-1,-1) and (-1,-2).
    h_combos = [(Fraction(-1), Fraction(-1)), (Fraction(-1), Fraction(-2))]
    zero_root_vectors = [(0, 1), (0, -1)]

    gens: list[tuple[str, object]] = []
    for r in minus_roots:
        gens.append(("root", r))
    for h in h_combos:
        gens.append(("cartan", h))
    for r in zero_root_vectors:
        gens.append(("root", r))
    for r in plus_roots:
        gens.append(("root", r))

    root_pos = {payload: i for i, (kind, payload) in enumerate(gens) if kind == "root"}
    # express a coroot-coordinate vector over (h1, h2); the basis matrix
    # [[-1,-1],[-1,-2]] has inverse [[-2,1],[1,-1]].
    def h_coords(coroot: list[Fraction]) -> dict[int, Fraction]:
        c1, c2 = coroot
        a = -2 * c1 + c2
        b = c1 - c2
        out = {}
        if a:
            out[5] = a  # gid of h1
        if b:
            out[6] = b  # gid of h2
        return out

    def pairing_with_combo(r, combo) -> Fraction:
        return combo[0] * cb.cartan_pairing(r, 0) + combo[1] * cb.cartan_pairing(r, 1)

    total = len(gens)
    brackets: BracketTable = {}
    for i in range(total):
        for j in range(i + 1, total):
            ki, pi = gens[i]
            kj, pj = gens[j]
            comp: dict[int, Fraction] = {}
            if ki == "cartan" and kj == "cartan":
                pass
            elif ki == "cartan":
                c = pairing_with_combo(pj, pi)
                if c:
                    comp[j] = c
            elif kj == "cartan":
                c = -pairing_with_combo(pi, pj)
                if c:
                    comp[i] = c
            else:
                total_root = rs.add(pi, pj)
                if all(x == 0 for x in total_root):
                    comp = h_coords(cb.coroot(pi))
                elif total_root in rs.all_roots:
                    nval = cb.n(pi, pj)
                    if nval:
                        comp[root_pos[total_root]] = nval
            comp = {k: c for k, c in comp.items() if c}
            if comp:
                brackets[(i, j)] = comp

    dims = (5, 4, 5)
    meta = {"family": "g2_flag", "params": {}}
    m = LieModel(dims, _names(dims), brackets, reps={}, meta=meta)
    m.reps["graded-tangent"] = tangent_rep(m, "graded-tangent")
    return m


FAMILIES = {
    "projective": projective,
    "grassmannian": grassmannian,
    "lagrangian": lagrangian_grassmannian,
    "conformal": conformal,
    "foliated": foliated_projective,
    "split": split_projective,
    "g2": g2_flag,
}


def build_model(family: str, **params) -> LieModel:
    if family not in FAMILIES:
        raise ValueError(f"unknown model family {family!r}; have {sorted(FAMILIES)}")
    return FAMILIES[family](**params)
