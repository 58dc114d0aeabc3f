"""Exact nodal-connectivity graph from the checkerboard cell decomposition.

Write phi_{m,n} = phi1 - phi2 with phi1 = sin(mx)sin(ny) and
phi2 = sin(nx)sin(my).  All geometry lives on the integer coordinate
t in [0, m*n]; the physical coordinate is pi*t/(m*n).  The breakpoint set
{i*n : 0 <= i <= m} union {j*m : 0 <= j <= n} cuts each axis into
K = m + n - 1 intervals, and the grid lines through the breakpoints cut
the triangle into rectangles (below the diagonal) and diagonal
half-square triangles.

Both phi1 and phi2 have constant sign on each open cell.  A cell is
*shaded* when the two signs agree; only shaded cells can carry nodal
lines.  The nodal lines start and end at the lattice points V where both
products vanish,

    V = {(i*n, j*n) : 0 < j < i < m}  union  {(i*m, j*m) : 0 < j < i < n},

or at the triangle boundary, represented by a single anchor vertex.  The
case analysis per shaded cell (how many V-corners it has, and for four
corners which opposite pair of cell edges carries the sign opposite to
the centre) determines one or two graph edges.  Euler's formula on the
resulting multigraph yields the nodal-domain count.

Everything except the centre sign of four-corner cells is exact integer
arithmetic; the centre sign uses double precision with a certified
extended-precision fallback.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .modes import ModePair, is_nontiling, reduce_mode, validate_mode
from .counts import NodalSummary

__all__ = [
    "Cell", "VCorner", "NodalGraph", "GraphCounts",
    "v_points", "num_v_points", "build_cells", "edges_for_cell",
    "build_graph", "counts_from_graph", "graph_nodal_count",
    "eval_phi", "phi_float", "export_graph", "render_svg",
]


# ---------------------------------------------------------------------------
# lattice geometry

def _require_nontiling(m, n):
    m, n = validate_mode(m, n)
    if not is_nontiling(m, n):
        raise ValueError("(%d, %d) is a tiling mode; reduce it first" % (m, n))
    return m, n


def breakpoints(m, n):
    """Sorted integer breakpoints {i*n} union {j*m} on [0, m*n]."""
    return np.union1d(np.arange(m + 1, dtype=np.int64) * n,
                      np.arange(n + 1, dtype=np.int64) * m)


def num_v_points(m, n):
    """|V| = C(m-1, 2) + C(n-1, 2)."""
    return (m - 1) * (m - 2) // 2 + (n - 1) * (n - 2) // 2


def anchor_index(m, n):
    """Vertex id of the boundary anchor (one past the last V-point)."""
    return num_v_points(m, n)


def v_points(m, n):
    """Ordered list of V-point coordinates (tx, ty).

    The position in the list is the vertex id: first the m-lattice points
    (i*n, j*n) ordered by (i, j), then the n-lattice points (i*m, j*m).
    """
    m, n = _require_nontiling(m, n)
    pts = [(i * n, j * n) for i in range(2, m) for j in range(1, i)]
    pts += [(i * m, j * m) for i in range(2, n) for j in range(1, i)]
    return pts


# ---------------------------------------------------------------------------
# sign arithmetic
#
# At a sample point x = pi*s/(2mn) strictly between grid lines,
# sign sin(m x) = (-1)^floor(s / 2n) and sign sin(n x) = (-1)^floor(s / 2m).
# On a grid line x = pi*ta/(mn) one of the two products vanishes and phi
# reduces to a single signed product, giving the exact edge-midpoint signs
# below.

def _edge_sign_vertical(m, n, ta, sb):
    """Sign of phi on the vertical line x = pi*ta/(mn) at y = pi*sb/(2mn)."""
    if ta % n == 0:
        par = (ta // m + sb // (2 * n)) & 1
        return 1 if par else -1          # -(-1)^par
    par = (ta // n + sb // (2 * m)) & 1
    return -1 if par else 1              # +(-1)^par


def _edge_sign_horizontal(m, n, tb, sa):
    """Sign of phi on the horizontal line y = pi*tb/(mn) at x = pi*sa/(2mn)."""
    if tb % n == 0:
        par = (sa // (2 * n) + tb // m) & 1
        return -1 if par else 1          # +(-1)^par
    par = (sa // (2 * m) + tb // n) & 1
    return 1 if par else -1              # -(-1)^par


def _edge_sign_vertical_vec(m, n, ta, sb):
    on_m = (ta % n) == 0
    par_m = ((ta // m) + (sb // (2 * n))) & 1
    par_n = ((ta // n) + (sb // (2 * m))) & 1
    s_m = np.where(par_m == 1, 1, -1)
    s_n = np.where(par_n == 1, -1, 1)
    return np.where(on_m, s_m, s_n).astype(np.int8)


def _edge_sign_horizontal_vec(m, n, tb, sa):
    on_m = (tb % n) == 0
    par_m = ((sa // (2 * n)) + (tb // m)) & 1
    par_n = ((sa // (2 * m)) + (tb // n)) & 1
    s_m = np.where(par_m == 1, -1, 1)
    s_n = np.where(par_n == 1, 1, -1)
    return np.where(on_m, s_m, s_n).astype(np.int8)


def _mp_phi(m, n, px_num, px_den, py_num, py_den, dps):
    """phi_{m,n} at (pi*px_num/px_den, pi*py_num/py_den) in mpmath."""
    with mpmath.mp.workdps(dps):
        x1 = mpmath.sinpi(mpmath.mpf(m * px_num) / px_den)
        y1 = mpmath.sinpi(mpmath.mpf(n * py_num) / py_den)
        x2 = mpmath.sinpi(mpmath.mpf(n * px_num) / px_den)
        y2 = mpmath.sinpi(mpmath.mpf(m * py_num) / py_den)
        return x1 * y1 - x2 * y2


def _certified_sign(m, n, px_num, px_den, py_num, py_den):
    """Sign of phi at an exact rational point, certified in extended
    precision.  Raises RuntimeError if even 240 digits cannot separate the
    value from zero (the point then lies on, or absurdly close to, the
    nodal set)."""
    for dps in (60, 240):
        v = _mp_phi(m, n, px_num, px_den, py_num, py_den, dps)
        if abs(v) > mpmath.mpf(10) ** (-(dps - 20)):
            return 1 if v > 0 else -1
    raise RuntimeError(
        "cannot certify the sign of phi_{%d,%d} at (%d/%d, %d/%d)*pi"
        % (m, n, px_num, px_den, py_num, py_den))


_REL_TOL = 1e-9


def _center_sign(m, n, sa, sb, monitors=None):
    """Certified sign of phi at the cell centre (pi*sa/(2mn), pi*sb/(2mn)).

    Double precision first; if the value is small relative to the two
    product magnitudes, fall back to extended precision.
    """
    a1 = math.sin(math.pi * (sa % (4 * n)) / (2 * n))
    b1 = math.sin(math.pi * (sb % (4 * m)) / (2 * m))
    a2 = math.sin(math.pi * (sa % (4 * m)) / (2 * m))
    b2 = math.sin(math.pi * (sb % (4 * n)) / (2 * n))
    val = a1 * b1 - a2 * b2
    scale = abs(a1 * b1) + abs(a2 * b2)
    if abs(val) > _REL_TOL * (scale + 1e-30):
        return 1 if val > 0 else -1
    if monitors is not None:
        monitors["center_sign_fallbacks"] = monitors.get("center_sign_fallbacks", 0) + 1
    den = 2 * m * n
    return _certified_sign(m, n, sa, den, sb, den)


def _center_signs_vec(m, n, sa, sb):
    """Vector variant of _center_sign.  Returns (signs int8, fallbacks)."""
    fa1 = np.sin(np.pi * (sa % (4 * n)) / (2.0 * n))
    fb1 = np.sin(np.pi * (sb % (4 * m)) / (2.0 * m))
    fa2 = np.sin(np.pi * (sa % (4 * m)) / (2.0 * m))
    fb2 = np.sin(np.pi * (sb % (4 * n)) / (2.0 * n))
    val = fa1 * fb1 - fa2 * fb2
    scale = np.abs(fa1 * fb1) + np.abs(fa2 * fb2)
    signs = np.where(val > 0, 1, -1).astype(np.int8)
    shaky = np.abs(val) <= _REL_TOL * (scale + 1e-30)
    nfb = int(shaky.sum())
    if nfb:
        den = 2 * m * n
        for i in np.nonzero(shaky)[0]:
            signs[i] = _certified_sign(m, n, int(sa[i]), den, int(sb[i]), den)
    return signs, nfb


def phi_float(m, n, x, y):
    """Plain double-precision phi_{m,n}(x, y) at float coordinates."""
    return (math.sin(m * x) * math.sin(n * y)
            - math.sin(n * x) * math.sin(m * y))


def _sin_pi_frac(f):
    """Double-precision sin(pi*f) for a Fraction f, with exact zeros on
    integers (math.sin(math.pi * k) is not exactly zero)."""
    f = f % 2
    if f.denominator == 1:
        return 0.0
    return math.sin(math.pi * float(f))


def eval_phi(m, n, px, py):
    """Evaluate phi_{m,n} at the exact rational point (pi*px, pi*py).

    px and py are Fractions (or values accepted by Fraction) with
    0 < py < px < 1.  Returns (value, sign) where sign in {-1, +1} is
    certified: double precision when the value is comfortably nonzero,
    extended precision otherwise.  A point whose sign cannot be certified
    raises RuntimeError rather than guessing.
    """
    m, n = validate_mode(m, n)
    px, py = Fraction(px), Fraction(py)
    if not (0 < py < px < 1):
        raise ValueError("point must lie strictly inside the triangle "
                         "(0 < py < px < 1 in units of pi)")
    a1 = _sin_pi_frac(m * px)
    b1 = _sin_pi_frac(n * py)
    a2 = _sin_pi_frac(n * px)
    b2 = _sin_pi_frac(m * py)
    val = a1 * b1 - a2 * b2
    scale = abs(a1 * b1) + abs(a2 * b2)
    if abs(val) > _REL_TOL * (scale + 1e-30):
        return val, (1 if val > 0 else -1)
    sign = _certified_sign(m, n, px.numerator, px.denominator,
                           py.numerator, py.denominator)
    value = float(_mp_phi(m, n, px.numerator, px.denominator,
                          py.numerator, py.denominator, 60))
    return value, sign


# ---------------------------------------------------------------------------
# cells

@dataclass(frozen=True)
class VCorner:
    """A cell corner that is a V-point: position tag, vertex id, coords."""
    pos: str            # "BL", "BR", "TL", "TR" for rectangles; "RA" for triangles
    vid: int
    tx: int
    ty: int


@dataclass(frozen=True)
class Cell:
    """One cell of the grid decomposition.

    Rectangles have b < a (y-interval strictly below x-interval); the
    diagonal triangle of interval a is the half {y < x} of the square
    (a, a).  boundary is True when the cell has a full side on the
    triangle boundary (bottom row, right column, and every diagonal
    triangle); touching the boundary in a single corner does not count.
    """
    shape: str                  # "rectangle" or "diagonalTriangle"
    a: int
    b: int
    x_interval: tuple
    y_interval: tuple
    shaded: bool
    boundary: bool
    v_corners: tuple            # VCorner entries in BL, BR, TL, TR scan order
    index: int                  # scan-order cell id: a*(a+1)//2 + b


def _cell_parities(t, m, n):
    """Interval parity word p: cell (a, b) is shaded iff p[a] == p[b]."""
    s = t[:-1] + t[1:]
    return ((s // (2 * n)) + (s // (2 * m))) & 1


def _triangle_shaded(t, m, n):
    """Shading of each diagonal triangle, sampled at thirds."""
    h = t[1:] - t[:-1]
    ux = 3 * t[:-1] + 2 * h
    uy = 3 * t[:-1] + h
    return (((ux // (3 * n) + uy // (3 * m)) & 1)
            == ((ux // (3 * m) + uy // (3 * n)) & 1))


def build_cells(m, n):
    """All cells of the decomposition in scan order (a ascending, then b
    ascending, the diagonal triangle of column a last)."""
    m, n = _require_nontiling(m, n)
    t = breakpoints(m, n)
    K = len(t) - 1
    p = _cell_parities(t, m, n)
    tsh = _triangle_shaded(t, m, n)
    vid_of = {pt: i for i, pt in enumerate(v_points(m, n))}
    tl = t.tolist()
    cells = []
    for a in range(K):
        xa, xa1 = tl[a], tl[a + 1]
        for b in range(a):
            yb, yb1 = tl[b], tl[b + 1]
            vcs = []
            for pos, tx, ty in (("BL", xa, yb), ("BR", xa1, yb),
                                ("TL", xa, yb1), ("TR", xa1, yb1)):
                vid = vid_of.get((tx, ty))
                if vid is not None:
                    vcs.append(VCorner(pos, vid, tx, ty))
            cells.append(Cell(
                shape="rectangle", a=a, b=b,
                x_interval=(xa, xa1), y_interval=(yb, yb1),
                shaded=bool(p[a] == p[b]),
                boundary=(b == 0 or a == K - 1),
                v_corners=tuple(vcs),
                index=a * (a + 1) // 2 + b))
        vcs = []
        vid = vid_of.get((xa1, xa))
        if vid is not None:
            vcs.append(VCorner("RA", vid, xa1, xa))
        cells.append(Cell(
            shape="diagonalTriangle", a=a, b=a,
            x_interval=(xa, xa1), y_interval=(xa, xa1),
            shaded=bool(tsh[a]),
            boundary=True,
            v_corners=tuple(vcs),
            index=a * (a + 1) // 2 + a))
    return cells


def edges_for_cell(cell, m, n, monitors=None):
    """Graph edges emitted by one shaded cell, as (u, v) vertex-id pairs.

    The anchor id is num_v_points(m, n).  Interior rectangles join their
    two V-corners, or pair four V-corners along the two opposite cell
    edges whose phi-sign is opposite to the centre sign (two edges, the
    one containing BL first).  Boundary cells with one V-point in the
    closure link it to the anchor; with two, they join the two V-points.
    A shaded boundary cell with no V-point emits nothing and is tallied in
    monitors["boundary_shaded_no_vertex"] when a dict is supplied.
    """
    if not cell.shaded:
        raise ValueError("edges are defined only for shaded cells")
    anchor = anchor_index(m, n)
    vcs = cell.v_corners
    k = len(vcs)
    if cell.shape == "diagonalTriangle":
        if k == 0:
            return []
        if k == 1:
            return [(vcs[0].vid, anchor)]
        raise AssertionError("diagonal triangle with %d vertex corners" % k)
    if cell.boundary:
        if k == 0:
            if monitors is not None:
                monitors["boundary_shaded_no_vertex"] = \
                    monitors.get("boundary_shaded_no_vertex", 0) + 1
            return []
        if k == 1:
            return [(vcs[0].vid, anchor)]
        if k == 2:
            return [(vcs[0].vid, vcs[1].vid)]
        raise AssertionError("boundary rectangle with %d vertex corners" % k)
    if k == 0:
        if monitors is not None:
            monitors["interior_shaded_no_vertex"] = \
                monitors.get("interior_shaded_no_vertex", 0) + 1
        return []
    if k == 2:
        return [(vcs[0].vid, vcs[1].vid)]
    if k == 4:
        ta, ta1 = cell.x_interval
        tb, tb1 = cell.y_interval
        sa, sb = ta + ta1, tb + tb1
        s_l = _edge_sign_vertical(m, n, ta, sb)
        s_r = _edge_sign_vertical(m, n, ta1, sb)
        s_b = _edge_sign_horizontal(m, n, tb, sa)
        s_t = _edge_sign_horizontal(m, n, tb1, sa)
        if s_l != s_r or s_b != s_t or s_l == s_b:
            raise AssertionError(
                "edge-midpoint sign pattern violated on cell (%d, %d) of "
                "(%d, %d)" % (cell.a, cell.b, m, n))
        s_0 = _center_sign(m, n, sa, sb, monitors)
        by_pos = {c.pos: c.vid for c in vcs}
        if s_0 == s_b:
            # left/right edges carry the opposite sign: vertical pairing
            return [(by_pos["BL"], by_pos["TL"]), (by_pos["BR"], by_pos["TR"])]
        return [(by_pos["BL"], by_pos["BR"]), (by_pos["TL"], by_pos["TR"])]
    raise AssertionError("interior rectangle with %d vertex corners" % k)


# ---------------------------------------------------------------------------
# graph construction

@dataclass(frozen=True)
class NodalGraph:
    """Multigraph on V union {anchor}; edge arrays are aligned and sorted
    by (cell index, within-cell slot)."""
    m: int
    n: int
    num_vertices: int          # |V|, anchor excluded
    anchor: int                # == num_vertices
    edges_u: np.ndarray
    edges_v: np.ndarray
    edge_cell: np.ndarray
    monitors: dict


@dataclass(frozen=True)
class GraphCounts:
    nu: int
    eta: int
    loops: int
    edge_count: int
    component_count: int


def _build_graph_reference(m, n):
    """Per-cell construction: the direct transcription of the case
    analysis.  Used to cross-validate the vectorised builder."""
    monitors = {"boundary_shaded_no_vertex": 0,
                "interior_shaded_no_vertex": 0,
                "center_sign_fallbacks": 0}
    eu, ev, ec = [], [], []
    for cell in build_cells(m, n):
        if not cell.shaded:
            continue
        for u, v in edges_for_cell(cell, m, n, monitors):
            eu.append(u)
            ev.append(v)
            ec.append(cell.index)
    return NodalGraph(
        m=m, n=n, num_vertices=num_v_points(m, n), anchor=anchor_index(m, n),
        edges_u=np.asarray(eu, dtype=np.int64),
        edges_v=np.asarray(ev, dtype=np.int64),
        edge_cell=np.asarray(ec, dtype=np.int64),
        monitors=monitors)


def _build_graph_fast(m, n):
    """Vectorised construction; identical output to the reference path."""
    t = breakpoints(m, n)
    K = len(t) - 1
    nm = (m - 1) * (m - 2) // 2
    anchor = num_v_points(m, n)
    is_m = (t % n) == 0
    is_n = (t % m) == 0
    interior = np.zeros(K + 1, dtype=bool)
    interior[1:K] = True
    ok_m = is_m & interior
    ok_n = is_n & interior
    if (ok_n[:-1] & ok_n[1:]).any():
        raise AssertionError("adjacent breakpoints both on the n-lattice")
    i_m = t // n
    i_n = t // m
    base_m = (i_m - 1) * (i_m - 2) // 2
    base_n = (i_n - 1) * (i_n - 2) // 2
    below = t[None, :] < t[:, None]
    vid = np.where(ok_m[:, None] & ok_m[None, :] & below,
                   base_m[:, None] + (i_m[None, :] - 1), -1)
    vid = np.where(ok_n[:, None] & ok_n[None, :] & below,
                   nm + base_n[:, None] + (i_n[None, :] - 1), vid)

    p = _cell_parities(t, m, n)
    a, b = np.tril_indices(K, -1)
    keep = p[a] == p[b]
    a = a[keep]
    b = b[keep]
    bl = vid[a, b]
    br = vid[a + 1, b]
    tl = vid[a, b + 1]
    tr = vid[a + 1, b + 1]
    cs = np.stack([bl, br, tl, tr])
    have = cs >= 0
    cnt = have.sum(axis=0)
    bnd = (b == 0) | (a == K - 1)
    intr = ~bnd
    if (intr & ((cnt & 1) == 1)).any():
        raise AssertionError("interior shaded rectangle with an odd number "
                             "of vertex corners")
    if (bnd & (cnt > 2)).any():
        raise AssertionError("boundary rectangle with more than two vertex "
                             "corners")
    monitors = {
        "boundary_shaded_no_vertex": int((bnd & (cnt == 0)).sum()),
        "interior_shaded_no_vertex": int((intr & (cnt == 0)).sum()),
        "center_sign_fallbacks": 0,
    }
    cell_id = a * (a + 1) // 2 + b

    # two V-corners (interior or boundary): join first to last in scan order
    i2 = np.nonzero(cnt == 2)[0]
    h2 = have[:, i2]
    first = np.argmax(h2, axis=0)
    last = 3 - np.argmax(h2[::-1], axis=0)
    cols = np.arange(len(i2))
    eu2 = cs[:, i2][first, cols]
    ev2 = cs[:, i2][last, cols]
    ec2 = cell_id[i2]

    # one V-corner (boundary only): edge to the anchor
    i1 = np.nonzero(cnt == 1)[0]
    h1 = have[:, i1]
    f1 = np.argmax(h1, axis=0)
    eu1 = cs[:, i1][f1, np.arange(len(i1))]
    ev1 = np.full(len(i1), anchor, dtype=np.int64)
    ec1 = cell_id[i1]

    # four V-corners: orientation from exact edge signs + centre sign
    i4 = np.nonzero(cnt == 4)[0]
    a4 = a[i4]
    b4 = b[i4]
    sa = t[a4] + t[a4 + 1]
    sb = t[b4] + t[b4 + 1]
    s_l = _edge_sign_vertical_vec(m, n, t[a4], sb)
    s_r = _edge_sign_vertical_vec(m, n, t[a4 + 1], sb)
    s_b = _edge_sign_horizontal_vec(m, n, t[b4], sa)
    s_t = _edge_sign_horizontal_vec(m, n, t[b4 + 1], sa)
    if not ((s_l == s_r).all() and (s_b == s_t).all() and (s_l != s_b).all()):
        raise AssertionError("edge-midpoint sign pattern violated on a "
                             "four-corner cell of (%d, %d)" % (m, n))
    s_0, nfb = _center_signs_vec(m, n, sa, sb)
    monitors["center_sign_fallbacks"] += nfb
    vert = s_0 == s_b
    bl4, br4, tl4, tr4 = bl[i4], br[i4], tl[i4], tr[i4]
    e40u = bl4
    e40v = np.where(vert, tl4, br4)
    e41u = np.where(vert, br4, tl4)
    e41v = tr4
    ec4 = cell_id[i4]

    # diagonal triangles: V at the right-angle corner links to the anchor
    tsh = _triangle_shaded(t, m, n)
    if not tsh.all():
        raise AssertionError("unshaded diagonal triangle in (%d, %d)" % (m, n))
    has_v = ok_m[:-1] & ok_m[1:]
    ta_idx = np.nonzero(has_v)[0]
    eut = vid[ta_idx + 1, ta_idx]
    evt = np.full(len(ta_idx), anchor, dtype=np.int64)
    ect = ta_idx * (ta_idx + 1) // 2 + ta_idx

    eu = np.concatenate([eu2, eu1, e40u, e41u, eut]).astype(np.int64)
    ev = np.concatenate([ev2, ev1, e40v, e41v, evt]).astype(np.int64)
    ec = np.concatenate([ec2, ec1, ec4, ec4, ect]).astype(np.int64)
    slot = np.concatenate([
        np.zeros(len(i2), np.int8), np.zeros(len(i1), np.int8),
        np.zeros(len(i4), np.int8), np.ones(len(i4), np.int8),
        np.zeros(len(ta_idx), np.int8)])
    order = np.lexsort((slot, ec))
    return NodalGraph(
        m=m, n=n, num_vertices=anchor, anchor=anchor,
        edges_u=eu[order], edges_v=ev[order], edge_cell=ec[order],
        monitors=monitors)


def build_graph(m, n, method="fast"):
    """Nodal graph of a non-tiling mode.

    method "fast" is the vectorised builder; "reference" is the per-cell
    transcription.  Both produce identical edge lists in deterministic
    scan order.
    """
    m, n = _require_nontiling(m, n)
    if method == "fast":
        return _build_graph_fast(m, n)
    if method == "reference":
        return _build_graph_reference(m, n)
    raise ValueError("unknown build method %r" % (method,))


def counts_from_graph(g):
    """Extract (nu, eta, loops) from a nodal graph in one component pass.

    nu = E - |V| + c with |V| the V-points (anchor excluded) and c the
    component count of the full vertex set including the anchor; loops is
    the number of components not containing the anchor; eta is twice the
    cycle rank of the anchor component.
    """
    n_nodes = g.num_vertices + 1
    n_edges = len(g.edges_u)
    if n_edges:
        data = np.ones(n_edges, dtype=np.int8)
        mat = sparse.coo_matrix((data, (g.edges_u, g.edges_v)),
                                shape=(n_nodes, n_nodes))
        c, labels = csgraph.connected_components(mat, directed=False)
    else:
        c, labels = n_nodes, np.arange(n_nodes)
    nu = n_edges - g.num_vertices + c
    loops = c - 1
    anchor_label = labels[g.anchor]
    v_a = int((labels == anchor_label).sum())
    e_a = int((labels[g.edges_u] == anchor_label).sum()) if n_edges else 0
    eta = 2 * (e_a - v_a + 1)
    return GraphCounts(nu=int(nu), eta=eta, loops=int(loops),
                       edge_count=n_edges, component_count=int(c))


def graph_nodal_count(m, n, method="fast"):
    """NodalSummary of any valid mode via the graph algorithm (the mode is
    tiling-reduced first; nu multiplies by the tile count)."""
    m, n = validate_mode(m, n)
    reduced, tiles = reduce_mode(m, n)
    g = build_graph(reduced.m, reduced.n, method=method)
    gc = counts_from_graph(g)
    return NodalSummary(mode=ModePair(m, n), nu=tiles * gc.nu, eta=gc.eta,
                        loops=gc.loops, tiles=tiles, method="graph")


# ---------------------------------------------------------------------------
# exports

def export_graph(g, format="json"):
    """Deterministic serialization of a nodal graph.

    json: document with mode, anchor id, nodes [id, tx, ty, anchor flag]
    and edges [u, v, cell].  dot: plain undirected graphviz text with the
    same attributes.  Returns bytes.
    """
    pts = v_points(g.m, g.n)
    if format == "json":
        doc = {
            "mode": [g.m, g.n],
            "anchor": int(g.anchor),
            "nodes": [{"id": i, "tx": tx, "ty": ty, "anchor": False}
                      for i, (tx, ty) in enumerate(pts)]
                     + [{"id": int(g.anchor), "tx": None, "ty": None,
                         "anchor": True}],
            "edges": [{"u": int(u), "v": int(v), "cell": int(c)}
                      for u, v, c in zip(g.edges_u, g.edges_v, g.edge_cell)],
        }
        return (json.dumps(doc, indent=1) + "\n").encode()
    if format == "dot":
        def name(v):
            return "anchor" if v == g.anchor else "v%d" % v
        lines = ["graph nodal_%d_%d {" % (g.m, g.n)]
        lines.append("  anchor [anchor=true];")
        for i, (tx, ty) in enumerate(pts):
            lines.append("  v%d [tx=%d, ty=%d];" % (i, tx, ty))
        for u, v, c in zip(g.edges_u, g.edges_v, g.edge_cell):
            lines.append("  %s -- %s [cell=%d];" % (name(u), name(v), c))
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError("unknown export format %r" % (format,))


# ---------------------------------------------------------------------------
# SVG rendering

def _unfold_scale_offset(i, d):
    """Affine x = s*u + o mapping [0, pi] onto the i-th fold of [0, pi]/d."""
    if i % 2 == 0:
        return 1.0 / d, math.pi * i / d
    return -1.0 / d, math.pi * (i + 1) / d


def _unfold_int(i, c):
    """Image of corner coordinate c (0 or 1, units of pi) in units of pi/d."""
    return c + i if i % 2 == 0 else (i + 1) - c


def _compose(g, bse):
    """Affine composition g(b(u, v)) for 6-tuples (a, b, c, d, e, f) with
    x' = a*u + c*v + e, y' = b*u + d*v + f."""
    ga, gb, gc, gd, ge, gf = g
    ba, bb, bc, bd, be, bf = bse
    return (ga * ba + gc * bb, gb * ba + gd * bb,
            ga * bc + gc * bd, gb * bc + gd * bd,
            ga * be + gc * bf + ge, gb * be + gd * bf + gf)


def tile_transforms(m, n):
    """Affine maps sending the reduced pattern onto each tile of mode
    (m, n).  A non-tiling mode gets the identity; a parity pair gets the
    two mirror halves about the anti-diagonal; a gcd d contributes the
    d^2 unfoldings of the scaled triangle that land inside the domain."""
    m, n = validate_mode(m, n)
    d = math.gcd(m, n)
    m1, n1 = m // d, n // d
    if (m1 + n1) % 2 == 0:
        base = [(0.5, 0.5, 0.5, -0.5, 0.0, 0.0),
                (-0.5, -0.5, 0.5, -0.5, math.pi, math.pi)]
    else:
        base = [(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)]
    if d == 1:
        return base
    gcd_maps = []
    for i in range(d):
        for j in range(d):
            for swap in (False, True):
                ok = True
                for cu, cv in ((0, 0), (1, 0), (1, 1)):
                    xu = _unfold_int(i, cv if swap else cu)
                    yu = _unfold_int(j, cu if swap else cv)
                    if not 0 <= yu <= xu <= d:
                        ok = False
                        break
                if not ok:
                    continue
                sx, ox = _unfold_scale_offset(i, d)
                sy, oy = _unfold_scale_offset(j, d)
                if swap:
                    gcd_maps.append((0.0, sy, sx, 0.0, ox, oy))
                else:
                    gcd_maps.append((sx, 0.0, 0.0, sy, ox, oy))
    assert len(gcd_maps) == d * d
    return [_compose(g, bse) for g in gcd_maps for bse in base]


def _f(x):
    return "%.6f" % x


def render_svg(m, n):
    """Schematic SVG of the nodal pattern: cell grid, shaded cells,
    V-points, and graph edges of the reduced mode, tiled over the full
    triangle for tiling modes.  Line geometry is schematic polylines, not
    the true nodal curves.  Returns bytes."""
    m, n = validate_mode(m, n)
    reduced, _tiles = reduce_mode(m, n)
    rm, rn = reduced
    den = rm * rn
    scale = math.pi / den

    def pt(tx, ty):
        return tx * scale, ty * scale

    cells = build_cells(rm, rn)
    pts = v_points(rm, rn)
    anchor = anchor_index(rm, rn)
    t = breakpoints(rm, rn).tolist()
    parts = []
    # shaded cells
    for c in cells:
        if not c.shaded:
            continue
        x0, y0 = pt(c.x_interval[0], c.y_interval[0])
        x1, y1 = pt(c.x_interval[1], c.y_interval[1])
        if c.shape == "rectangle":
            parts.append('<rect x="%s" y="%s" width="%s" height="%s" '
                         'fill="#f3dca4"/>' % (_f(x0), _f(y0), _f(x1 - x0),
                                               _f(y1 - y0)))
        else:
            parts.append('<path d="M %s %s L %s %s L %s %s Z" fill="#f3dca4"/>'
                         % (_f(x0), _f(y0), _f(x1), _f(y0), _f(x1), _f(y1)))
    # grid lines
    for ti in t[1:-1]:
        c = ti * scale
        parts.append('<line x1="%s" y1="0" x2="%s" y2="%s" stroke="#9a9a9a" '
                     'stroke-width="0.004"/>' % (_f(c), _f(c), _f(c)))
        parts.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#9a9a9a" '
                     'stroke-width="0.004"/>' % (_f(c), _f(c), _f(math.pi), _f(c)))
    # edges
    coords = {i: pt(tx, ty) for i, (tx, ty) in enumerate(pts)}
    for c in cells:
        if not c.shaded:
            continue
        cx = (c.x_interval[0] + c.x_interval[1]) * 0.5 * scale
        cy = (c.y_interval[0] + c.y_interval[1]) * 0.5 * scale
        for u, v in edges_for_cell(c, rm, rn):
            if v == anchor:
                ux, uy = coords[u]
                if c.shape == "diagonalTriangle":
                    bx = (c.x_interval[0] + c.x_interval[1]) * 0.5 * scale
                    by = bx
                elif c.b == 0:
                    bx, by = cx, 0.0
                else:
                    bx, by = math.pi, cy
                parts.append('<polyline points="%s,%s %s,%s" fill="none" '
                             'stroke="#b03a2e" stroke-width="0.014" '
                             'stroke-linecap="round"/>'
                             % (_f(ux), _f(uy), _f(bx), _f(by)))
            else:
                ux, uy = coords[u]
                vx, vy = coords[v]
                mx_, my_ = (ux + vx) * 0.5, (uy + vy) * 0.5
                bx = mx_ + 0.4 * (cx - mx_)
                by = my_ + 0.4 * (cy - my_)
                parts.append('<polyline points="%s,%s %s,%s %s,%s" fill="none" '
                             'stroke="#b03a2e" stroke-width="0.014" '
                             'stroke-linecap="round"/>'
                             % (_f(ux), _f(uy), _f(bx), _f(by), _f(vx), _f(vy)))
    # V-points
    for tx, ty in pts:
        x, y = pt(tx, ty)
        parts.append('<circle cx="%s" cy="%s" r="0.02" fill="#1a1a1a"/>'
                     % (_f(x), _f(y)))

    pattern = '<g id="pattern">%s</g>' % "".join(parts)
    uses = "".join(
        '<use xlink:href="#pattern" href="#pattern" '
        'transform="matrix(%s %s %s %s %s %s)"/>'
        % tuple(_f(v) for v in tr)
        for tr in tile_transforms(m, n))
    pi_s = _f(math.pi)
    outline = ('<path d="M 0 0 L %s 0 L %s %s Z" fill="none" stroke="#000000" '
               'stroke-width="0.012"/>' % (pi_s, pi_s, pi_s))
    svg = ('<svg xmlns="http://www.w3.org/2000/svg" '
           'xmlns:xlink="http://www.w3.org/1999/xlink" '
           'viewBox="0 0 %s %s" width="640" height="640">'
           '<g transform="translate(0 %s) scale(1 -1)">'
           '<defs>%s</defs>%s%s</g></svg>\n'
           % (pi_s, pi_s, pi_s, pattern, uses, outline))
    return svg.encode()
