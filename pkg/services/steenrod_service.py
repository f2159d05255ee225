"""
Mod 2 cohomology of BPin(2) and of the Thom spectra X(m) of -m copies of λ,
the attaching-map tables read off from Sq^1 and Sq^2, and cell diagrams.

H*(BPin(2); F_2) = F_2[q, v]/(q^3) with |q| = 1, |v| = 4, and
H^j X(m) is spanned by q^a v^b Φ with a + 4b = j + m.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from math import comb

from services.stems_service import ETA, StemElem, nu_multiple, stem_group
from utils.errors import ParameterError, VerificationError

LOGGER = logging.getLogger(__name__)

TWO = StemElem("2", 0, 0)
ETA_SQ = stem_group(2).generators[0]
NU_ELEM = stem_group(3).generators[0]
ETA_CUBED = nu_multiple(4)

# Sq^1 / Sq^2 nonzero on H^j X(m), keyed by (m mod 4, j mod 4)
SQ1_TABLE = frozenset({(0, 1), (1, 3), (2, 3), (3, 1)})
SQ2_TABLE = frozenset({(1, 3), (2, 2)})
# eta^2 attaching maps (j -> j+3), from the four-case proposition
ETA_SQ_TABLE = frozenset({(0, 2), (1, 1), (2, 3), (3, 2)})
# eta between neighbouring columns X(m) and X(m+1)
BETWEEN_COL_ETA_TABLE = frozenset({(0, 2), (1, 1), (2, 0), (3, 3)})


@dataclass(frozen=True)
class F2Poly:
    """An element of F_2[q, v]/(q^3) as the set of monomials (a, b) = q^a v^b present."""

    terms: frozenset = frozenset()

    @classmethod
    def monomial(cls, a, b=0):
        if a > 2:
            return cls()
        return cls(frozenset({(a, b)}))

    @classmethod
    def one(cls):
        return cls.monomial(0, 0)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        return F2Poly(self.terms ^ other.terms)

    def __mul__(self, other):
        out = frozenset()
        for a1, b1 in self.terms:
            for a2, b2 in other.terms:
                if a1 + a2 <= 2:
                    out ^= {(a1 + a2, b1 + b2)}
        return F2Poly(out)

    def __pow__(self, n):
        result = F2Poly.one()
        for _ in range(n):
            result = result * self
        return result

    def homogeneous(self, degree):
        return F2Poly(frozenset(t for t in self.terms if t[0] + 4 * t[1] == degree))

    def coefficient(self, a, b=0):
        return int((a, b) in self.terms)


Q = F2Poly.monomial(1)
Q_SQ = F2Poly.monomial(2)


def total_sq_monomial(a, b):
    """Total square Sq(q^a v^b) up to the terms Sq^(>=4) would add: (q + q^2)^a v^b."""
    return ((Q + Q_SQ) ** a) * F2Poly.monomial(0, b)


def sq_bpin(i, poly):
    """Sq^i on H*BPin(2) for i <= 2, by the Cartan formula."""
    out = F2Poly()
    for a, b in poly.terms:
        out = out + total_sq_monomial(a, b).homogeneous(a + 4 * b + i)
    return out


@dataclass(frozen=True)
class ThomTwist:
    """Low Stiefel-Whitney data of -mλ: w(-mλ) = (1 + q + q^2)^m truncated at q^2."""

    m: int
    w0: int
    w1: int
    w2: int

    @classmethod
    def for_m(cls, m):
        w = (F2Poly.one() + Q + Q_SQ) ** (m % 4)
        return cls(m, w.coefficient(0), w.coefficient(1), w.coefficient(2))

    def closed_form(self):
        return (1, self.m % 2, (comb(self.m, 2) + self.m) % 2)

    def class_in_degree(self, t):
        bit = (self.w0, self.w1, self.w2)[t]
        return F2Poly.monomial(t) if bit else F2Poly()


def cell_exists(m, j):
    """
    Whether X(m) has a cell in dimension j.

    Args:
        m (int): m >= 0
        j (int): Dimension

    Returns:
        bool: True iff j >= -m and (j + m) mod 4 != 3
    """
    return j >= -m and (j + m) % 4 != 3


def thom_basis(m, j):
    """The basis element q^a v^b of H^j X(m) (times Φ), as an F2Poly."""
    if not cell_exists(m, j):
        raise ParameterError(f"X({m}) has no cell in dimension {j}")
    a, b = (j + m) % 4, (j + m) // 4
    return F2Poly.monomial(a, b)


def thom_sq(i, m, poly):
    """Sq^i(poly·Φ) = sum_{s+t=i} Sq^s(poly)·w_t·Φ, returned as the coefficient of Φ."""
    twist = ThomTwist.for_m(m)
    out = F2Poly()
    for s in range(i + 1):
        out = out + sq_bpin(s, poly) * twist.class_in_degree(i - s)
    return out


def _table_bit(i, m, j):
    table = SQ1_TABLE if i == 1 else SQ2_TABLE
    return (m % 4, j % 4) in table


def sq_nonzero(i, m, j):
    """
    Computes whether Sq^i is nonzero on H^j X(m), and checks it against the residue table.

    Args:
        i (int): 1 or 2
        m (int): m >= 0
        j (int): Dimension with a cell

    Returns:
        bool: The computed bit
    """
    if i not in (1, 2):
        raise ParameterError(f"Only Sq^1 and Sq^2 are modelled, got Sq^{i}")
    computed = bool(thom_sq(i, m, thom_basis(m, j)))
    if computed != _table_bit(i, m, j):
        raise VerificationError(
            f"Computed Sq^{i} on H^{j} X({m}) disagrees with the residue table",
            {"i": i, "m": m, "j": j, "computed": computed},
        )
    return computed


def sq1_sq1_vanishes(m, j):
    return not thom_sq(1, m, thom_sq(1, m, thom_basis(m, j)))


@dataclass(frozen=True)
class AttachRow:
    """Attaching-map flags of X(m) at the cell j."""

    m_res: int
    j_res: int
    has_cell: bool
    two: bool = False
    eta: bool = False
    eta_sq: bool = False
    between_col_eta: bool = False


def attach_flags(m, j):
    """
    Attaching-map flags at (m, j).

    The 2 and η flags are the computed Sq^1 and Sq^2 bits; η² and the
    between-column η are stored residue data.
    """
    key = (m % 4, j % 4)
    if not cell_exists(m, j):
        return AttachRow(key[0], key[1], False)
    return AttachRow(
        key[0],
        key[1],
        True,
        two=sq_nonzero(1, m, j),
        eta=sq_nonzero(2, m, j),
        eta_sq=key in ETA_SQ_TABLE,
        between_col_eta=key in BETWEEN_COL_ETA_TABLE,
    )


def attach_table():
    """The sixteen residue rows, evaluated at representatives m = r + 4, j = s."""
    return {(r, s): attach_flags(r + 4, s) for r in range(4) for s in range(4)}


@dataclass(frozen=True)
class PeriodicityResult:
    ok: bool
    violation: dict = None

    def __bool__(self):
        return self.ok


def periodicity_check(window, flags_fn=attach_flags, cells_fn=cell_exists):
    """
    Checks 4-periodicity of the cell and attaching data.

    Compares (m, j) with (m+4, j) and (m, j+4), and the truncation
    X(m)_{4n-m}^{4n+6-m} with the 4-shifted truncation of X(m+4).

    Args:
        window (int): Range of m and j examined, at least 8
        flags_fn (callable): Source of AttachRow data
        cells_fn (callable): Source of cell data

    Returns:
        PeriodicityResult: ok, or the first violating pair
    """
    if window < 8:
        raise ParameterError(f"Periodicity window must be at least 8, got {window}")

    def data(m, j):
        return cells_fn(m, j), flags_fn(m, j)

    for m in range(window):
        for j in range(-m, window + 1):
            if data(m, j) != data(m + 4, j):
                return PeriodicityResult(False, {"kind": "m-shift", "m": m, "j": j})
            if data(m, j) != data(m, j + 4):
                return PeriodicityResult(False, {"kind": "j-shift", "m": m, "j": j})
        for n in range(window // 4 + 1):
            for j in range(4 * n - m, 4 * n + 7 - m):
                if data(m, j) != data(m + 4, j - 4):
                    return PeriodicityResult(False, {"kind": "truncation", "m": m, "n": n, "j": j})
    return PeriodicityResult(True)


def hp_thom_attaching(n):
    """
    Attaching map between the two cells of the quaternionic Thom truncation.

    It is p_1/2 · ν with p_1 = 4 + 2n, reduced 2-locally mod 8ν.
    """
    if n < 0:
        raise ParameterError(f"n must be non-negative, got {n}")
    return nu_multiple(2 + n)


class ZkMiddle(Enum):
    SPLIT = "split"
    ETA_CUBE_CONE = "eta_cube_cone"


def zk_middle_structure(k):
    """
    The subquotient Z(k)_{8k-8}^{8k-4}: a wedge of spheres or a Cη³.

    Args:
        k (int): k >= 1

    Returns:
        ZkMiddle: SPLIT for k even, ETA_CUBE_CONE for k odd
    """
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    attaching = hp_thom_attaching(4 * k - 2)
    if attaching.name == "0":
        structure = ZkMiddle.SPLIT
    elif attaching == ETA_CUBED:
        structure = ZkMiddle.ETA_CUBE_CONE
    else:
        raise VerificationError(f"Unexpected middle attaching map {attaching.name} for k={k}", {"k": k})
    expected = ZkMiddle.SPLIT if k % 2 == 0 else ZkMiddle.ETA_CUBE_CONE
    if structure is not expected:
        raise VerificationError(f"Z({k}) middle structure breaks the parity rule", {"k": k})
    return structure


@dataclass(frozen=True)
class CellEdge:
    lower: int
    upper: int
    label: StemElem


@dataclass(frozen=True)
class CellComplexDesc:
    """Cells and labelled attaching maps of a finite CW spectrum."""

    cells: tuple
    edges: tuple

    def __post_init__(self):
        cells = set(self.cells)
        for edge in self.edges:
            if edge.label.degree != edge.upper - edge.lower - 1:
                raise ParameterError(
                    f"Edge {edge.lower}->{edge.upper} needs a degree {edge.upper - edge.lower - 1} label, "
                    f"got {edge.label.name}"
                )
            if edge.lower not in cells or edge.upper not in cells:
                raise ParameterError(f"Edge {edge.lower}->{edge.upper} leaves the cell set")

    def edges_labelled(self, name):
        return [e for e in self.edges if e.label.name == name]


def build_cell_diagram(m, a, b):
    """
    Cell diagram of the subquotient X(m)_a^b.

    Args:
        m (int): m >= 0
        a (int): Bottom of the window
        b (int): Top of the window, a <= b

    Returns:
        CellComplexDesc: Cells of the window and their 2, η, η² (and ν) edges
    """
    if a > b:
        raise ParameterError(f"Window bottom {a} lies above its top {b}")
    cells = tuple(j for j in range(a, b + 1) if cell_exists(m, j))
    present = set(cells)
    edges = []
    for j in cells:
        row = attach_flags(m, j)
        if row.two and j + 1 in present:
            edges.append(CellEdge(j, j + 1, TWO))
        if row.eta and j + 2 in present:
            edges.append(CellEdge(j, j + 2, ETA))
        if row.eta_sq and j + 3 in present:
            edges.append(CellEdge(j, j + 3, ETA_SQ))
    # ν between the two lock cells, detected by Sq^4 and kept as data
    if m % 8 == 3 and m >= 11:
        k = (m - 3) // 8
        if 8 * k - 5 in present and 8 * k - 1 in present:
            edges.append(CellEdge(8 * k - 5, 8 * k - 1, NU_ELEM))
    edges.sort(key=lambda e: (e.lower, e.upper))
    return CellComplexDesc(cells, tuple(edges))


def cp_cell_diagram(n, top):
    """
    Cell diagram of Σ^(-2n) CP^top_n: cells 0, 2, ..., 2(top-n), with η
    from the cell of x^i exactly when Sq^2 x^i = i x^(i+1) is nonzero.
    """
    if n < 1 or top < n:
        raise ParameterError(f"Stunted projective space needs 1 <= n <= top, got n={n}, top={top}")
    cells = tuple(2 * (i - n) for i in range(n, top + 1))
    edges = tuple(
        CellEdge(2 * (i - n), 2 * (i - n) + 2, ETA) for i in range(n, top) if i % 2 == 1
    )
    return CellComplexDesc(cells, edges)


def z_cell_diagram(k):
    """Z = Σ^(-(8k+2)) CP^(8k+1)_(4k+1), the spectrum carrying the second lock."""
    return cp_cell_diagram(4 * k + 1, 8 * k + 1)


def zk_cell_diagram(k):
    """
    Z(k): the (8k-8)-skeleton Σ^(-(8k+2)) CP^(8k-3)_(4k+1) with one more cell in
    dimension 8k-4, attached by η³ when the middle is not split.
    """
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    skeleton = cp_cell_diagram(4 * k + 1, 8 * k - 3)
    edges = list(skeleton.edges)
    if zk_middle_structure(k) is ZkMiddle.ETA_CUBE_CONE:
        edges.append(CellEdge(8 * k - 8, 8 * k - 4, ETA_CUBED))
    return CellComplexDesc(skeleton.cells + (8 * k - 4,), tuple(edges))


def render_text(desc):
    """One line per edge, "lower -[label]-> upper", after a cell listing."""
    lines = ["# cells: " + " ".join(str(c) for c in desc.cells)]
    lines.extend(f"{e.lower} -[{e.label.name}]-> {e.upper}" for e in desc.edges)
    return "\n".join(lines) + "\n"


def render_dot(desc, name="X"):
    """A DOT digraph with one node per cell, drawn bottom to top."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    lines.extend(f'  "{c}";' for c in desc.cells)
    lines.extend(f'  "{e.lower}" -> "{e.upper}" [label="{e.label.name}"];' for e in desc.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
