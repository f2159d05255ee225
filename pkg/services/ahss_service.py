"""
The Atiyah-Hirzebruch differential criterion for 2^l on the (-1)-cell,
image-of-J orders, e-invariant classification, and the two lock pipelines.
"""
import logging
from dataclasses import dataclass
from enum import Enum

from services.chern_service import build_alpha, ch_of_kclass, realify_complexify, solve_simple_chern
from services.stems_service import ETA, ph2_multiple_name
from services.steenrod_service import cp_cell_diagram, z_cell_diagram, zk_cell_diagram
from utils.errors import ParameterError, VerificationError
from utils.exactarith import Val2, rat_to_str, val2

LOGGER = logging.getLogger(__name__)

KO_INJECTIVITY_CITATION = "stunted projective spaces Σ^(-2n)CP^m_n with n odd are ko-injective"


def iota(m):
    return m % 2


@dataclass(frozen=True)
class AHSSVerdict:
    """Either a permanent cycle or a nontrivial differential hitting the (4m-1)-cell."""

    kind: str
    exponent: int
    target_dim: int = None
    target_class: str = None

    PERMANENT = "PermanentCycle"
    DIFFERENTIAL = "NontrivialDifferential"

    def __post_init__(self):
        if self.kind == self.DIFFERENTIAL:
            if self.target_dim is None or self.target_dim % 4 != 3:
                raise ParameterError(f"Differential target must sit in a dimension ≡ 3 mod 4, got {self.target_dim}")
        elif self.kind != self.PERMANENT:
            raise ParameterError(f"Unknown verdict kind: {self.kind}")

    @property
    def is_permanent(self):
        return self.kind == self.PERMANENT

    def to_dict(self, k=None):
        return {
            "k": k,
            "kind": self.kind,
            "exponent": self.exponent,
            "targetDim": self.target_dim,
            "targetClass": self.target_class,
        }


def decide(l, nu_d, m):
    """
    Decides the fate of 2^l[-1] from the valuation of the residual top coefficient.

    Args:
        l (int): Exponent, l >= 0
        nu_d (Val2 | int): ν(d); INF when d = 0
        m (int): Top cell in dimension 4m, m >= 1

    Returns:
        AHSSVerdict: PermanentCycle iff ν(d) >= ι(m)
    """
    if l < 0 or m < 1:
        raise ParameterError(f"decide needs l >= 0 and m >= 1, got l={l}, m={m}")
    if Val2(nu_d) >= iota(m):
        return AHSSVerdict(AHSSVerdict.PERMANENT, l)
    return AHSSVerdict(AHSSVerdict.DIFFERENTIAL, l, 4 * m - 1)


def imj_exponent(k):
    """log_2 of the order of π_(8k-1) j'', that is 4 + ν(k)."""
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    return 4 + int(val2(k))


class EClassify(Enum):
    ZERO_CLASS = 0
    PH2 = 1
    TWO_PH2 = 2
    FOUR_PH2 = 4

    @property
    def class_name(self):
        return ph2_multiple_name(self.value)


def e_classify(nu_e):
    """
    Identifies the Adams-filtration candidate with a given e-invariant valuation.

    Args:
        nu_e (Val2 | int): ν(e); any value >= 1, or INF, falls in the zero bucket

    Returns:
        EClassify: The unique candidate
    """
    nu_e = Val2(nu_e)
    if nu_e >= 1:
        return EClassify.ZERO_CLASS
    by_valuation = {0: EClassify.FOUR_PH2, -1: EClassify.TWO_PH2, -2: EClassify.PH2}
    if int(nu_e) not in by_valuation:
        raise ParameterError(f"No candidate class has e-invariant valuation {nu_e}")
    return by_valuation[int(nu_e)]


def cp_bottom_is_eta(n):
    """Whether the bottom two cells of Σ^(-2n) CP^(n+1)_n form Cη."""
    if n < 1:
        raise ParameterError(f"n must be at least 1, got {n}")
    bottom = cp_cell_diagram(n, n + 1)
    return any(e.lower == 0 and e.upper == 2 and e.label == ETA for e in bottom.edges)


@dataclass(frozen=True)
class AHSSHypotheses:
    single_top_cell: bool
    no_cell_below_top: bool
    bottom_is_eta: bool
    ko_injective: str = KO_INJECTIVITY_CITATION

    @property
    def ok(self):
        return self.single_top_cell and self.no_cell_below_top and self.bottom_is_eta


def check_hypotheses(desc, top_dim, bottom_n):
    """
    Checks the structural hypotheses of the criterion on a cell diagram.

    Args:
        desc (CellComplexDesc): The (shifted) cell diagram
        top_dim (int): 4m, the dimension of the top cell
        bottom_n (int): Bottom index n of the stunted projective skeleton

    Returns:
        AHSSHypotheses: One flag per hypothesis, ko-injectivity carried as a citation
    """
    cells = list(desc.cells)
    return AHSSHypotheses(
        single_top_cell=cells.count(top_dim) == 1 and max(cells) == top_dim,
        no_cell_below_top=top_dim - 1 not in cells,
        bottom_is_eta=cp_bottom_is_eta(bottom_n),
    )


def _require_hypotheses(desc, top_dim, bottom_n, k):
    hypotheses = check_hypotheses(desc, top_dim, bottom_n)
    if not hypotheses.ok:
        raise VerificationError(f"Criterion hypotheses fail for k={k}", {"k": k, "hypotheses": repr(hypotheses)})


def second_lock(k):
    """
    Runs the (8k-1)-cell pipeline on Z: simple Chern solution, realification,
    then the criterion with l = 4k-1 and m = 2k.

    Args:
        k (int): k >= 1

    Returns:
        AHSSVerdict: A differential with exponent 4k-1 into dimension 8k-1
    """
    if k < 1:
        raise ParameterError(f"second_lock needs k >= 1, got {k}")
    _require_hypotheses(z_cell_diagram(k), 8 * k, 4 * k + 1, k)
    kclass, _ = solve_simple_chern(k)
    ch = realify_complexify(ch_of_kclass(kclass, 4 * k))
    verdict = decide(4 * k - 1, val2(ch[4 * k]), 2 * k)
    if verdict.is_permanent or verdict.target_dim != 8 * k - 1:
        raise VerificationError(f"Second lock did not produce a differential for k={k}", {"k": k})
    LOGGER.debug("Second lock k=%d: 2d=%s", k, rat_to_str(ch[4 * k]))
    return verdict


def first_lock(k, e_unit=1):
    """
    Runs the (8k-5)-cell pipeline on Z(k) through the α_k class.

    For even k the corrected Chern character is constant and 2^(4k-4-ν(k))
    survives. For odd k, ν(d) = 0 < ι(2k-1) gives a differential whose
    target the e-invariant identifies as {P^(k-1)h_1^3}.

    Args:
        k (int): k >= 2
        e_unit (Fraction): Unit in the Chern character of the η³-cone class

    Returns:
        AHSSVerdict: PermanentCycle for even k, a classified differential for odd k
    """
    if k < 2:
        raise ParameterError(f"first_lock needs k >= 2, got {k}")
    _require_hypotheses(zk_cell_diagram(k), 8 * k - 4, 4 * k + 1, k)
    alpha = build_alpha(k, e_unit)
    exponent = 4 * k - 4 - int(val2(k))
    nu_d = val2(alpha[4 * k - 2])
    verdict = decide(exponent, nu_d, 2 * k - 1)

    if k % 2 == 0:
        if not verdict.is_permanent:
            raise VerificationError(f"Even k={k} first lock is not a permanent cycle", {"k": k})
        return verdict

    if verdict.is_permanent:
        raise VerificationError(f"Odd k={k} first lock has no differential", {"k": k})
    target = e_classify(nu_d)
    if target is not EClassify.FOUR_PH2:
        raise VerificationError(f"Odd k={k} first lock classifies as {target.name}", {"k": k})
    return AHSSVerdict(AHSSVerdict.DIFFERENTIAL, exponent, verdict.target_dim, target.class_name)
