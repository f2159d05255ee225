"""
Mahowald line 𝔏 of the Thom spectra X(m), the staircase combinatorics around it,
and its translation into Furuta-Mahowald existence, Mahowald-invariant degrees
and spin geography bounds.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from services.steenrod_service import cell_exists
from utils.errors import ParameterError, VerificationError
from utils.exactarith import INF, Val2

LOGGER = logging.getLogger(__name__)

_TAU = (0, 0, 1, 1, 1, 2, 2, 2)

_LINE_BASE = {0: -1, 1: -1, 2: -1, 3: 0}
# 𝔏(16k + r) - 16k for r = 4..19, valid for every k >= 0
_LINE_ROWS = {
    4: 0, 5: 0, 6: 1, 7: 1, 8: 1, 9: 2, 10: 2, 11: 6,
    12: 8, 13: 8, 14: 9, 15: 9, 16: 9, 17: 10, 18: 10, 19: 10,
}
# minimal H-degree of the Mahowald invariant at q = 16k + r, minus 8k, for r = 1..16
_MINV_ROWS = (-1, -1, -1, 1, 1, 2, 2, 2, 3, 3, 4, 5, 5, 6, 6, 6)

EXCEPTIONAL_FORMS = {(0, 0): "S⁴", (0, 1): "S²×S²", (1, 3): "K3"}


def tau(r):
    """
    Staircase offset of the lower bound.

    Args:
        r (int): 0 <= r <= 7

    Returns:
        int: 0 for r = 0,1; 1 for r = 2,3,4; 2 for r = 5,6,7
    """
    if not 0 <= r <= 7:
        raise ParameterError(f"τ is defined on 0..7, got {r}")
    return _TAU[r]


def mahowald_lower_bound(m):
    """The staircase lower bound 8k + τ(r) at m = 8k + 4 + r."""
    if m < 4:
        raise ParameterError(f"The staircase bound starts at m = 4, got {m}")
    k, r = divmod(m - 4, 8)
    return 8 * k + tau(r)


def h0(m):
    """The first cell above the lower-bound line: 8k + τ(r) + 1 at m = 4 + 8k + r."""
    return mahowald_lower_bound(m) + 1


def h_walk(m, n, l):
    """
    Walks the l-cell of X(m) to the right down to X(n), dropping one cell at
    every empty cell met on the way.

    Args:
        m (int): Starting column
        n (int): Final column, 0 <= n < m
        l (int | Val2): Starting cell, or INF

    Returns:
        int | Val2: The cell reached; INF stays INF
    """
    if not m > n >= 0:
        raise ParameterError(f"h_walk needs m > n >= 0, got m={m}, n={n}")
    if isinstance(l, Val2) and l.is_inf:
        return INF
    l = int(l)
    for j in range(m, n, -1):
        if (l + j) % 4 in (0, 3):
            l -= 1
    return l


def _closed_form(m):
    if m in _LINE_BASE:
        return _LINE_BASE[m]
    if m % 8 == 3:
        k = (m - 3) // 8
        return 8 * k - 2 if k % 2 else 8 * k - 6
    return mahowald_lower_bound(m)


@lru_cache(maxsize=4096)
def mahowald_line(m):
    """
    Evaluates 𝔏(m), the largest skeleton of X(m) whose collapse to the sphere is null.

    The closed form is cross-checked against the explicit 16-periodic rows and
    against the cell structure: 𝔏(m) + 1 is a cell of X(m).

    Args:
        m (int): m >= 0

    Returns:
        int: 𝔏(m) >= -1
    """
    if m < 0:
        raise ParameterError(f"m must be non-negative, got {m}")
    value = _closed_form(m)
    if m >= 4:
        k, r = divmod(m - 4, 16)
        explicit = 16 * k + _LINE_ROWS[r + 4]
        if value != explicit:
            raise VerificationError(f"𝔏({m}) closed form {value} disagrees with the explicit row {explicit}",
                                    {"m": m})
    if not cell_exists(m, value + 1):
        raise VerificationError(f"𝔏({m}) + 1 = {value + 1} is not a cell of X({m})", {"m": m})
    return value


@dataclass(frozen=True)
class FMQuery:
    p: int
    q: int
    exists: bool
    route: str = "mahowald_line"


def fm_exists(p, q):
    """
    Decides whether a level-(p, q) Furuta-Mahowald class exists.

    Args:
        p (int): p >= 1
        q (int): q >= 0

    Returns:
        FMQuery: exists iff 4p - 2 - q <= 𝔏(q)
    """
    if p < 1 or q < 0:
        raise ParameterError(f"fm_exists needs p >= 1 and q >= 0, got p={p}, q={q}")
    return FMQuery(p, q, 4 * p - 2 - q <= mahowald_line(q))


def main_theorem_bound(p):
    """
    The minimal q for a level-(p, q) class.

    Args:
        p (int): p >= 2

    Returns:
        int: 2p + 2 (p ≡ 1,2,5,6), 2p + 3 (p ≡ 3,4,7), 2p + 4 (p ≡ 0), residues mod 8
    """
    if p < 2:
        raise ParameterError(f"The main bound needs p >= 2, got {p}")
    residue = p % 8
    if residue in (1, 2, 5, 6):
        return 2 * p + 2
    if residue in (3, 4, 7):
        return 2 * p + 3
    return 2 * p + 4


def minv_degree(q):
    """
    H-degree of the Mahowald invariant of a_R̃^q, the largest p with a level-(p, q) class.

    Asserted against the 16-periodic table.
    """
    if q < 4:
        raise ParameterError(f"minv_degree needs q >= 4, got {q}")
    value = (mahowald_line(q) + q + 2) // 4
    k = (q - 1) // 16
    expected = 8 * k + _MINV_ROWS[q - 16 * k - 1]
    if value != expected:
        raise VerificationError(f"Mahowald-invariant degree {value} at q={q} disagrees with the table ({expected})",
                                {"q": q})
    return value


def historical_bounds(p):
    """
    Necessary lower bounds on q, oldest first, next to the main bound.

    Args:
        p (int): p >= 2

    Returns:
        dict: furuta, furuta_kametani, jones_conjecture and main bounds
    """
    if p < 2:
        raise ParameterError(f"Historical comparison needs p >= 2, got {p}")
    residue = p % 4
    furuta_kametani = {1: 2 * p + 1, 2: 2 * p + 2, 3: 2 * p + 3, 0: 2 * p + 3}[residue]
    jones = {1: 2 * p + 2, 2: 2 * p + 2, 3: 2 * p + 3, 0: 2 * p + 4}[residue]
    return {
        "p": p,
        "furuta": 2 * p + 1,
        "furuta_kametani": furuta_kametani,
        "jones_conjecture": jones,
        "main": main_theorem_bound(p),
    }


def jones_discrepancies(pmax):
    """The p in 2..pmax where the main bound differs from the conjectured one."""
    rows = (historical_bounds(p) for p in range(2, pmax + 1))
    return [row["p"] for row in rows if row["main"] != row["jones_conjecture"]]


class Geography(Enum):
    OBSTRUCTED = "Obstructed"
    NOT_OBSTRUCTED_HERE = "NotObstructedHere"


@dataclass(frozen=True)
class GeographyVerdict:
    p: int
    q: int
    verdict: Geography
    bound: int = None
    rule: str = ""


def spin_geography(p, q):
    """
    Checks 2pE_8 ⊕ qH against the strongest known necessary condition.

    A NOT_OBSTRUCTED_HERE verdict makes no realizability claim.

    Args:
        p (int): p >= 0
        q (int): q >= 0

    Returns:
        GeographyVerdict: Verdict with the bound and the rule that applied
    """
    if p < 0 or q < 0:
        raise ParameterError(f"Form levels must be non-negative, got p={p}, q={q}")
    if (p, q) in EXCEPTIONAL_FORMS:
        return GeographyVerdict(p, q, Geography.NOT_OBSTRUCTED_HERE, None, f"exceptional ({EXCEPTIONAL_FORMS[(p, q)]})")
    if p == 0:
        return GeographyVerdict(p, q, Geography.NOT_OBSTRUCTED_HERE, 0, "no bound for p = 0")
    if p == 1:
        bound, rule = 3, "furuta"
    else:
        bound, rule = main_theorem_bound(p), "main"
    verdict = Geography.NOT_OBSTRUCTED_HERE if q >= bound else Geography.OBSTRUCTED
    return GeographyVerdict(p, q, verdict, bound, rule)


def spin_form_levels(b2, sign):
    """
    Recovers (p, q) from b_2 and the signature of an even form.

    Args:
        b2 (int): Second Betti number
        sign (int): Signature, divisible by 16

    Returns:
        tuple: (p, q) with b_2 = 16p + 2q and |sign| = 16p
    """
    if sign % 16:
        raise ParameterError(f"Spin signatures are divisible by 16, got {sign}")
    p = abs(sign) // 16
    rest = b2 - 16 * p
    if rest < 0 or rest % 2:
        raise ParameterError(f"b2={b2} does not fit a form 2pE8 ⊕ qH with |sign|={abs(sign)}")
    return p, rest // 2


def b2_sign_check(b2, sign, exceptional=False):
    """True iff exceptional or b_2 >= (10/8)|sign| + 4."""
    if b2 < 0:
        raise ParameterError(f"b2 must be non-negative, got {b2}")
    return exceptional or 8 * b2 >= 10 * abs(sign) + 32
