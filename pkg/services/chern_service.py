"""
K-theory classes on the stunted projective Thom spectra Z and Z(k) and their
Chern characters.

A class U_K * sum a_i w^i has Chern character
((e^x - 1)/x)^(4k+1) * sum a_i (e^x - 1)^i, computed here through
(e^x - 1)^n = n! sum_j S(j, n) x^j / j!.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from services.steenrod_service import zk_middle_structure, ZkMiddle
from services.valuation_service import bm_series
from utils.errors import ParameterError, VerificationError
from utils.exactarith import (
    exp_minus_one_power_coeff,
    is_two_integral,
    rat_to_str,
    val2,
)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class KClass:
    """U_K * sum a_i w^i in k^0 of the Thom spectrum of (4k+1)(L-1)."""

    k: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(a) for a in self.coeffs))

    def is_integral(self):
        return all(is_two_integral(a) for a in self.coeffs)


@dataclass(frozen=True)
class ChernVector:
    """Rational Chern character over the basis U_H x^j, j = 0..top."""

    k: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_terms(cls, k, terms, top):
        """Builds a vector from a {degree: coefficient} mapping."""
        coeffs = [Fraction(0)] * (top + 1)
        for j, c in terms.items():
            if j > top:
                raise ParameterError(f"x^{j} lies above the top cell x^{top}")
            coeffs[j] += Fraction(c)
        return cls(k, tuple(coeffs))

    @property
    def top(self):
        return len(self.coeffs) - 1

    def __getitem__(self, j):
        return self.coeffs[j]

    def support(self):
        return [j for j, c in enumerate(self.coeffs) if c]

    def _check_same_shape(self, other):
        if len(other.coeffs) != len(self.coeffs):
            raise ParameterError("Chern vectors live on different skeleta")

    def __add__(self, other):
        self._check_same_shape(other)
        return ChernVector(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check_same_shape(other)
        return ChernVector(self.k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, factor):
        factor = Fraction(factor)
        return ChernVector(self.k, tuple(c * factor for c in self.coeffs))

    def to_dict(self):
        return {str(j): rat_to_str(c) for j, c in enumerate(self.coeffs) if c}


def ch_of_kclass(kc, order):
    """
    Computes the Chern character of U_K * sum a_i w^i.

    Args:
        kc (KClass): The class
        order (int): Top x-degree kept (the ambient top cell)

    Returns:
        ChernVector: ((e^x-1)/x)^(4k+1) * sum a_i (e^x-1)^i truncated at x^order
    """
    if order < 0:
        raise ParameterError(f"order must be non-negative, got {order}")
    shift = 4 * kc.k + 1
    out = []
    for j in range(order + 1):
        total = Fraction(0)
        for i, a in enumerate(kc.coeffs[: j + 1]):
            if a:
                total += a * exp_minus_one_power_coeff(shift + i, shift + j)
        out.append(total)
    return ChernVector(kc.k, tuple(out))


def psi3(ch):
    """Adams operation on Chern characters: the x^r coefficient is scaled by 3^r."""
    return ChernVector(ch.k, tuple(c * 3 ** r for r, c in enumerate(ch.coeffs)))


def conjugate(ch):
    """Complex conjugation on Chern characters: the x^r coefficient is scaled by (-1)^r."""
    return ChernVector(ch.k, tuple(-c if r % 2 else c for r, c in enumerate(ch.coeffs)))


def realify_complexify(ch, allow_odd=False):
    """
    Computes ch(c(r(phi))) = ch(phi) + ch(conjugate phi).

    On even x-degrees this doubles every coefficient; odd-degree
    coefficients cancel.

    Args:
        ch (ChernVector): ch(phi)
        allow_odd (bool): Accept odd-degree support instead of rejecting it

    Returns:
        ChernVector: Chern character of the complexified realification
    """
    odd = [j for j in ch.support() if j % 2]
    if odd and not allow_odd:
        raise ParameterError(f"Realification doubling needs even support, found x^{odd[0]}")
    return ch + conjugate(ch)


def ko_sphere_chern_factor(dim):
    """ch o c on ko^0(S^dim), dim = 4m: multiplication by 1 for m even and 2 for m odd."""
    if dim % 4:
        raise ParameterError(f"Only spheres of dimension divisible by 4 are used, got {dim}")
    return 1 if dim % 8 == 0 else 2


def solve_simple_chern(k):
    """
    Finds phi on Z = Thom(CP^4k; (4k+1)(L-1)) with ch(phi) = 2^(4k-2) + d x^(4k).

    The coefficients are a_i = 2^(4k-2) b_i for i < 4k, and d is fixed by
    exact cancellation of the z^(4k) coefficient, d = -2^(4k-2) b_{4k}.

    Args:
        k (int): k >= 1

    Returns:
        tuple: (KClass, d)
    """
    if k < 1:
        raise ParameterError(f"solve_simple_chern needs k >= 1, got {k}")
    top = 4 * k
    lead = Fraction(2) ** (4 * k - 2)
    b = bm_series(k)
    kc = KClass(k, tuple(lead * b[i] for i in range(top)))
    if not kc.is_integral():
        bad = next(i for i, a in enumerate(kc.coeffs) if not is_two_integral(a))
        raise VerificationError(
            f"a_{bad} is not 2-locally integral for k={k}",
            {"k": k, "index": bad, "a": rat_to_str(kc.coeffs[bad])},
        )

    ch = ch_of_kclass(kc, top)
    if ch[0] != lead or any(ch[j] for j in range(1, top)):
        raise VerificationError(
            f"Chern character of the solved class is not simple for k={k}",
            {"k": k, "support": ch.support()},
        )
    d = ch[top]
    if d != -lead * b[top]:
        raise VerificationError(f"Residual d disagrees with -2^(4k-2) b_4k for k={k}",
                                {"k": k, "d": rat_to_str(d)})
    if val2(d) != -2:
        raise VerificationError(f"nu(d) = {val2(d)} instead of -2 for k={k}",
                                {"k": k, "d": rat_to_str(d)})
    LOGGER.debug("Simple Chern solution for k=%d: d=%s", k, rat_to_str(d))
    return kc, d


@dataclass(frozen=True)
class GammaSolution:
    kclass: KClass
    chern: ChernVector
    c8k8: Fraction
    c8k6: Fraction
    c8k4: Fraction


def gamma_closed_forms(k):
    """
    The closed forms of the three residual coefficients of ch(gamma).

    Signs follow the exact series residual (the negation of the printed forms).
    """
    lead = Fraction(2) ** (4 * k - 5 - int(val2(k)))
    b = bm_series(k)
    c8k8 = -lead * b[4 * k - 4]
    c8k6 = -lead * (b[4 * k - 3] + Fraction(8 * k - 3, 2) * b[4 * k - 4])
    c8k4 = -lead * (
        Fraction((8 * k - 3) * (3 * k - 1), 3) * b[4 * k - 4]
        + (4 * k - 1) * b[4 * k - 3]
        + b[4 * k - 2]
    )
    return c8k8, c8k6, c8k4


def solve_gamma(k):
    """
    Builds gamma on Z^(8k-4) with ch(gamma) = 2^(4k-5-nu(k)) + c x^(4k-4) + c' x^(4k-3) + c'' x^(4k-2).

    Args:
        k (int): k >= 2

    Returns:
        GammaSolution: The class, its Chern character and c_{8k-8}, c_{8k-6}, c_{8k-4}
    """
    if k < 2:
        if k == 1:
            LOGGER.warning("solve_gamma: k=1 has an empty coefficient range and a non-integral constant")
        raise ParameterError(f"solve_gamma needs k >= 2, got {k}")
    top = 4 * k - 2
    lead = Fraction(2) ** (4 * k - 5 - int(val2(k)))
    b = bm_series(k)
    kc = KClass(k, tuple(lead * b[i] for i in range(4 * k - 4)))
    if not kc.is_integral():
        raise VerificationError(f"gamma coefficients are not 2-locally integral for k={k}", {"k": k})

    ch = ch_of_kclass(kc, top)
    expected_support = {0, 4 * k - 4, 4 * k - 3, 4 * k - 2}
    if ch[0] != lead or not set(ch.support()) <= expected_support:
        raise VerificationError(f"ch(gamma) has unexpected support for k={k}",
                                {"k": k, "support": ch.support()})
    c8k8, c8k6, c8k4 = ch[4 * k - 4], ch[4 * k - 3], ch[4 * k - 2]

    if val2(c8k8) != -1:
        raise VerificationError(f"nu(c_(8k-8)) = {val2(c8k8)} instead of -1 for k={k}",
                                {"k": k, "c8k8": rat_to_str(c8k8)})
    if val2(c8k4) < 0:
        raise VerificationError(f"nu(c_(8k-4)) = {val2(c8k4)} is negative for k={k}",
                                {"k": k, "c8k4": rat_to_str(c8k4)})
    if (c8k8, c8k6, c8k4) != gamma_closed_forms(k):
        raise VerificationError(f"Closed forms disagree with the series residual for k={k}", {"k": k})
    return GammaSolution(kc, ch, c8k8, c8k6, c8k4)


def build_alpha(k, e_unit=1):
    """
    Corrects the realification of gamma on Z(k) to the alpha_k class.

    For even k the middle of Z(k) splits as S^(8k-4) v S^(8k-8) and the
    correction leaves the constant 2^(4k-4-nu(k)) alone. For odd k the middle
    is an eta^3 cone, and a top coefficient d with nu(d) = 0 remains.

    Args:
        k (int): k >= 2
        e_unit (Fraction): 2-adic unit in ch(c(phi_3)) = x^(4k-4) + e x^(4k-2)

    Returns:
        ChernVector: ch(c(alpha_k))
    """
    e_unit = Fraction(e_unit)
    if val2(e_unit) != 0:
        raise ParameterError(f"e_unit must be a 2-adic unit, got {rat_to_str(e_unit)}")
    gamma = solve_gamma(k)
    top = gamma.chern.top
    low, high = 4 * k - 4, 4 * k - 2
    alpha = realify_complexify(gamma.chern, allow_odd=True)

    for coeff, name in ((2 * gamma.c8k8, "2c_(8k-8)"), (gamma.c8k4, "c_(8k-4)")):
        if not is_two_integral(coeff):
            raise VerificationError(f"{name} is not 2-locally integral for k={k}", {"k": k})

    if zk_middle_structure(k) is ZkMiddle.SPLIT:
        phi1 = ChernVector.from_terms(k, {low: ko_sphere_chern_factor(2 * low)}, top)
        phi2 = ChernVector.from_terms(k, {high: ko_sphere_chern_factor(2 * high)}, top)
        alpha = alpha - phi1.scale(2 * gamma.c8k8) - phi2.scale(gamma.c8k4)
        if alpha.support() != [0]:
            raise VerificationError(f"Even-k alpha has non-constant terms for k={k}",
                                    {"k": k, "support": alpha.support()})
    else:
        phi3 = ChernVector.from_terms(k, {low: 1, high: e_unit}, top)
        alpha = alpha - phi3.scale(2 * gamma.c8k8)
        if val2(alpha[high]) != 0:
            raise VerificationError(f"Odd-k alpha has nu(d) = {val2(alpha[high])} for k={k}",
                                    {"k": k, "d": rat_to_str(alpha[high])})

    expected = Fraction(2) ** (4 * k - 4 - int(val2(k)))
    if alpha[0] != expected:
        raise VerificationError(f"alpha constant is {rat_to_str(alpha[0])}, expected {expected}", {"k": k})
    return alpha
