"""
Exact arithmetic in RO(Pin(2)) = Z[D, A, B]/(D^2 - 1, DA - A, DB - B, B^2 - 4(A - 2B))
and in the module generated by γ(D), where (D + 1)γ = 2Aγ = Bγ = 0.
"""
import logging
from dataclasses import dataclass, field

from sympy import Poly, symbols

from utils.errors import ParameterError, VerificationError

LOGGER = logging.getLogger(__name__)

_A = symbols("A")

# opaque Bott-class rewrites: γ(D)^8 b_{8D} = 8(1 - D), b_{8D} b_{-8D} = 1
BOTT_RULES = {
    "gamma8_b8D": "γ(D)^8·b_{8D} = 8(1 - D)",
    "b8D_inverse": "b_{8D}·b_{-8D} = 1",
}


def ro_normalize(terms):
    """
    Rewrites a formal polynomial in D, A, B to normal form.

    Args:
        terms (dict): {(d, a, b): coefficient} for monomials D^d A^a B^b

    Returns:
        ROElem: The element over the basis 1, D, A^a B^b
    """
    pending = dict()
    for (d, a, b), c in terms.items():
        if d < 0 or a < 0 or b < 0:
            raise ParameterError(f"Exponents must be non-negative, got D^{d} A^{a} B^{b}")
        if a or b:
            key = (0, a, b)
        else:
            key = (d % 2, 0, 0)
        pending[key] = pending.get(key, 0) + c

    # B^2 -> 4A - 8B until every B-exponent is at most 1
    stack = [key for key in pending if key[2] >= 2]
    while stack:
        key = stack.pop()
        c = pending.pop(key, 0)
        if not c:
            continue
        _, a, b = key
        for new_key, factor in (((0, a + 1, b - 2), 4), ((0, a, b - 1), -8)):
            pending[new_key] = pending.get(new_key, 0) + factor * c
            if new_key[2] >= 2:
                stack.append(new_key)

    c1 = pending.pop((0, 0, 0), 0)
    cd = pending.pop((1, 0, 0), 0)
    mixed = tuple(sorted(((a, b), c) for (_, a, b), c in pending.items() if c))
    return ROElem(c1, cd, mixed)


@dataclass(frozen=True)
class ROElem:
    """An element c1 + cD·D + sum m_(a,b) A^a B^b in normal form."""

    c1: int = 0
    cD: int = 0
    mixed: tuple = field(default=())

    @classmethod
    def const(cls, n):
        return cls(n, 0, ())

    @classmethod
    def gen(cls, name):
        monomials = {"D": (1, 0, 0), "A": (0, 1, 0), "B": (0, 0, 1)}
        if name not in monomials:
            raise ParameterError(f"Unknown generator: {name}")
        return ro_normalize({monomials[name]: 1})

    def terms(self):
        out = {}
        if self.c1:
            out[(0, 0, 0)] = self.c1
        if self.cD:
            out[(1, 0, 0)] = self.cD
        for (a, b), c in self.mixed:
            out[(0, a, b)] = c
        return out

    def coefficient(self, a, b=0):
        return dict(self.mixed).get((a, b), 0)

    def __add__(self, other):
        if isinstance(other, int):
            other = ROElem.const(other)
        merged = self.terms()
        for key, c in other.terms().items():
            merged[key] = merged.get(key, 0) + c
        return ro_normalize(merged)

    __radd__ = __add__

    def __neg__(self):
        return ro_normalize({key: -c for key, c in self.terms().items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = ROElem.const(other)
        return ro_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        return ro_pow(self, n)

    def __str__(self):
        parts = []
        if self.c1:
            parts.append(str(self.c1))
        if self.cD:
            parts.append(f"{self.cD}D")
        for (a, b), c in self.mixed:
            mono = (f"A^{a}" if a > 1 else "A" if a else "") + ("B" if b else "")
            parts.append(f"{c}{mono}")
        return " + ".join(parts) or "0"


def ro_mul(x, y):
    """Product of two normal forms, renormalized."""
    product = {}
    for (d1, a1, b1), c1 in x.terms().items():
        for (d2, a2, b2), c2 in y.terms().items():
            key = (d1 + d2, a1 + a2, b1 + b2)
            product[key] = product.get(key, 0) + c1 * c2
    return ro_normalize(product)


def ro_pow(x, n):
    if n < 0:
        raise ParameterError(f"RO(Pin(2)) powers need n >= 0, got {n}")
    result = ROElem.const(1)
    base = x
    while n:
        if n & 1:
            result = ro_mul(result, base)
        n >>= 1
        if n:
            base = ro_mul(base, base)
    return result


def _clmul(x, y):
    out = 0
    while y:
        if y & 1:
            out ^= x
        x <<= 1
        y >>= 1
    return out


@dataclass(frozen=True)
class GammaCoeff:
    """
    A coefficient on γ(D): an integer plus an A-polynomial with F_2 coefficients.

    ``a_bits`` has bit a set when A^a (a >= 1) occurs with odd coefficient.
    """

    integer: int = 0
    a_bits: int = 0

    def __post_init__(self):
        if self.a_bits & 1:
            raise ParameterError("The A-part of a γ(D) coefficient has no constant term")

    def __add__(self, other):
        return GammaCoeff(self.integer + other.integer, self.a_bits ^ other.a_bits)

    def __mul__(self, other):
        bits = _clmul(self.a_bits, other.a_bits)
        if self.integer % 2:
            bits ^= other.a_bits
        if other.integer % 2:
            bits ^= self.a_bits
        return GammaCoeff(self.integer * other.integer, bits)

    def __pow__(self, n):
        result = GammaCoeff(1)
        for _ in range(n):
            result = result * self
        return result

    def a_powers(self):
        return [a for a in range(self.a_bits.bit_length()) if self.a_bits >> a & 1]

    def __str__(self):
        parts = [f"A^{a}" if a > 1 else "A" for a in self.a_powers()]
        if self.integer or not parts:
            parts.append(str(self.integer))
        return " + ".join(parts)


def gamma_reduce(x):
    """
    Acts with x on γ(D): D -> -1, B -> 0, and A-multiples are 2-torsion.

    Example: A - 2B - 2D + 2 reduces to A + 4.
    """
    bits = 0
    for (a, b), c in x.mixed:
        if b == 0 and c % 2:
            bits ^= 1 << a
    return GammaCoeff(x.c1 - x.cD, bits)


@dataclass(frozen=True)
class EulerExpr:
    """coefficient · (b_{-8D})^bott_power · γ(D)^gamma_power, with the chain that produced it."""

    gamma_power: int
    bott_power: int
    coefficient: GammaCoeff
    steps: tuple = field(default=())


def euler_reduce(k):
    """
    Reduces γ(D)^(8k+2) against k Bott classes.

    γ^(8k+2) = (γ^8 b_{8D})^k (b_{-8D})^k γ^2 = 8^k (1-D)^k (b_{-8D})^k γ^2
             = 2^(3k) 2^k (b_{-8D})^k γ^2

    Args:
        k (int): k >= 0

    Returns:
        EulerExpr: Coefficient 2^(4k) on (b_{-8D})^k γ(D)^2
    """
    if k < 0:
        raise ParameterError(f"k must be non-negative, got {k}")
    one_minus_d = ROElem.const(1) - ROElem.gen("D")
    steps = [f"γ(D)^{8 * k + 2}"]
    if k == 0:
        return EulerExpr(2, 0, GammaCoeff(1), tuple(steps))

    steps.append(f"(γ(D)^8·b_{{8D}})^{k}·(b_{{-8D}})^{k}·γ(D)^2")
    steps.append(f"8^{k}·(1 - D)^{k}·(b_{{-8D}})^{k}·γ(D)^2")

    power = ro_pow(one_minus_d, k)
    if power != ro_mul(ROElem.const(2 ** (k - 1)), one_minus_d):
        raise VerificationError(f"(1 - D)^{k} is not 2^{k - 1}(1 - D)", {"k": k, "value": str(power)})
    steps.append(f"8^{k}·2^{k - 1}·(1 - D)·(b_{{-8D}})^{k}·γ(D)^2")

    coefficient = gamma_reduce(ro_mul(ROElem.const(8 ** k), power))
    steps.append(f"{coefficient}·(b_{{-8D}})^{k}·γ(D)^2")
    if coefficient != GammaCoeff(2 ** (4 * k)):
        raise VerificationError(f"Euler reduction gives {coefficient}, expected 2^{4 * k}", {"k": k})
    LOGGER.debug("Euler reduction for k=%d: %s", k, " = ".join(steps))
    return EulerExpr(2, k, coefficient, tuple(steps))


@dataclass(frozen=True)
class Mod2AResult:
    feasible: bool
    witness_index: int = None
    P: tuple = None


def _a_plus_4_power(k):
    return [int(c) for c in reversed(Poly((_A + 4) ** (2 * k), _A).all_coeffs())]


def mod2A_feasible(k, deg_p=None):
    """
    Decides whether some P(A) of degree <= deg_p has (A+4)^(2k) P(A) ≡ 2^(4k) (mod 2A).

    The A^0 coefficient fixes p_0 over Z; the coefficients of A^i, i >= 1,
    must be even, a linear system over F_2 in p_1..p_deg solved row by row.

    Args:
        k (int): k >= 0
        deg_p (int): Degree bound on P, defaults to 4k + 8

    Returns:
        Mod2AResult: feasible with a solution P, or infeasible with the first inconsistent A-power
    """
    if k < 0:
        raise ParameterError(f"k must be non-negative, got {k}")
    if deg_p is None:
        deg_p = 4 * k + 8
    if deg_p < 0:
        raise ParameterError(f"Degree bound must be non-negative, got {deg_p}")

    e = _a_plus_4_power(k)
    target = 2 ** (4 * k)
    if target % e[0]:
        return Mod2AResult(False, 0)
    p0 = target // e[0]
    parity = [c % 2 for c in e]

    pivots = {}
    for i in range(1, len(e) + deg_p):
        # row i: sum_j e_(i-j) p_j ≡ 0, with p_0 moved to the right-hand side
        mask = 0
        for j in range(1, min(i, deg_p) + 1):
            if i - j < len(e) and parity[i - j]:
                mask |= 1 << j
        rhs = (p0 * parity[i]) % 2 if i < len(e) else 0
        while mask:
            top = mask.bit_length() - 1
            if top not in pivots:
                break
            row_mask, row_rhs = pivots[top]
            mask ^= row_mask
            rhs ^= row_rhs
        if mask:
            pivots[mask.bit_length() - 1] = (mask, rhs)
        elif rhs:
            LOGGER.debug("mod 2A system for k=%d inconsistent at A^%d", k, i)
            return Mod2AResult(False, i)

    values = [0] * (deg_p + 1)
    values[0] = p0
    for top in sorted(pivots):
        mask, rhs = pivots[top]
        acc = rhs
        for j in range(1, top):
            if mask >> j & 1:
                acc ^= values[j]
        values[top] = acc
    while len(values) > 1 and not values[-1]:
        values.pop()
    return Mod2AResult(True, None, tuple(values))
