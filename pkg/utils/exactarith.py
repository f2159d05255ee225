"""
Exact rational arithmetic, 2-adic valuations and truncated power series.

Every coefficient is a fractions.Fraction; no floating point enters any
computation path.
"""
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import factorial, lcm

from sympy.utilities.iterables import partitions

from utils.errors import ParameterError


@total_ordering
class Val2:
    """
    A 2-adic valuation: either an integer or the distinguished INF.

    Instances compare and hash like the integers they hold, so
    ``val2(12) == 2`` reads naturally; INF compares above every integer.
    """

    __slots__ = ("_finite",)

    def __init__(self, value):
        if isinstance(value, Val2):
            self._finite = value._finite
            return
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"Val2 needs an int, got {type(value).__name__}")
        self._finite = value

    @classmethod
    def _infinity(cls):
        inf = object.__new__(cls)
        inf._finite = None
        return inf

    @property
    def is_inf(self):
        return self._finite is None

    def _key(self):
        return (1, 0) if self._finite is None else (0, self._finite)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Val2):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Val2(other)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash("inf") if self._finite is None else hash(self._finite)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_inf or other.is_inf:
            return INF
        return Val2(self._finite + other._finite)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Val2) and other.is_inf:
            raise ParameterError("Cannot subtract an infinite valuation")
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_inf:
            return INF
        return Val2(self._finite - other._finite)

    def __int__(self):
        if self._finite is None:
            raise ValueError("INF has no integer value")
        return self._finite

    def __repr__(self):
        return f"Val2({self})"

    def __str__(self):
        return "inf" if self._finite is None else str(self._finite)

    def to_json(self):
        return "inf" if self._finite is None else self._finite


INF = Val2._infinity()


def _int_val2(n):
    return ((n & -n).bit_length() - 1) if n else None


def val2(r):
    """
    Computes the 2-adic valuation of a rational number.

    Args:
        r (Fraction | int): The rational to evaluate

    Returns:
        Val2: nu(numerator) - nu(denominator), or INF for zero
    """
    r = Fraction(r)
    if r == 0:
        return INF
    return Val2(_int_val2(r.numerator) - _int_val2(r.denominator))


def rat_to_str(r):
    """Serializes a rational as "p/q", or "p" when the denominator is 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def is_two_integral(r):
    return val2(r) >= 0


@dataclass(frozen=True)
class TruncSeries:
    """
    A power series truncated after the z^order term.

    Binary operations truncate to the smaller order of the two operands.
    """

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ParameterError(f"Series order must be non-negative, got {self.order}")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise ParameterError(
                f"Series of order {self.order} needs {self.order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs, order=None):
        """Builds a series, zero-padding or cutting ``coeffs`` to ``order``."""
        coeffs = list(coeffs)
        if order is None:
            order = max(len(coeffs) - 1, 0)
        coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        return cls(order, tuple(coeffs))

    @classmethod
    def constant(cls, c, order):
        return cls.from_coeffs([c], order)

    @classmethod
    def one(cls, order):
        return cls.constant(1, order)

    @classmethod
    def variable(cls, order):
        return cls.from_coeffs([0, 1], order)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise ParameterError(f"Cannot raise truncation order {self.order} to {order}")
        return TruncSeries(order, self.coeffs[: order + 1])

    def is_zero(self):
        return not any(self.coeffs)

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c]

    def __neg__(self):
        return TruncSeries(self.order, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(other, self.order)
        order = min(self.order, other.order)
        return TruncSeries(order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return _mul_series(self, other)
        scalar = Fraction(other)
        return TruncSeries(self.order, tuple(c * scalar for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ParameterError(f"Series power needs a non-negative int, got {exponent!r}")
        result = TruncSeries.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def compose(self, inner):
        return series_compose_subst(self, inner)


def _common_numerators(coeffs):
    den = lcm(*(c.denominator for c in coeffs))
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _mul_series(a, b):
    order = min(a.order, b.order)
    num_a, den_a = _common_numerators(a.coeffs[: order + 1])
    num_b, den_b = _common_numerators(b.coeffs[: order + 1])
    den = den_a * den_b
    out = []
    for m in range(order + 1):
        total = sum(map(operator.mul, num_a[: m + 1], reversed(num_b[: m + 1])))
        out.append(Fraction(total, den))
    return TruncSeries(order, tuple(out))


def exp_minus_one(order):
    """e^x - 1 truncated after x^order."""
    return TruncSeries.from_coeffs(
        [0] + [Fraction(1, factorial(n)) for n in range(1, order + 1)], order
    )


def exp_minus_one_over_x(order):
    """(e^x - 1)/x truncated after x^order."""
    return TruncSeries.from_coeffs([Fraction(1, factorial(n + 1)) for n in range(order + 1)], order)


def log1p(order):
    """ln(1 + z) truncated after z^order."""
    return TruncSeries.from_coeffs(
        [0] + [Fraction((-1) ** (n + 1), n) for n in range(1, order + 1)], order
    )


def log1p_over_z(order):
    """ln(1 + z)/z = 1 - z/2 + z^2/3 - ... truncated after z^order."""
    return TruncSeries.from_coeffs([Fraction((-1) ** n, n + 1) for n in range(order + 1)], order)


@lru_cache(maxsize=256)
def log1p_over_z_pow(k, order):
    """
    Computes (ln(1+z)/z)^(4k+1) truncated after z^order.

    The coefficient at index m is b_m. Exponentiation is by repeated
    squaring on truncated series.

    Args:
        k (int): Non-negative index; the exponent is 4k+1
        order (int): Truncation order

    Returns:
        TruncSeries: The truncated power
    """
    if k < 0:
        raise ParameterError(f"k must be non-negative, got {k}")
    if order < 0:
        raise ParameterError(f"order must be non-negative, got {order}")
    return log1p_over_z(order) ** (4 * k + 1)


def series_compose_subst(f, g):
    """
    Substitutes g into f, f(g(x)), truncated to the smaller order.

    Args:
        f (TruncSeries): Outer series
        g (TruncSeries): Inner series, must have zero constant term

    Returns:
        TruncSeries: The composition
    """
    if g[0] != 0:
        raise ParameterError(f"Substitution needs g(0) = 0, got g(0) = {rat_to_str(g[0])}")
    n = min(f.order, g.order)
    # Horner; at step i only terms up to x^(n-i) can still reach x^n
    acc = TruncSeries.constant(f[n], 0)
    for i in range(n - 1, -1, -1):
        width = n - i
        widened = TruncSeries(width, acc.coeffs + (Fraction(0),))
        acc = widened * g.truncate(width) + f[i]
    return acc


_STIRLING2_ROWS = [(1,)]


def stirling2_row(n):
    """Row n of the Stirling numbers of the second kind, (S(n, 0), ..., S(n, n))."""
    while len(_STIRLING2_ROWS) <= n:
        prev = _STIRLING2_ROWS[-1]
        width = len(prev)
        row = [0] * (width + 1)
        for j in range(1, width + 1):
            row[j] = j * (prev[j] if j < width else 0) + prev[j - 1]
        _STIRLING2_ROWS.append(tuple(row))
    return _STIRLING2_ROWS[n]


def exp_minus_one_power_coeff(n, j):
    """Coefficient of x^j in (e^x - 1)^n, that is n! S(j, n) / j!."""
    if j < n:
        return Fraction(0)
    return Fraction(factorial(n) * stirling2_row(j)[n], factorial(j))


def bm_multinomial_oracle(k, m):
    """
    Computes b_m independently of the series code, as a signed multinomial sum.

    Each partition of m into parts i >= 1 with multiplicities c_i (and
    c_0 = 4k+1 - sum c_i) contributes
    (-1)^(c_1 + c_3 + ...) * multinomial(4k+1; c_0, c_1, ...) * prod (i+1)^(-c_i).

    Args:
        k (int): Index with exponent 4k+1
        m (int): Coefficient index, 0 <= m <= 4k

    Returns:
        Fraction: The exact value of b_m
    """
    if m < 0 or m > 4 * k:
        raise ParameterError(f"Oracle needs 0 <= m <= 4k, got k={k}, m={m}")
    n = 4 * k + 1
    total = Fraction(0)
    for parts in partitions(m, m=n):
        used = sum(parts.values())
        multinomial = factorial(n) // factorial(n - used)
        weight = Fraction(1)
        sign = 1
        for i, c in parts.items():
            multinomial //= factorial(c)
            weight /= (i + 1) ** c
            if i % 2 == 1 and c % 2 == 1:
                sign = -sign
        total += sign * multinomial * weight
    return total
