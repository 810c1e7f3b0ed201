"""Exact rationals, p-adic splitting, and base-p digit machinery.

All arithmetic here is exact: rationals are `fractions.Fraction` (arbitrary
precision, always stored reduced) and floors, fractional parts, and digits
come from integer division.  No floating point appears anywhere in the
package; the identities downstream distinguish values that differ by
1/(b * p^n), where rounding would be fatal.

Rationals render as "a/b" in lowest terms ("a" when the denominator is 1)
on every CLI, CSV, and JSON surface; see `format_rational`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction


def format_rational(q: Rational | int) -> str:
    """Render q as "a/b" in lowest terms, or just "a" when q is integral."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic trial division.  Inputs in this package are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/mZ)^*.  The trivial group (m = 1) gives 1."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    order = 1
    x = a % m
    while x != 1 % m:
        x = x * a % m
        order += 1
    return order


def frac_part(q: Rational | int) -> Fraction:
    """{q} = q - floor(q), exactly."""
    q = Fraction(q)
    return q - math.floor(q)


@dataclass(frozen=True)
class PAdicForm:
    """Splitting x = p^v * num/den with num and den coprime positive
    integers, neither divisible by p."""

    p: int
    v: int
    num: int
    den: int

    def value(self) -> Fraction:
        """Reassemble the rational this form was split from."""
        if self.v >= 0:
            return Fraction(self.num * self.p**self.v, self.den)
        return Fraction(self.num, self.den * self.p**-self.v)


def p_adic_decompose(x: Rational | int, p: int) -> PAdicForm:
    """Split positive x as p^v * num/den, pulling every factor of p into v."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return PAdicForm(p=p, v=v, num=num, den=den)


def digit(x: Rational | int, p: int, k: int) -> int:
    """The base-p digit of x at position k: floor(x / p^k) reduced mod p.

    Positions left of the radix point are k >= 0, fractional digits sit at
    k = -1, -2, ...  Positions beyond the leading digit give 0.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    a, b = x.numerator, x.denominator
    if k >= 0:
        return a // (b * p**k) % p
    return a * p**-k // b % p


@dataclass(frozen=True)
class BasePExpansion:
    """Base-p digits of a positive rational.

    integer_digits are least significant first.  The fractional digits are
    the preperiod (positions -1 .. -delay) followed by period_digits
    repeating forever.  Both the delay and the period length are minimal:
    the period length is the multiplicative order of p modulo the
    prime-to-p denominator, the delay is max(0, -v_p(x)).
    """

    p: int
    integer_digits: tuple[int, ...]
    preperiod_digits: tuple[int, ...]
    period_digits: tuple[int, ...]

    @property
    def delay(self) -> int:
        return len(self.preperiod_digits)

    @property
    def period_length(self) -> int:
        return len(self.period_digits)

    @property
    def digit_average(self) -> Fraction:
        """Average of the repeating digits."""
        return Fraction(sum(self.period_digits), len(self.period_digits))

    def value(self) -> Fraction:
        """Reassemble the rational: integer part, preperiod, then the
        repeating block summed as a geometric series."""
        p = self.p
        total = Fraction(0)
        for j, dig in enumerate(self.integer_digits):
            total += dig * Fraction(p) ** j
        for j, dig in enumerate(self.preperiod_digits, start=1):
            total += Fraction(dig, p**j)
        block = 0
        for dig in self.period_digits:
            block = block * p + dig
        length = len(self.period_digits)
        total += Fraction(block, p**self.delay * (p**length - 1))
        return total


def expand(x: Rational | int, p: int) -> BasePExpansion:
    """Digit expansion of x > 0 in base p.

    Fractional digits come from long division, so the cost is the delay
    plus one period of small divmod steps.
    """
    form = p_adic_decompose(x, p)  # validates x and p
    x = Fraction(x)
    delay = max(0, -form.v)
    period = multiplicative_order(p, form.den)
    ipart, rem = divmod(x.numerator, x.denominator)
    int_digits = []
    while ipart > 0:
        ipart, low = divmod(ipart, p)
        int_digits.append(low)
    b = x.denominator
    frac_digits = []
    for _ in range(delay + period):
        dig, rem = divmod(rem * p, b)
        frac_digits.append(dig)
    return BasePExpansion(
        p=p,
        integer_digits=tuple(int_digits),
        preperiod_digits=tuple(frac_digits[:delay]),
        period_digits=tuple(frac_digits[delay:]),
    )


def frac_part_pn(x: Rational | int, p: int, n: int) -> Fraction:
    """{x * p^n}.  Periodic in n once n clears the delay of x, with period
    equal to the digit period and average digit_average/(p-1)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    return frac_part(x * p**n)


def floor_pn_mod(x: Rational | int, p: int, n: int, m: int) -> int:
    """floor(x * p^n) mod m, exactly.

    Periodic in n with the digit period of x: from the delay on when m
    divides the prime-to-p numerator of x, and one step later for m = p.
    """
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    return x.numerator * p**n // x.denominator % m
