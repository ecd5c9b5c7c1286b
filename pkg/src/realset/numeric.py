"""Exact rational arithmetic and base-r positional encodings.

Rationals are plain ``fractions.Fraction`` values.  A real number is written
most-significant-digit first as ``<integer digits> ⋆ <fractional digits>``.
The leading digit is a sign digit: 0 for nonnegative integer parts, r-1 for
negative ones (r's complement).  Ultimately periodic fractional tails are
kept explicit, which covers exactly the rational numbers.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

Rational = Fraction


class EncodingError(ValueError):
    """Raised for malformed digits, words, or rationals."""


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` with q >= 1.  Rejects zero denominators."""
    text = text.strip()
    try:
        if "/" in text:
            num_text, den_text = text.split("/", 1)
            num, den = int(num_text), int(den_text)
            if den <= 0:
                raise EncodingError(f"denominator must be positive: {text!r}")
            return Fraction(num, den)
        return Fraction(int(text))
    except ValueError as exc:
        raise EncodingError(f"malformed rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True, order=True)
class Base:
    """An integer numeration base together with its distinct prime factors."""

    value: int
    prime_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.value < 2:
            raise ValueError(f"base must be >= 2, got {self.value}")
        n = self.value
        for p in self.prime_factors:
            while n % p == 0:
                n //= p
        if n != 1 or tuple(sorted(set(self.prime_factors))) != self.prime_factors:
            raise ValueError(f"bad prime factor list {self.prime_factors} for {self.value}")

    @classmethod
    def of(cls, value: int) -> "Base":
        return cls(value, tuple(sorted(factorize(value))))


def as_base(base: "Base | int") -> Base:
    return base if isinstance(base, Base) else Base.of(base)


def same_prime_factors(r: "Base | int", s: "Base | int") -> bool:
    return as_base(r).prime_factors == as_base(s).prime_factors


def _horner(digits: Sequence[int], r: int) -> int:
    value = 0
    for d in digits:
        value = value * r + d
    return value


def _digits_of(n: int, r: int, width: int) -> tuple[int, ...]:
    """Base-r digits of n >= 0, zero-padded to ``width`` (MSD first)."""
    out = []
    for _ in range(width):
        out.append(n % r)
        n //= r
    if n:
        raise ValueError("value does not fit in width")
    return tuple(reversed(out))


def _primitive_root(period: Sequence[int]) -> tuple[int, ...]:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and tuple(period) == tuple(period[:d]) * (n // d):
            return tuple(period[:d])
    raise AssertionError("unreachable")


def _canonical_tail(prefix: Sequence[int], period: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    per = list(_primitive_root(period))
    pre = list(prefix)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return tuple(pre), tuple(per)


@dataclass(frozen=True)
class UPWord:
    """An ultimately periodic base-r encoding.

    ``int_digits`` holds the integer part MSD first; its first digit is the
    sign digit and must be 0 or r-1.  The fractional part is
    ``frac_prefix`` followed by ``frac_period`` repeated forever.  Words are
    kept canonical: the period is primitive and cannot be partially absorbed
    into the prefix.  Construct through :func:`up_word`.
    """

    base: Base
    int_digits: tuple[int, ...]
    frac_prefix: tuple[int, ...]
    frac_period: tuple[int, ...]

    def __post_init__(self) -> None:
        r = self.base.value
        if not self.int_digits:
            raise EncodingError("integer part needs at least the sign digit")
        if not self.frac_period:
            raise EncodingError("period must be nonempty")
        for d in (*self.int_digits, *self.frac_prefix, *self.frac_period):
            if not 0 <= d < r:
                raise EncodingError(f"digit {d} out of range for base {r}")
        if self.int_digits[0] not in (0, r - 1):
            raise EncodingError(f"sign digit must be 0 or {r - 1}, got {self.int_digits[0]}")
        pre, per = _canonical_tail(self.frac_prefix, self.frac_period)
        if (pre, per) != (self.frac_prefix, self.frac_period):
            raise EncodingError("word is not canonical; use up_word()")

    def __str__(self) -> str:
        return format_up_word(self)


def up_word(
    base: "Base | int",
    int_digits: Sequence[int],
    frac_prefix: Sequence[int],
    frac_period: Sequence[int],
) -> UPWord:
    """Canonicalize the fractional tail and build a :class:`UPWord`."""
    if not frac_period:
        raise EncodingError("period must be nonempty")
    pre, per = _canonical_tail(frac_prefix, frac_period)
    return UPWord(as_base(base), tuple(int_digits), pre, per)


def decode_word(w: UPWord) -> Fraction:
    """The exact rational value encoded by ``w``."""
    r = w.base.value
    p = len(w.int_digits)
    int_val = _horner(w.int_digits[1:], r)
    if w.int_digits[0] == r - 1:
        int_val -= r ** (p - 1)
    pre, per = w.frac_prefix, w.frac_period
    frac = Fraction(
        _horner((*pre, *per), r) - _horner(pre, r),
        r ** len(pre) * (r ** len(per) - 1),
    )
    return int_val + frac


@lru_cache(maxsize=65536)
def encode_rational(x: Fraction, base: "Base | int") -> UPWord:
    """Canonical low encoding of ``x``: shortest legal integer part and the
    long-division fractional expansion (tail (0)^ω preferred)."""
    b = as_base(base)
    r = b.value
    x = Fraction(x)
    x_int = math.floor(x)
    x_frac = x - x_int

    if x_int >= 0:
        width = 1
        while r ** (width - 1) <= x_int:
            width += 1
        int_digits = (0,) + _digits_of(x_int, r, width - 1) if width > 1 else (0,)
    else:
        width = 1
        while -(r ** (width - 1)) > x_int:
            width += 1
        int_digits = _digits_of(r ** width + x_int, r, width)

    num, den = x_frac.numerator, x_frac.denominator
    seen: dict[int, int] = {}
    digits: list[int] = []
    while num not in seen:
        seen[num] = len(digits)
        num *= r
        digits.append(num // den)
        num %= den
    start = seen[num]
    return up_word(b, int_digits, digits[:start], digits[start:])


def dual_of(w: UPWord) -> Optional[UPWord]:
    """The other encoding of the same value with the same integer-part length.

    Exists exactly for terminating expansions (tail (0)^ω or (r-1)^ω),
    unless the flipped finite part no longer fits the integer-part length.
    """
    r = w.base.value
    if w.frac_period == (0,):
        delta = -1
        new_period = (r - 1,)
    elif w.frac_period == (r - 1,):
        delta = +1
        new_period = (0,)
    else:
        return None

    digits = (*w.int_digits, *w.frac_prefix)
    n_dig = len(digits)
    value = _horner(digits, r)
    if digits[0] == r - 1:
        value -= r ** n_dig
    value += delta
    if not -(r ** (n_dig - 1)) <= value < r ** (n_dig - 1):
        return None
    if value < 0:
        value += r ** n_dig
    flipped = _digits_of(value, r, n_dig)
    p = len(w.int_digits)
    return up_word(w.base, flipped[:p], flipped[p:], new_period)


_STAR_CHARS = ("⋆", "*")
_OMEGA_CHARS = ("ω", "w")


def format_up_word(w: UPWord) -> str:
    r = w.base.value

    def part(digits: Sequence[int]) -> str:
        if r <= 10:
            return "".join(str(d) for d in digits)
        return ".".join(str(d) for d in digits)

    return f"{part(w.int_digits)}⋆{part(w.frac_prefix)}({part(w.frac_period)})ω"


def parse_up_word(text: str, base: "Base | int") -> UPWord:
    """Parse the textual syntax; `*` and `w` are accepted as ASCII fallbacks."""
    b = as_base(base)
    raw = text.strip()
    star_pos = -1
    for ch in _STAR_CHARS:
        if ch in raw:
            star_pos = raw.index(ch)
            star_ch = ch
            break
    if star_pos < 0:
        raise EncodingError(f"missing separator in {text!r}")
    int_part, rest = raw[:star_pos], raw[star_pos + len(star_ch):]
    if rest.count("(") != 1 or ")" not in rest:
        raise EncodingError(f"missing period parentheses in {text!r}")
    open_pos = rest.index("(")
    close_pos = rest.index(")")
    if close_pos < open_pos:
        raise EncodingError(f"bad parentheses in {text!r}")
    prefix_part = rest[:open_pos]
    period_part = rest[open_pos + 1:close_pos]
    tail = rest[close_pos + 1:].lstrip("^")
    if tail not in _OMEGA_CHARS:
        raise EncodingError(f"expected ω marker after period in {text!r}")

    def digits(chunk: str) -> tuple[int, ...]:
        chunk = chunk.strip()
        if not chunk:
            return ()
        if b.value <= 10 and "." not in chunk:
            try:
                return tuple(int(c) for c in chunk)
            except ValueError as exc:
                raise EncodingError(f"bad digit in {chunk!r}") from exc
        try:
            return tuple(int(tok) for tok in chunk.split("."))
        except ValueError as exc:
            raise EncodingError(f"bad digit in {chunk!r}") from exc

    return up_word(b, digits(int_part), digits(prefix_part), digits(period_part))


def multiplicative_order(a: int, m: int) -> int:
    """Least e >= 1 with a^e ≡ 1 (mod m); requires gcd(a, m) = 1."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if math.gcd(a, m) != 1:
        raise ValueError(f"gcd({a}, {m}) != 1")
    if m == 1:
        return 1
    phi = 1
    for p, e in factorize(m).items():
        phi *= (p - 1) * p ** (e - 1)
    divisors = [1]
    for p, e in factorize(phi).items():
        divisors = [d * p ** k for d in divisors for k in range(e + 1)]
    for d in sorted(divisors):
        if pow(a, d, m) == 1:
            return d
    raise AssertionError("unreachable: order divides phi(m)")


def period_lengths(r: "Base | int", s: "Base | int", k: int) -> tuple[int, int]:
    """Smallest (preperiod, period) lengths of the base-r expansion of 1/s^k.

    Equivalently the least naturals (v, u) such that s^k divides
    r^v (r^u - 1).  Requires a prime factor of s that does not divide r,
    which makes the coprime part nontrivial.
    """
    rb, sb = as_base(r), as_base(s)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    foreign = [p for p in sb.prime_factors if rb.value % p != 0]
    if not foreign:
        raise ValueError(f"every prime factor of {sb.value} divides {rb.value}")
    s_exp = factorize(sb.value)
    r_exp = factorize(rb.value)
    v = 0
    m2 = 1
    for p, e in s_exp.items():
        if p in r_exp:
            v = max(v, -((-k * e) // r_exp[p]))
        else:
            m2 *= p ** (k * e)
    u = multiplicative_order(rb.value % m2, m2)
    return v, u


def multiplicatively_independent(r: "Base | int", s: "Base | int", max_exp: int) -> bool:
    """Check r^p != s^q for all 1 <= p, q <= max_exp."""
    rv, sv = as_base(r).value, as_base(s).value
    s_powers = set()
    x = 1
    for _ in range(max_exp):
        x *= sv
        s_powers.add(x)
    y = 1
    for _ in range(max_exp):
        y *= rv
        if y in s_powers:
            return False
    return True


def find_power_ratio(
    r: "Base | int",
    s: "Base | int",
    lo: Fraction,
    hi: Fraction,
    max_exp: int,
) -> Optional[tuple[int, int]]:
    """Exponents (i, j), both >= 1 and <= max_exp, with lo < r^i/s^j < hi.

    The search is exact (rational comparisons) and returns the
    lexicographically first hit, or None when no pair fits in the bound.
    """
    rb, sb = as_base(r), as_base(s)
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 < lo < hi:
        raise ValueError(f"degenerate interval ({lo}, {hi})")
    if not multiplicatively_independent(rb, sb, max_exp):
        raise ValueError(f"bases {rb.value} and {sb.value} are multiplicatively dependent")
    r_pow = 1
    for i in range(1, max_exp + 1):
        r_pow *= rb.value
        s_pow = 1
        for j in range(1, max_exp + 1):
            s_pow *= sb.value
            ratio = Fraction(r_pow, s_pow)
            if lo < ratio < hi:
                return i, j
            if ratio <= lo:
                break
    return None


def stratified_rationals(
    seed: int,
    count: int,
    prime_pools: Sequence[Sequence[int]] = ((2,), (3,), (2, 3), (5, 7)),
    *,
    max_abs: int = 8,
    max_exp: int = 6,
) -> list[Fraction]:
    """Deterministic rational sample, adversarial about denominators.

    Denominators are drawn as products from the given prime pools so that
    base-specific and base-foreign expansions are both exercised.
    """
    rng = random.Random(seed)
    out: list[Fraction] = []
    for i in range(count):
        pool = prime_pools[i % len(prime_pools)]
        # Cap the per-prime exponent by pool size to keep expansion periods
        # at desk scale.
        cap = max(1, max_exp // len(pool))
        den = 1
        for p in pool:
            den *= p ** rng.randint(0, cap)
        num = rng.randint(-max_abs * den, max_abs * den)
        out.append(Fraction(num, den))
    return out
