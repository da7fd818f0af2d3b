"""Exact arithmetic in the finite fields F_p and F_{p^k}.

A field element is encoded as an integer in [0, q): the encoding is the
coefficient vector of the residue polynomial, little-endian base p, so
value = sum(c_i * p**i).  0 and 1 encode the additive and multiplicative
identities.  Prime fields use direct modular arithmetic; extension fields
with q <= 4096 precompute generator-power (exp/log) tables, larger ones
reduce polynomials on the fly.

Serialization: an element is its integer encoding; a field is the triple
{p, k, modulus coefficients little-endian} (modulus is the polynomial x
when k = 1).
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass

_TRIAL_LIMIT = 10**6

_TABLE_Q_LIMIT = 4096  # exp/log tables beyond this would dwarf desk scale
_ADD_TABLE_Q_LIMIT = 256


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % p == 0:
            return m == p
    d = m - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _pollard_rho(m: int) -> int:
    # Brent's cycle variant; m is odd, composite, with no factor <= 10^6.
    rng = random.Random(0xC0FFEE ^ m)
    while True:
        y = rng.randrange(1, m)
        c = rng.randrange(1, m)
        f = lambda v: (v * v + c) % m
        x, d = y, 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), m)
        if d != m:
            return d


@functools.lru_cache(maxsize=None)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of m >= 1 as ((prime, exponent), ...), ascending.

    Trial division up to 10^6, then Pollard rho for the cofactor.
    """
    if m < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= m and d <= _TRIAL_LIMIT:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    stack = [m] if m > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            factors[v] = factors.get(v, 0) + 1
            continue
        d = _pollard_rho(v)
        stack.append(d)
        stack.append(v // d)
    return tuple(sorted(factors.items()))


def _multiplicative_order(pow_fn, identity, bound: int) -> int:
    """Order of an element given a pow function and a multiple of the order."""
    order = bound
    for prime, _ in factorize(bound):
        while order % prime == 0 and pow_fn(order // prime) == identity:
            order //= prime
    return order


# --- polynomials over F_p as little-endian int lists (internal helpers) ---
# Self-contained so that modulus validation does not depend on the poly
# module, which itself builds on FieldSpec.


def _pnorm(c: list[int], p: int) -> list[int]:
    c = [v % p for v in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pnorm(out, p)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        if coef:
            shift = len(a) - len(m)
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - coef * mi) % p
        a.pop()
    return _pnorm(a, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [v * inv % p for v in a]
    return a


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    a = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return result


def _p_is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over the prime field F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    if _ppowmod(x, p**n, f, p) != _pmod(x, f, p):
        return False
    for r, _ in factorize(n):
        power = _ppowmod(x, p ** (n // r), f, p)
        padded = list(power) + [0] * (2 - len(power))
        diff = _pnorm([c - (1 if i == 1 else 0) for i, c in enumerate(padded)], p)
        if _pgcd(diff, f, p) != [1]:
            return False
    return True


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    # lexicographically least by coefficient tuple (c_0, ..., c_{k-1})
    for tail in itertools.product(range(p), repeat=k):
        f = list(tail) + [1]
        if _p_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """The finite field F_q, q = p^k, with table-backed exact arithmetic.

    Instances are immutable and cached by make_field; all operations are
    pure and safe to share across threads.  The low-level add/sub/mul/inv/
    pow methods work on integer encodings; elem() wraps an encoding in a
    FieldElem carrying its field tag.
    """

    __slots__ = ("p", "k", "q", "modulus", "_exp", "_log", "_add", "_neg", "_key")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k == 1:
            if modulus is None:
                modulus = (0, 1)
            if tuple(modulus) != (0, 1):
                raise ValueError("prime fields use the identity polynomial x as modulus")
        else:
            if modulus is None:
                modulus = _least_irreducible(p, k)
            modulus = tuple(v % p for v in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not _p_is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible over the prime field")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self._key = (p, k, self.modulus)
        self._exp = self._log = self._add = self._neg = None
        if k > 1:
            if self.q <= _ADD_TABLE_Q_LIMIT:
                self._build_add_tables()
            if self.q <= _TABLE_Q_LIMIT:
                self._build_mul_tables()

    # -- encoding ----------------------------------------------------------

    def decode(self, value: int) -> tuple[int, ...]:
        """Coefficient vector (little-endian base p) of an encoding."""
        coeffs = []
        for _ in range(self.k):
            value, r = divmod(value, self.p)
            coeffs.append(r)
        return tuple(coeffs)

    def encode(self, coeffs) -> int:
        value = 0
        for c in reversed(list(coeffs)):
            value = value * self.p + c % self.p
        return value

    def _build_add_tables(self):
        q = self.q
        digits = [self.decode(v) for v in range(q)]
        self._neg = [self.encode(tuple(-d for d in ds)) for ds in digits]
        self._add = [
            self.encode(tuple(x + y for x, y in zip(digits[a], digits[b])))
            for a in range(q)
            for b in range(q)
        ]

    def _build_mul_tables(self):
        q, p = self.q, self.p
        m = list(self.modulus)
        for g in range(self.p, q):
            powers = [1]
            acc = [1]
            gp = list(self.decode(g))
            while True:
                acc = _pmod(_pmul(acc, gp, p), m, p)
                v = self.encode(acc + [0] * (self.k - len(acc)))
                if v == 1:
                    break
                powers.append(v)
            if len(powers) == q - 1:
                break
        else:
            raise AssertionError("no multiplicative generator found")  # unreachable
        self._exp = powers + powers  # doubled to skip a modulo in mul()
        log = [0] * q
        for i, v in enumerate(powers):
            log[v] = i
        self._log = log

    # -- arithmetic on encodings -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a * self.q + b]
        return self.encode(x + y for x, y in zip(self.decode(a), self.decode(b)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self._neg is not None:
            return self._neg[a]
        return self.encode(-x for x in self.decode(a))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        prod = _pmod(_pmul(list(self.decode(a)), list(self.decode(b)), self.p),
                     list(self.modulus), self.p)
        return self.encode(prod + [0] * (self.k - len(prod)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[self.q - 1 - self._log[a]]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroDivisionError("inversion of zero field element")
        e %= self.q - 1
        if self.k == 1:
            return pow(a, e, self.p)
        if self._exp is not None:
            return self._exp[self._log[a] * e % (self.q - 1)]
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- element interface ---------------------------------------------------

    def elem(self, value: int) -> FieldElem:
        if not 0 <= value < self.q:
            raise ValueError(f"encoding {value} out of range for {self!r}")
        return FieldElem(self, value)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self):
        for v in range(self.q):
            yield FieldElem(self, v)

    def units(self):
        for v in range(1, self.q):
            yield FieldElem(self, v)

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.k == 1:
            return f"F{self.p}"
        return f"F{self.q}"

    def serialize(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    return FieldSpec(p, k, modulus)


def make_field(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Build (or fetch the cached) F_{p^k}.

    If modulus is omitted for k >= 2, the lexicographically least monic
    irreducible of degree k over F_p (by coefficient tuple) is chosen, so
    the result is reproducible.  modulus may be a little-endian coefficient
    sequence or anything with a little-endian .coeffs attribute.
    """
    if modulus is not None:
        coeffs = getattr(modulus, "coeffs", modulus)
        modulus = tuple(int(c) % p for c in coeffs)
    return _cached_field(p, k, modulus)


@dataclass(frozen=True, slots=True)
class FieldElem:
    """An immutable field element: an integer encoding tagged with its field."""

    field: FieldSpec
    value: int

    def _check(self, other: "FieldElem") -> None:
        # cross-field arithmetic is a contract violation; cheap debug guard
        assert isinstance(other, FieldElem) and self.field == other.field, \
            "elements belong to different fields"

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.mul(self.value, self.field.inv(other.value)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def frobenius(a: FieldElem, base_order: int) -> FieldElem:
    """The map a -> a^{q0} for the subfield of order q0 = base_order."""
    p, k = a.field.p, a.field.k
    j = 0
    v = base_order
    while v > 1 and v % p == 0:
        v //= p
        j += 1
    if v != 1 or j == 0:
        raise ValueError(f"{base_order} is not a power of the characteristic {p}")
    if k % j != 0:
        raise ValueError(f"field of order {a.field.q} is not an extension of F_{base_order}")
    return a ** base_order


def element_order(a: FieldElem) -> int:
    """Least m >= 1 with a^m = 1."""
    if a.value == 0:
        raise ValueError("the zero element has no multiplicative order")
    field = a.field
    return _multiplicative_order(lambda e: field.pow(a.value, e), 1, field.q - 1)


def is_primitive_element(a: FieldElem) -> bool:
    """True iff a generates the multiplicative group F_q^x."""
    return a.value != 0 and element_order(a) == a.field.q - 1
