"""Polynomials over F_q: arithmetic, irreducibility, primitivity, companions.

Coefficients are stored little-endian as integer encodings (coeffs[i] is
the coefficient of x^i), with no trailing zeros; the zero polynomial has
an empty coefficient tuple.  Text form is the comma-separated encoding
list, e.g. "2,1,1" for x^2 + x + 2 over F_3.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from . import ff
from .ff import FieldSpec, _multiplicative_order, factorize


class Poly:
    """An immutable polynomial over a fixed F_q, hashable by value."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs=()):
        cs = []
        for c in coeffs:
            v = c.value if isinstance(c, ff.FieldElem) else int(c)
            if not 0 <= v < field.q:
                raise ValueError(f"coefficient encoding {v} out of range for {field!r}")
            cs.append(v)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec) -> "Poly":
        return cls(field)

    @classmethod
    def one(cls, field: FieldSpec) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, coeff: int = 1) -> "Poly":
        return cls(field, (0,) * degree + (coeff,))

    @classmethod
    def from_text(cls, field: FieldSpec, text: str) -> "Poly":
        return cls(field, (int(t) for t in text.split(",")))

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(str(c) for c in self.coeffs)

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                terms.append(xs if c == 1 else f"{c}*{xs}")
        return " + ".join(terms)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        fld = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = fld.add(out[i], c)
        return Poly(fld, out)

    def __neg__(self) -> "Poly":
        fld = self.field
        return Poly(fld, (fld.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        fld = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(fld)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = fld.add(out[i + j], fld.mul(ai, bj))
        return Poly(fld, out)

    def scale(self, c: int) -> "Poly":
        fld = self.field
        return Poly(fld, (fld.mul(c, v) for v in self.coeffs))

    def divrem(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Quotient and remainder; raises on division by the zero polynomial."""
        fld = self.field
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = divisor.coeffs
        inv_lead = fld.inv(dv[-1])
        quot = [0] * max(len(rem) - len(dv) + 1, 0)
        while len(rem) >= len(dv):
            coef = fld.mul(rem[-1], inv_lead)
            shift = len(rem) - len(dv)
            if coef:
                quot[shift] = coef
                for i, d in enumerate(dv):
                    rem[shift + i] = fld.sub(rem[shift + i], fld.mul(coef, d))
            rem.pop()
        return Poly(fld, quot), Poly(fld, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.field.inv(self.leading))

    def __call__(self, value: int) -> int:
        """Evaluate at a field element given by its encoding (Horner)."""
        fld = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = fld.add(fld.mul(acc, value), c)
        return acc


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def powmod(f: Poly, e: int, m: Poly) -> Poly:
    """f^e mod m by square-and-multiply, e >= 0."""
    if e < 0:
        raise ValueError("negative exponent; use invmod first")
    result = Poly.one(f.field)
    base = f % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def invmod(f: Poly, m: Poly) -> Poly:
    """Inverse of f modulo m (extended Euclid); requires gcd(f, m) = 1."""
    fld = f.field
    r0, r1 = m, f % m
    s0, s1 = Poly.zero(fld), Poly.one(fld)
    while not r1.is_zero:
        q, r = r0.divrem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    return s0.scale(fld.inv(r0.leading)) % m


def is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test over F_q.

    f of degree n is irreducible iff x^{q^n} = x (mod f) and
    gcd(x^{q^{n/r}} - x, f) = 1 for every prime r dividing n.
    """
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    q = f.field.q
    x = Poly.x(f.field)
    if powmod(x, q**n, f) != x % f:
        return False
    for r, _ in factorize(n):
        if gcd(powmod(x, q ** (n // r), f) - x, f).degree != 0:
            return False
    return True


def is_primitive_poly(f: Poly) -> bool:
    """True iff f is irreducible and the class of x generates (F_q[x]/(f))^x."""
    if not f.is_monic:
        raise ValueError("primitivity is defined for monic polynomials")
    n = f.degree
    if n < 1 or f[0] == 0 or not is_irreducible(f):
        return False
    q = f.field.q
    target = q**n - 1
    x = Poly.x(f.field)
    one = Poly.one(f.field)
    if powmod(x, target, f) != one:  # sanity: Lagrange in the residue field
        return False
    return all(powmod(x, target // r, f) != one for r, _ in factorize(target))


def companion(f: Poly):
    """Companion matrix of a monic f: subdiagonal 1s, last column -a_i."""
    from .matrix import Matrix  # deferred: matrix builds on poly

    if not f.is_monic:
        raise ValueError("companion matrix requires a monic polynomial")
    n = f.degree
    fld = f.field
    entries = [0] * (n * n)
    for i in range(n):
        entries[i * n + n - 1] = fld.neg(f[i])
        if i + 1 < n:
            entries[(i + 1) * n + i] = 1
    return Matrix(fld, n, entries)


def enumerate_monic(n: int, field: FieldSpec, nonzero_constant: bool = False) -> Iterator[Poly]:
    """All monic degree-n polynomials, lexicographic on (c_0, ..., c_{n-1})."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    first = range(1, field.q) if nonzero_constant else range(field.q)
    for c0 in first:
        for rest in itertools.product(range(field.q), repeat=n - 1):
            yield Poly(field, (c0,) + rest + (1,))


def find_primitive_poly(n: int, field: FieldSpec) -> Poly:
    """The first primitive degree-n polynomial in enumerate_monic order."""
    for f in enumerate_monic(n, field, nonzero_constant=True):
        if is_primitive_poly(f):
            return f
    raise AssertionError("primitive polynomials always exist")  # unreachable


class FieldExtension:
    """The residue field F_q[x]/(f) for a monic irreducible f of degree n.

    Residues are Poly values of degree < n over the ground field; this is
    the working model of F_{q^n} used for eigenvalue and embedding
    computations, valid for any prime-power ground field.
    """

    def __init__(self, modulus: Poly, check: bool = True):
        if check and (not modulus.is_monic or not is_irreducible(modulus)):
            raise ValueError("extension modulus must be monic irreducible")
        self.modulus = modulus
        self.ground = modulus.field
        self.degree = modulus.degree
        self.order = self.ground.q ** self.degree
        self.x = Poly.x(self.ground) % modulus
        self.one = Poly.one(self.ground)
        self.zero = Poly.zero(self.ground)

    def reduce(self, f: Poly) -> Poly:
        return f % self.modulus

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus

    def inv(self, a: Poly) -> Poly:
        return invmod(a, self.modulus)

    def pow(self, a: Poly, e: int) -> Poly:
        if e < 0:
            return powmod(self.inv(a), -e, self.modulus)
        return powmod(a, e, self.modulus)

    def element_order(self, a: Poly) -> int:
        if a.is_zero:
            raise ValueError("the zero residue has no multiplicative order")
        return _multiplicative_order(lambda e: self.pow(a, e), self.one, self.order - 1)

    def is_primitive(self, a: Poly) -> bool:
        return not a.is_zero and self.element_order(a) == self.order - 1

    def frobenius(self, a: Poly) -> Poly:
        return self.pow(a, self.ground.q)

    def frobenius_orbit(self, a: Poly) -> list[Poly]:
        orbit = [self.reduce(a)]
        nxt = self.frobenius(orbit[0])
        while nxt != orbit[0]:
            orbit.append(nxt)
            nxt = self.frobenius(nxt)
        return orbit

    def minimal_poly(self, a: Poly) -> Poly:
        """Minimal polynomial of a residue over the ground field.

        Computed as the product of (y - s) over the Frobenius orbit of a;
        the result must have constant residues as coefficients, which are
        cast down to ground-field elements.
        """
        orbit = self.frobenius_orbit(a)
        # product over Poly-with-residue-coefficients, little-endian in y
        prod: list[Poly] = [self.one]
        for s in orbit:
            nxt = [self.zero] * (len(prod) + 1)
            for i, c in enumerate(prod):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - self.mul(c, s)
            prod = nxt
        coeffs = []
        for c in prod:
            if c.degree > 0:
                raise ArithmeticError("minimal polynomial coefficient failed to cast down")
            coeffs.append(c[0])
        return Poly(self.ground, coeffs)

    def cast_down(self, a: Poly) -> int:
        """Encoding of a residue that lies in the ground field image."""
        a = self.reduce(a)
        if a.degree > 0:
            raise ArithmeticError("residue does not lie in the ground field")
        return a[0]

    def elements(self) -> Iterator[Poly]:
        for coeffs in itertools.product(range(self.ground.q), repeat=self.degree):
            yield Poly(self.ground, coeffs)

    def __repr__(self):
        return f"{self.ground!r}[x]/({self.modulus!r})"
