"""Polynomials over a tower level.

Poly wraps the list-based core with value semantics.  Factorization is
square-free decomposition, then distinct-degree, then fixed-seed
equal-degree splitting, so factor tables come out identical across runs.
The x^m-1 helpers (radical structure, polynomial Euler function, the
F_q[x]-module action, F_q-orders, sigma ratios) live here too.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import _expr, _polycore as pc
from .arith import p_free_part
from .errors import NotDividing
from .gf import ExtField, FieldTower, PrimeField

_EDF_SEED = 0x5EED


class Poly:
    """Immutable polynomial; coefficients ascend by degree."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(pc.trim(field, list(coeffs)))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def x_pow_minus_one(cls, field, m: int) -> "Poly":
        cs = [field.zero] * (m + 1)
        cs[0] = field.neg(field.one)
        cs[m] = field.one
        return cls(field, cs)

    @classmethod
    def from_string(cls, field, text: str) -> "Poly":
        symbols = {"x": cls.x(field)}
        if isinstance(field, ExtField):
            symbols["u"] = cls.constant(field, field.decode(field.subfield.order))

        def div(a: "Poly", b: "Poly") -> "Poly":
            q, r = divmod(a, b)
            if not r.is_zero:
                raise NotDividing(f"{b} does not divide {a}")
            return q

        return _expr.evaluate(
            text,
            symbols,
            add=lambda a, b: a + b,
            mul=lambda a, b: a * b,
            neg=lambda a: -a,
            from_int=lambda n: cls.constant(field, field.from_int(n)),
            div=div,
        )

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    @property
    def leading(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == self.field.one

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return Poly(self.field, pc.monic(self.field, list(self.coeffs)))

    def encoding(self) -> int:
        """Integer encoding of the coefficient sequence, constant digit least significant."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.order + self.field.encode(c)
        return out

    def sort_key(self):
        return (self.degree, self.encoding())

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.field, pc.add(self.field, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly(self.field, pc.sub(self.field, list(self.coeffs), list(other.coeffs)))

    def __neg__(self) -> "Poly":
        return Poly(self.field, pc.neg(self.field, list(self.coeffs)))

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly(self.field, pc.mul(self.field, list(self.coeffs), list(other.coeffs)))

    def scale(self, c) -> "Poly":
        return Poly(self.field, pc.scale(self.field, c, list(self.coeffs)))

    def __divmod__(self, other: "Poly"):
        q, r = pc.divmod_(self.field, list(self.coeffs), list(other.coeffs))
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        return Poly(
            self.field, pc.powmod(self.field, list(self.coeffs), n, list(modulus.coeffs))
        )

    def eval(self, x):
        return pc.eval_at(self.field, list(self.coeffs), x)

    def derivative(self) -> "Poly":
        field = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            c = field.zero
            for _ in range(i % field.char):
                c = field.add(c, self.coeffs[i])
            out.append(c)
        return Poly(field, out)

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero

    # -- value semantics ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field is other.field

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def text(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        field = self.field
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == field.zero:
                continue
            cs = field.text(c) if not isinstance(field, PrimeField) else str(c)
            if ("+" in cs or "-" in cs or "*" in cs) and i > 0:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                xs = var if i == 1 else f"{var}^{i}"
                terms.append(xs if cs == "1" else f"{cs}*{xs}")
        return "+".join(terms)

    def __repr__(self):
        return f"Poly({self.text()})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    return Poly(a.field, pc.gcd(a.field, list(a.coeffs), list(b.coeffs)))


def is_irreducible_poly(f: Poly) -> bool:
    return pc.is_irreducible(f.field, list(f.monic().coeffs))


@dataclass(frozen=True)
class PolyFactorization:
    """unit * product of monic irreducible powers; factors sorted by (degree, encoding)."""

    unit: object
    factors: tuple[tuple[Poly, int], ...]

    def assemble(self) -> Poly:
        field = self.factors[0][0].field if self.factors else None
        if field is None:
            raise ValueError("cannot assemble a factorization with no factors")
        out = Poly.constant(field, self.unit)
        for f, e in self.factors:
            out = out * f**e
        return out

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def W(self) -> int:
        return 2 ** len(self.factors)

    def radical_factors(self) -> tuple[Poly, ...]:
        return tuple(f for f, _ in self.factors)

    def radical(self) -> Poly:
        field = self.factors[0][0].field
        out = Poly.one(field)
        for f, _ in self.factors:
            out = out * f
        return out

    def degree_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(f.degree for f, e in self.factors for _ in range(e)))

    def squarefree_divisors(self) -> Iterator[tuple[Poly, int]]:
        """(monic squarefree divisor, mu') over all subsets of the radical factors."""
        field = self.factors[0][0].field if self.factors else None
        divs = [(Poly.one(field) if field else None, 1)]
        for f, _ in self.factors:
            divs += [(d * f, -s) for d, s in divs]
        return iter(divs)


def poly_factor(f: Poly, seed: int = _EDF_SEED) -> PolyFactorization:
    """Complete factorization into monic irreducibles (odd characteristic)."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    field = f.field
    if field.char == 2:
        raise NotImplementedError("equal-degree splitting implemented for odd characteristic only")
    unit = f.leading
    f = f.monic()
    found: dict[Poly, int] = {}
    for piece, mult in _squarefree_decomposition(f):
        for g, d in _distinct_degree(piece):
            for irr in _equal_degree_split(g, d, seed):
                found[irr] = found.get(irr, 0) + mult
    factors = tuple(sorted(found.items(), key=lambda t: t[0].sort_key()))
    return PolyFactorization(unit, factors)


def _squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    field = f.field
    p = field.char
    out: list[tuple[Poly, int]] = []
    d = f.derivative()
    if d.is_zero:
        return [(g, e * p) for g, e in _squarefree_decomposition(_pth_root(f))]
    c = poly_gcd(f, d)
    w = f // c
    i = 1
    while not w.is_one:
        y = poly_gcd(w, c)
        z = w // y
        if not z.is_one:
            out.append((z, i))
        w, c = y, c // y
        i += 1
    if not c.is_one:
        out += [(g, e * p) for g, e in _squarefree_decomposition(_pth_root(c))]
    return out


def _pth_root(f: Poly) -> Poly:
    """Inverse Frobenius: f = g(x^p) with g recoverable coefficientwise."""
    field = f.field
    p = field.char
    root_exp = field.order // p  # c -> c^(order/p) is the p-th root
    coeffs = []
    for i in range(0, f.degree + 1, p):
        c = f.coeffs[i] if i <= f.degree else field.zero
        coeffs.append(field.pow_(c, root_exp))
    return Poly(field, coeffs)


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    field = f.field
    q = field.order
    out = []
    x = Poly.x(field)
    h = x
    i = 1
    rest = f
    while rest.degree >= 2 * i:
        h = h.pow_mod(q, rest)
        g = poly_gcd(h - x, rest)
        if not g.is_one:
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if not rest.is_one:
        out.append((rest, rest.degree))
    return out


def _equal_degree_split(f: Poly, d: int, seed: int) -> list[Poly]:
    """Cantor-Zassenhaus on a product of distinct irreducibles of degree d."""
    field = f.field
    q = field.order
    r = f.degree // d
    if r == 1:
        return [f.monic()]
    rnd = random.Random(seed ^ f.encoding() & 0xFFFFFFFF)
    pieces = [f.monic()]
    exp = (q**d - 1) // 2
    while len(pieces) < r:
        h = Poly(field, [field.decode(rnd.randrange(q)) for _ in range(f.degree)])
        if h.is_zero:
            continue
        next_pieces = []
        for u in pieces:
            if u.degree == d:
                next_pieces.append(u)
                continue
            g = poly_gcd(h, u)
            if g.is_one or g.degree == u.degree:
                t = h.pow_mod(exp, u) - Poly.one(field)
                g = poly_gcd(t, u)
            if g.is_one or g.degree == u.degree:
                next_pieces.append(u)
            else:
                next_pieces.append(g.monic())
                next_pieces.append((u // g).monic())
        pieces = next_pieces
    return [u.monic() for u in pieces]


# -- x^m - 1 structure ---------------------------------------------------------


def cyclotomic_cosets(q: int, n: int) -> list[list[int]]:
    """q-cyclotomic cosets mod n, each sorted, ordered by smallest member."""
    seen = [False] * n
    out = []
    for j in range(n):
        if seen[j]:
            continue
        coset = []
        t = j
        while not seen[t]:
            seen[t] = True
            coset.append(t)
            t = (t * q) % n
        out.append(sorted(coset))
    return out


def factor_xm_minus_1(field, m: int) -> PolyFactorization:
    """Factor x^m - 1 over the given coefficient field.

    The distinct factors are those of x^{m'} - 1 (m' the p-free part of m),
    each with multiplicity p^a where m = m' p^a; the degree multiset is
    cross-checked against the q-cyclotomic coset sizes mod m'.
    """
    p = field.char
    m_prime = p_free_part(m, p)
    mult = m // m_prime
    radical = poly_factor(Poly.x_pow_minus_one(field, m_prime))
    sizes = sorted(len(c) for c in cyclotomic_cosets(field.order, m_prime))
    got = sorted(f.degree for f, _ in radical.factors)
    if got != sizes:
        raise AssertionError(
            f"factor degrees {got} disagree with cyclotomic coset sizes {sizes}"
        )
    return PolyFactorization(field.one, tuple((f, e * mult) for f, e in radical.factors))


def poly_euler_phi(pf: PolyFactorization, q: int) -> int:
    """Phi(g): the number of units of F_q[x]/(g)."""
    out = 1
    for f, e in pf.factors:
        d = f.degree
        out *= q ** (d * e) - q ** (d * (e - 1))
    return out


def poly_theta(pf: PolyFactorization, q: int) -> Fraction:
    """Theta(g) = Phi(g) / q^deg(g)."""
    deg = sum(f.degree * e for f, e in pf.factors)
    return Fraction(poly_euler_phi(pf, q), q**deg)


def poly_phi_of(f: Poly, q: int) -> int:
    return poly_euler_phi(poly_factor(f), q)


def largest_coprime_poly_divisor(g: PolyFactorization, h: Poly) -> PolyFactorization:
    """Drop every factor sharing a root with the irreducible h (R_g when h = x-1)."""
    h = h.monic()
    kept = tuple((f, e) for f, e in g.factors if f != h)
    return PolyFactorization(g.unit, kept)


# -- module action and F_q-orders ----------------------------------------------


def frobenius_powers(tower: FieldTower, alpha) -> list:
    """[alpha, alpha^q, ..., alpha^{q^{m-1}}]."""
    out = [alpha]
    for _ in range(tower.m - 1):
        out.append(tower.frobenius_q(out[-1]))
    return out


def module_action(f: Poly, alpha, tower: FieldTower, powers: Optional[Sequence] = None):
    """f o alpha = sum a_i alpha^{q^i} for f over F_q."""
    if powers is None:
        powers = frobenius_powers(tower, alpha)
    top = tower.top
    acc = top.zero
    for i, a in enumerate(f.coeffs):
        if a == f.field.zero:
            continue
        term = powers[i % tower.m] if i >= tower.m else powers[i]
        acc = top.add(acc, top.scalar_mul(a, term))
    return acc


def fq_order(alpha, tower: FieldTower, xm1: Optional[PolyFactorization] = None) -> Poly:
    """Minimal monic divisor g of x^m - 1 with g o alpha = 0."""
    if xm1 is None:
        xm1 = factor_xm_minus_1(tower.mid, tower.m)
    if alpha == tower.top.zero:
        return Poly.one(tower.mid)
    powers = frobenius_powers(tower, alpha)
    current = xm1.assemble()
    for f, e in xm1.factors:
        for _ in range(e):
            candidate = current // f
            if module_action(candidate, alpha, tower, powers) == tower.top.zero:
                current = candidate
            else:
                break
    return current


# -- sigma ratio -----------------------------------------------------------------


def char_of_prime_power(q: int) -> int:
    for p in range(2, 10**6):
        if q % p == 0:
            return p
    raise ValueError("could not determine the characteristic of q")


def order_mod(q: int, n: int) -> int:
    """Multiplicative order of q modulo n (n > 1, gcd(q, n) = 1)."""
    t = q % n
    k = 1
    acc = t
    while acc != 1:
        acc = (acc * q) % n
        k += 1
        if k > n:
            raise ValueError("q not invertible mod n")
    return k


def sigma_ratio(q: int, m: int, p: Optional[int] = None) -> Fraction:
    """sigma(q, m) = M/m with M the number of distinct irreducible factors of
    x^m - 1 over F_q of degree below u = ord_{m'}(q).

    For m' = 1 the ratio is undefined in those terms; by convention 1/m is
    returned (the only factor is x - 1), marked synthetic in the docs.
    """
    if p is None:
        p = char_of_prime_power(q)
    m_prime = p_free_part(m, p)
    if m_prime == 1:
        return Fraction(1, m)
    u = order_mod(q, m_prime)
    cosets = cyclotomic_cosets(q, m_prime)
    big_m = sum(1 for c in cosets if len(c) < u)
    return Fraction(big_m, m)
