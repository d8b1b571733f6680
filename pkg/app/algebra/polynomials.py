"""
Polynômes sur W (WittPoly) et sur un corps fini (FFPoly).

FFPoly ajoute le pgcd, la décomposition sans facteur carré en
caractéristique ℓ, la factorisation par degrés distincts et le scindage
d'égal degré (Cantor–Zassenhaus pour q impair, application trace pour
ℓ = 2). Le scindage est aléatoire mais piloté par une graine explicite.
"""
import random
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from app.algebra.extval import ExtVal, ext_min
from app.algebra.int_poly import IntPoly
from app.algebra.witt_ring import FiniteField, WittElem, WittRing
from app.utils.errors import InputError, NotPolynomial
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
Factorization = List[Tuple["FFPoly", int]]
Scalar = Union[int, WittElem]


class WittPoly:
    """Polynôme de W[t], coefficients terme constant en premier."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: WittRing, coeffs: Iterable = ()):
        values = [ring(c) for c in coeffs]
        while values and values[-1].is_zero():
            values.pop()
        self.ring = ring
        self.coeffs: Tuple[WittElem, ...] = tuple(values)

    # --- constructeurs ----------------------------------------------------

    @classmethod
    def from_ints(cls, ring: WittRing, coeffs: Iterable[int]) -> "WittPoly":
        return cls(ring, [ring(int(c)) for c in coeffs])

    @classmethod
    def monomial(cls, ring: WittRing, degree: int, coeff: Scalar = 1) -> "WittPoly":
        return cls(ring, [ring(0)] * degree + [ring(coeff)])

    @classmethod
    def t(cls, ring: WittRing) -> "WittPoly":
        return cls.monomial(ring, 1)

    def _new(self, coeffs: Iterable) -> "WittPoly":
        return type(self)(self.ring, coeffs)

    # --- propriétés -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> WittElem:
        return self.coeffs[-1] if self.coeffs else self.ring(0)

    @property
    def monic_exact(self) -> bool:
        """Vrai si le coefficient dominant vaut exactement 1."""
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def coeff(self, i: int) -> WittElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring(0)

    def valuations(self) -> List[ExtVal]:
        return [c.valuation() for c in self.coeffs]

    def valuation(self) -> ExtVal:
        return ext_min(self.valuations())

    # --- arithmétique -----------------------------------------------------

    def _coerce(self, other) -> Optional["WittPoly"]:
        if isinstance(other, WittPoly):
            return other if other.ring == self.ring else self.change_ring_of(other)
        if isinstance(other, (int, WittElem)):
            return self._new([self.ring(other)])
        return None

    def change_ring_of(self, other: "WittPoly") -> "WittPoly":
        return type(self)(self.ring, [self.ring(c) for c in other.coeffs])

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "WittPoly":
        return self._new(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new(self.coeff(i) - other.coeff(i) for i in range(n))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self._new([])
        zero = self.ring(0)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "WittPoly":
        if exponent < 0:
            raise ValueError("Exposant négatif")
        result, base = self._new([self.ring(1)]), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, WittElem)):
            other = self._coerce(other)
        if not isinstance(other, WittPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __call__(self, x):
        """Évaluation de Horner (x scalaire ou polynôme)."""
        acc = self.ring(0) if not isinstance(x, WittPoly) else self._new([])
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if self.ring.degree == 1:
            body = [c.coeffs[0] for c in reversed(self.coeffs)]
        else:
            body = [list(c.coeffs) for c in reversed(self.coeffs)]
        return f"{type(self).__name__}({body} mod {self.ring.ell}^{self.ring.precision})"

    def __divmod__(self, other: "WittPoly") -> Tuple["WittPoly", "WittPoly"]:
        """Division euclidienne par un polynôme à coefficient dominant inversible."""
        other = self._coerce(other)
        if other is None or other.is_zero():
            raise ZeroDivisionError("Division par le polynôme nul")
        lead_inv = other.leading.inverse()
        d_other = other.degree
        rem = list(self.coeffs)
        span = len(rem) - d_other
        quo = [self.ring(0)] * max(span, 0)
        for k in range(span - 1, -1, -1):
            c = rem[k + d_other] * lead_inv
            quo[k] = c
            if c.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return self._new(quo), self._new(rem[:d_other])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "WittPoly") -> "WittPoly":
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise NotPolynomial(f"Division non exacte de {self!r} par {other!r}")
        return quo

    # --- transformations --------------------------------------------------

    def derivative(self) -> "WittPoly":
        return self._new(c * i for i, c in enumerate(self.coeffs) if i)

    def shift(self, a: Scalar) -> "WittPoly":
        """P(t + a)."""
        step = self._new([self.ring(a), self.ring(1)])
        return self(step)

    def monic(self) -> "WittPoly":
        if self.is_zero():
            return self
        inv = self.leading.inverse()
        return self._new(c * inv for c in self.coeffs)

    def scale(self, c: Scalar) -> "WittPoly":
        return self._new(a * c for a in self.coeffs)

    def divide_by_ell_power(self, power: int) -> "WittPoly":
        """(1/ℓ^power)·P, significatif modulo ℓ^{N−power}."""
        return self._new(c.exact_div_ell(power) for c in self.coeffs)

    def change_ring(self, ring: WittRing) -> "WittPoly":
        cls = FFPoly if ring.precision == 1 else WittPoly
        return cls(ring, [ring(c) for c in self.coeffs])

    def reduce(self) -> "FFPoly":
        """Réduction modulo ℓ."""
        field = self.ring.residue_field()
        return FFPoly(field, [c.residue() for c in self.coeffs])

    def to_int_poly(self, centered: bool = False) -> IntPoly:
        """Représentants entiers (anneau premier seulement)."""
        return IntPoly((c.centered() if centered else c.lift_int()) for c in self.coeffs)

    def leading_first_keys(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(c.coeffs for c in reversed(self.coeffs))

    def to_json(self) -> dict:
        return {
            "ell": self.ring.ell,
            "residue_poly": list(self.ring.residue_poly) if self.ring.residue_poly else None,
            "precision": self.ring.precision,
            "coeffs": [list(c.coeffs) for c in self.coeffs],
        }


class FFPoly(WittPoly):
    """Polynôme sur un corps fini F_{ℓ^m}."""

    __slots__ = ()

    def __init__(self, ring: WittRing, coeffs: Iterable = ()):
        if ring.precision != 1:
            raise InputError("FFPoly exige un corps fini (précision 1)")
        super().__init__(ring, coeffs)

    @property
    def field(self) -> WittRing:
        return self.ring

    def sort_key(self) -> Tuple:
        return (self.degree, self.leading_first_keys())

    def __lt__(self, other: "FFPoly") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.ring.degree == 1:
            return str(self.to_int_poly().to_sympy().as_expr())
        return repr(self)

    # --- pgcd -------------------------------------------------------------

    def gcd(self, other: "FFPoly") -> "FFPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "FFPoly") -> Tuple["FFPoly", "FFPoly", "FFPoly"]:
        """(g, s, t) avec s·self + t·other = g unitaire."""
        zero, one = self._new([]), self._new([self.ring(1)])
        r0, r1, s0, s1, t0, t1 = self, other, one, zero, zero, one
        while not r1.is_zero():
            quo, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quo * s1
            t0, t1 = t1, t0 - quo * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = r0.leading.inverse()
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def powmod(self, exponent: int, modulus: "FFPoly") -> "FFPoly":
        result, base = self._new([self.ring(1)]) % modulus, self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result

    def pth_root(self) -> "FFPoly":
        """Racine ℓ-ième d'un polynôme en t^ℓ."""
        ell = self.ring.ell
        if any(not c.is_zero() for i, c in enumerate(self.coeffs) if i % ell):
            raise InputError("Le polynôme n'est pas une puissance ℓ-ième")
        field = self.ring.residue_field()
        return self._new(field.pth_root(field(c)) for c in self.coeffs[::ell])

    # --- factorisation ----------------------------------------------------

    def squarefree_decomposition(self) -> Factorization:
        """Décomposition f = ∏ g_i^i (caractéristique ℓ)."""
        f = self.monic()
        result: Factorization = []
        i = 1
        c = f.gcd(f.derivative())
        w = f.exact_div(c)
        while w.degree > 0:
            y = w.gcd(c)
            fac = w.exact_div(y)
            if fac.degree > 0:
                result.append((fac, i))
            w, c = y, c.exact_div(y)
            i += 1
        if c.degree > 0:
            ell = self.ring.ell
            for g, j in c.pth_root().squarefree_decomposition():
                result.append((g, j * ell))
        return result

    def distinct_degree_factors(self) -> List[Tuple["FFPoly", int]]:
        """Produits des facteurs irréductibles de même degré (f sans carré, unitaire)."""
        q = self.ring.residue_order
        x = self.t(self.ring)
        rest, h, i = self.monic(), x, 1
        result: List[Tuple[FFPoly, int]] = []
        while rest.degree >= 2 * i:
            h = h.powmod(q, rest)
            g = rest.gcd(h - x)
            if g.degree > 0:
                result.append((g, i))
                rest = rest.exact_div(g)
                h = h % rest
            i += 1
        if rest.degree > 0:
            result.append((rest, rest.degree))
        return result

    def _splitting_candidate(self, degree: int, rng: random.Random) -> "FFPoly":
        field = self.ring.residue_field()
        a = self._new(field.random_element(rng) for _ in range(self.degree))
        if a.degree < 1:
            return a
        q = field.order
        if field.ell == 2:
            # application trace F_{q^d} → F_2
            acc, power = a % self, a % self
            for _ in range(field.degree * degree - 1):
                power = (power * power) % self
                acc = acc + power
            return acc
        return a.powmod((q ** degree - 1) // 2, self) - 1

    def equal_degree_factors(self, degree: int, rng: random.Random) -> List["FFPoly"]:
        """Scinde un produit unitaire de facteurs irréductibles de degré `degree`."""
        f = self.monic()
        if f.degree == degree:
            return [f]
        while True:
            candidate = f._splitting_candidate(degree, rng)
            g = f.gcd(candidate)
            if 0 < g.degree < f.degree:
                logger.debug(f"Scindage de degré {degree} : {g.degree} + {f.degree - g.degree}")
                return (g.equal_degree_factors(degree, rng)
                        + f.exact_div(g).equal_degree_factors(degree, rng))

    def factor(self, seed: int = 0) -> Factorization:
        """Factorisation complète, facteurs unitaires triés."""
        if self.is_zero():
            raise InputError("Factorisation du polynôme nul")
        rng = random.Random(seed)
        result: Factorization = []
        for part, multiplicity in self.squarefree_decomposition():
            for block, degree in part.distinct_degree_factors():
                for irreducible in block.equal_degree_factors(degree, rng):
                    result.append((irreducible, multiplicity))
        return sorted(result, key=lambda item: item[0].sort_key())

    def is_irreducible(self) -> bool:
        """Test de Rabin."""
        n = self.degree
        if n < 1:
            return False
        if n == 1:
            return True
        f = self.monic()
        q = self.ring.residue_order
        x = self.t(self.ring)
        if x.powmod(q ** n, f) != x % f:
            return False
        for r in sympy.primefactors(n):
            if f.gcd(x.powmod(q ** (n // r), f) - x).degree > 0:
                return False
        return True


def ff_factor(f: FFPoly, seed: int = 0) -> Factorization:
    """
    Factorise f sur F_{ℓ^m} : liste triée de (facteur irréductible unitaire, multiplicité).

    Example:
        >>> f = FFPoly.from_ints(FiniteField(5), [4, 3, 3, 4, 1])
        >>> [(str(g), e) for g, e in ff_factor(f)]
        [('t + 3', 2), ('t + 4', 2)]
    """
    return f.factor(seed)


def is_irreducible(f: FFPoly) -> bool:
    return f.is_irreducible()


class PolyRing:
    """Fabrique de polynômes de W[t] utilisée comme « anneau » par les matrices."""

    __slots__ = ("base", "poly_cls")

    def __init__(self, base: WittRing):
        self.base = base
        self.poly_cls = FFPoly if base.precision == 1 else WittPoly

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.base == other.base

    def __hash__(self) -> int:
        return hash(("PolyRing", self.base))

    def __repr__(self) -> str:
        return f"{self.base!r}[t]"

    def __call__(self, value=0) -> WittPoly:
        if isinstance(value, WittPoly):
            return value if value.ring == self.base else value.change_ring(self.base)
        return self.poly_cls(self.base, [self.base(value)])

    def zero(self) -> WittPoly:
        return self.poly_cls(self.base, [])

    def one(self) -> WittPoly:
        return self(1)

    def t(self) -> WittPoly:
        return self.poly_cls.t(self.base)

    def residue(self) -> "PolyRing":
        return PolyRing(self.base.residue_field())
