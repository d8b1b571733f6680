"""
Anneaux ℓ-adiques non ramifiés tronqués W = S/ℓ^N S et corps finis.

W est présenté comme (ℤ/ℓ^N)[y]/H(y), où H est un relèvement unitaire du
polynôme résiduel irréductible h̄ de degré m. Le cas m = 1 (h̄ absent) est
l'anneau premier ℤ/ℓ^N ; le cas N = 1 est le corps fini F_{ℓ^m}.

Les éléments sont des tuples de m entiers réduits dans [0, ℓ^N).
"""
import itertools
import random
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import sympy

from app.algebra.extval import TOP, ExtVal, ext_min
from app.utils.errors import InputError, NotIrreducible

# Types personnalisés pour améliorer la lisibilité
Residues = Tuple[int, ...]
Scalar = Union[int, "WittElem"]


@lru_cache(maxsize=None)
def _residue_is_irreducible(ell: int, residue: Residues) -> bool:
    from app.algebra.polynomials import FFPoly

    return FFPoly.from_ints(FiniteField(ell), residue).is_irreducible()


def _int_valuation(value: int, ell: int, modulus: int) -> ExtVal:
    value %= modulus
    if value == 0:
        return TOP
    k = 0
    while value % ell == 0:
        value //= ell
        k += 1
    return k


class WittRing:
    """
    Anneau (ℤ/ℓ^N)[y]/H(y).

    Args:
        ell (int): nombre premier ℓ
        residue_poly (Optional[Sequence[int]]): h̄ unitaire, terme constant en
            premier ; None (ou un degré 1) pour l'anneau premier
        precision (int): N ≥ 1
        lift_poly (Optional[Sequence[int]]): H ≡ h̄ mod ℓ, par défaut les
            représentants canoniques de h̄
        check (bool): vérifier l'irréductibilité de h̄

    Raises:
        InputError: ℓ non premier ou précision invalide
        NotIrreducible: h̄ réductible sur F_ℓ
    """

    __slots__ = ("ell", "residue_poly", "lift_poly", "precision", "modulus", "degree", "_key")

    def __init__(
        self,
        ell: int,
        residue_poly: Optional[Sequence[int]] = None,
        precision: int = 1,
        lift_poly: Optional[Sequence[int]] = None,
        check: bool = True,
    ):
        if not sympy.isprime(ell):
            raise InputError(f"ℓ = {ell} n'est pas premier")
        if precision < 1:
            raise InputError(f"Précision invalide : {precision}")
        residue: Optional[Residues] = None
        if residue_poly is not None:
            residue = tuple(int(c) % ell for c in residue_poly)
            while residue and residue[-1] == 0:
                residue = residue[:-1]
            if not residue or residue[-1] != 1:
                raise NotIrreducible("Le polynôme résiduel doit être unitaire")
            if len(residue) == 2:
                residue = None
        self.ell = ell
        self.residue_poly = residue
        self.precision = precision
        self.modulus = ell ** precision
        self.degree = 1 if residue is None else len(residue) - 1
        if residue is None:
            self.lift_poly = None
        else:
            lift = tuple(int(c) for c in (lift_poly if lift_poly is not None else residue))
            if len(lift) != len(residue) or any((a - b) % ell for a, b in zip(lift, residue)) or lift[-1] != 1:
                raise InputError("Le relèvement H doit être unitaire et ≡ h̄ mod ℓ")
            self.lift_poly = tuple(c % self.modulus for c in lift)
            if check and not _residue_is_irreducible(ell, residue):
                raise NotIrreducible(f"h̄ = {list(reversed(residue))} est réductible sur F_{ell}")
        self._key = (ell, residue, precision, self.lift_poly)

    def __setattr__(self, name, value):
        if hasattr(self, "_key"):
            raise AttributeError("WittRing est immuable")
        object.__setattr__(self, name, value)

    def __eq__(self, other) -> bool:
        return isinstance(other, WittRing) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self.residue_poly is None:
            return f"W(ℓ={self.ell}, N={self.precision})"
        return f"W(ℓ={self.ell}, h̄={list(reversed(self.residue_poly))}, N={self.precision})"

    # --- structure ---------------------------------------------------------

    @property
    def residue_order(self) -> int:
        """Cardinal ℓ^m du corps résiduel."""
        return self.ell ** self.degree

    @property
    def is_prime_ring(self) -> bool:
        return self.residue_poly is None

    def residue_field(self) -> "FiniteField":
        return FiniteField(self.ell, self.residue_poly)

    def prime_ring(self) -> "WittRing":
        return WittRing(self.ell, None, self.precision)

    def change_precision(self, precision: int) -> "WittRing":
        if precision == self.precision:
            return self
        return WittRing(self.ell, self.residue_poly, precision, self.lift_poly, check=False)

    # --- éléments ----------------------------------------------------------

    def _reduce(self, values: Iterable[int]) -> Residues:
        coeffs = [int(v) for v in values]
        m, mod = self.degree, self.modulus
        if m > 1 and len(coeffs) > m:
            lift = self.lift_poly
            for top in range(len(coeffs) - 1, m - 1, -1):
                c = coeffs[top]
                if c:
                    base = top - m
                    for j in range(m):
                        coeffs[base + j] -= c * lift[j]
                coeffs[top] = 0
        coeffs = coeffs[:m] + [0] * (m - len(coeffs[:m]))
        return tuple(c % mod for c in coeffs)

    def _make(self, coeffs: Residues) -> "WittElem":
        elem = WittElem.__new__(WittElem)
        elem.ring = self
        elem.coeffs = coeffs
        return elem

    def __call__(self, value=0) -> "WittElem":
        if isinstance(value, WittElem):
            if value.ring == self:
                return value
            if value.ring.ell != self.ell:
                raise InputError("Changement de caractéristique résiduelle impossible")
            if value.ring.degree == 1:
                return self._make(self._reduce(value.coeffs))
            if value.ring.residue_poly != self.residue_poly:
                raise InputError(f"Éléments de {value.ring!r} non plongeables dans {self!r}")
            return self._make(self._reduce(value.coeffs))
        if isinstance(value, int):
            return self._make(self._reduce([value]))
        return self._make(self._reduce(value))

    def zero(self) -> "WittElem":
        return self(0)

    def one(self) -> "WittElem":
        return self(1)

    def gen(self) -> "WittElem":
        """Classe de y (générateur de l'extension)."""
        if self.degree == 1:
            raise InputError("L'anneau premier n'a pas de générateur y")
        return self([0, 1])

    def random_element(self, rng: random.Random) -> "WittElem":
        return self._make(tuple(rng.randrange(self.modulus) for _ in range(self.degree)))


class FiniteField(WittRing):
    """Corps fini F_{ℓ^m} = F_ℓ[y]/h̄ (précision 1)."""

    __slots__ = ()

    def __init__(self, ell: int, residue_poly: Optional[Sequence[int]] = None, check: bool = True):
        super().__init__(ell, residue_poly, 1, None, check)

    def __repr__(self) -> str:
        if self.residue_poly is None:
            return f"F_{self.ell}"
        return f"F_{self.ell}^{self.degree}[h̄={list(reversed(self.residue_poly))}]"

    @property
    def order(self) -> int:
        return self.residue_order

    def residue_field(self) -> "FiniteField":
        return self

    def elements(self) -> Iterator["WittElem"]:
        for coeffs in itertools.product(range(self.ell), repeat=self.degree):
            yield self._make(tuple(coeffs))

    def inverse(self, value: "WittElem") -> "WittElem":
        if value.is_zero():
            raise ZeroDivisionError("Inversion de 0 dans un corps fini")
        return value ** (self.order - 2)

    def pth_root(self, value: "WittElem") -> "WittElem":
        """Racine ℓ-ième : x^{ℓ^{m−1}}."""
        return value ** (self.ell ** (self.degree - 1))


class WittElem:
    """Élément de W ; immuable, opérations mixtes avec les entiers."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: WittRing, coeffs: Sequence[int]):
        self.ring = ring
        self.coeffs = ring._reduce(coeffs)

    # --- coercition --------------------------------------------------------

    def _coerce(self, other) -> Optional["WittElem"]:
        if isinstance(other, WittElem):
            return other if other.ring == self.ring else self.ring(other)
        if isinstance(other, int):
            return self.ring(other)
        return None

    # --- arithmétique ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        mod = self.ring.modulus
        return self.ring._make(tuple((a + b) % mod for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "WittElem":
        mod = self.ring.modulus
        return self.ring._make(tuple(-a % mod for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        mod = self.ring.modulus
        return self.ring._make(tuple((a - b) % mod for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        if ring.degree == 1:
            return ring._make(((self.coeffs[0] * other.coeffs[0]) % ring.modulus,))
        prod = [0] * (2 * ring.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return ring._make(ring._reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "WittElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.ring.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, WittElem):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.ring.degree == 1:
            return f"{self.coeffs[0]} (mod {self.ring.ell}^{self.ring.precision})"
        return f"{list(self.coeffs)} (mod {self.ring.ell}^{self.ring.precision})"

    # --- invariants locaux ---------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> ExtVal:
        """Plus grand k < N avec ℓ^k | x, ou TOP si x = 0 à la précision N."""
        ring = self.ring
        return ext_min(_int_valuation(c, ring.ell, ring.modulus) for c in self.coeffs)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def residue(self) -> "WittElem":
        field = self.ring.residue_field()
        return field._make(tuple(c % self.ring.ell for c in self.coeffs))

    def lift_int(self) -> int:
        """Représentant canonique dans [0, ℓ^N) (anneau premier)."""
        if self.ring.degree != 1:
            raise InputError("lift_int n'a de sens que dans l'anneau premier")
        return self.coeffs[0]

    def centered(self) -> int:
        """Représentant symétrique dans (−ℓ^N/2, ℓ^N/2] (anneau premier)."""
        value, mod = self.lift_int(), self.ring.modulus
        return value - mod if value > mod // 2 else value

    def inverse(self) -> "WittElem":
        """Inverse d'une unité par itération de Newton y ← y(2 − xy)."""
        if not self.is_unit():
            raise ZeroDivisionError(f"{self!r} n'est pas inversible")
        field = self.ring.residue_field()
        seed = self.residue() ** (field.order - 2)
        y = self.ring(seed.coeffs)
        for _ in range(self.ring.precision.bit_length() + 1):
            y = y * (2 - self * y)
        return y

    def exact_div_ell(self, power: int) -> "WittElem":
        """
        x / ℓ^power sur les représentants canoniques.

        Le résultat n'est significatif que modulo ℓ^{N−power}.

        Raises:
            ArithmeticError: si ℓ^power ne divise pas x
        """
        factor = self.ring.ell ** power
        if any(c % factor for c in self.coeffs):
            raise ArithmeticError(f"{self!r} n'est pas divisible par ℓ^{power}")
        return self.ring._make(tuple(c // factor for c in self.coeffs))

    def to_json(self):
        return list(self.coeffs)


def teichmueller_lift(residue: Union[WittElem, int], ring: WittRing) -> WittElem:
    """
    Relèvement de Teichmüller : l'unique x ≡ résidu mod ℓ avec x^{ℓ^m} = x.

    Args:
        residue: élément du corps résiduel de `ring` (ou entier)
        ring (WittRing): anneau cible

    Returns:
        WittElem: le relèvement à la précision de `ring`

    Example:
        >>> teichmueller_lift(2, WittRing(5, precision=2))
        7 (mod 5^2)
    """
    x = ring(residue.coeffs if isinstance(residue, WittElem) else residue)
    order = ring.residue_order
    for _ in range(ring.precision - 1):
        x = x ** order
    return x
