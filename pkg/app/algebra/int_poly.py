"""
Polynômes à coefficients entiers, terme constant en premier.

Toute l'arithmétique est exacte. Les sommes de Newton servent au changement
de base f ↦ f_r (racines ω ↦ ω^r) et aux puissances extérieures.
"""
from typing import Iterable, List, Sequence, Tuple, Union

import sympy

from app.utils.errors import MalformedPolynomial, NotPolynomial

# Types personnalisés pour améliorer la lisibilité
Coefficients = Tuple[int, ...]


def _strip(coeffs: Iterable[int]) -> Coefficients:
    values = [int(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


class IntPoly:
    """Polynôme de ℤ[t] immuable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly est immuable")

    # --- constructeurs ----------------------------------------------------

    @classmethod
    def from_leading_first(cls, coeffs: Sequence[int]) -> "IntPoly":
        return cls(reversed(list(coeffs)))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        result = cls([1])
        for root in roots:
            result = result * cls([-root, 1])
        return result

    @classmethod
    def from_power_sums(cls, degree: int, sums: Sequence[int]) -> "IntPoly":
        """
        Polynôme unitaire de degré `degree` dont les sommes de Newton sont
        sums[0] = p_1, …, sums[degree-1] = p_degree.

        Raises:
            NotPolynomial: si les sommes ne proviennent pas d'un polynôme entier
        """
        c: List[int] = [1]
        for k in range(1, degree + 1):
            acc = sums[k - 1] + sum(c[i] * sums[k - i - 1] for i in range(1, k))
            if acc % k:
                raise NotPolynomial(f"Sommes de Newton non entières au rang {k}")
            c.append(-acc // k)
        return cls.from_leading_first(c)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "IntPoly":
        return cls.from_leading_first([int(c) for c in poly.all_coeffs()])

    # --- propriétés -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def leading_first(self) -> List[int]:
        return list(reversed(self.coeffs))

    # --- arithmétique -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPoly":
        if exponent < 0:
            raise ValueError("Exposant négatif")
        result, base = IntPoly([1]), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __call__(self, x):
        """Évaluation de Horner ; x peut être un entier ou un élément d'anneau."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"IntPoly({self.leading_first()})"

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())

    def divmod_monic(self, divisor: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Division euclidienne par un polynôme unitaire (reste exact dans ℤ[t])."""
        if not divisor.is_monic:
            raise MalformedPolynomial("Le diviseur doit être unitaire")
        rem = list(self.coeffs)
        dq = len(rem) - divisor.degree
        quo = [0] * max(dq, 0)
        for k in range(dq - 1, -1, -1):
            c = rem[k + divisor.degree]
            quo[k] = c
            if c:
                for j, b in enumerate(divisor.coeffs):
                    rem[k + j] -= c * b
        return IntPoly(quo), IntPoly(rem[:divisor.degree])

    def exact_div(self, divisor: "IntPoly") -> "IntPoly":
        """Quotient exact ; NotPolynomial si le reste est non nul."""
        quo, rem = self.divmod_monic(divisor)
        if not rem.is_zero():
            raise NotPolynomial(f"{self!r} n'est pas divisible par {divisor!r}")
        return quo

    def exact_div_int(self, k: int) -> "IntPoly":
        if k == 0 or any(c % k for c in self.coeffs):
            raise NotPolynomial(f"{self!r} n'est pas divisible par {k}")
        return IntPoly(c // k for c in self.coeffs)

    # --- transformations --------------------------------------------------

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, a: int) -> "IntPoly":
        """f(t + a)."""
        acc = IntPoly()
        step = IntPoly([a, 1])
        for c in reversed(self.coeffs):
            acc = acc * step + c
        return acc

    def scale(self, c: int) -> "IntPoly":
        """f(c·t)."""
        return IntPoly(a * c ** i for i, a in enumerate(self.coeffs))

    def reverse(self, degree: int = None) -> "IntPoly":
        """t^d·f(1/t) pour d = `degree` (par défaut deg f)."""
        d = self.degree if degree is None else degree
        padded = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPoly(reversed(padded))

    def power_sums(self, count: int) -> List[int]:
        """
        Sommes de Newton p_1, …, p_count des racines (f unitaire).

        Example:
            >>> IntPoly.from_roots([1, 2, 3, 6]).power_sums(2)
            [12, 50]
        """
        if not self.is_monic:
            raise MalformedPolynomial("Sommes de Newton définies pour un polynôme unitaire")
        d = self.degree
        c = self.leading_first()
        sums: List[int] = []
        for k in range(1, count + 1):
            acc = k * c[k] if k <= d else 0
            acc += sum(c[i] * sums[k - i - 1] for i in range(1, min(k - 1, d) + 1))
            sums.append(-acc)
        return sums

    def base_change(self, r: int) -> "IntPoly":
        """f_r = ∏ (t − ω^r), racines ω de f."""
        if r == 1:
            return self
        sums = self.power_sums(self.degree * r)
        return IntPoly.from_power_sums(self.degree, [sums[r * k - 1] for k in range(1, self.degree + 1)])

    # --- conversions ------------------------------------------------------

    def to_sympy(self, symbol: sympy.Symbol = None) -> sympy.Poly:
        t = symbol if symbol is not None else sympy.Symbol("t")
        return sympy.Poly(self.leading_first() or [0], t, domain="ZZ")

    def reduce(self, ell: int):
        """Réduction modulo ℓ dans F_ℓ[t]."""
        from app.algebra.witt_ring import FiniteField
        from app.algebra.polynomials import FFPoly

        return FFPoly.from_ints(FiniteField(ell), self.coeffs)

    def to_witt(self, ring):
        from app.algebra.polynomials import WittPoly

        return WittPoly.from_ints(ring, self.coeffs)

    def to_json(self) -> List[int]:
        return list(self.coeffs)
