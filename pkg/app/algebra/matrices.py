"""
Matrices sur W ou sur W[t].

Le polynôme caractéristique est calculé par l'algorithme de Berkowitz, qui
n'utilise que l'addition et la multiplication : il reste valable sur un
anneau tronqué et sur un anneau de polynômes. La forme de Smith sur F[t]
suit l'algorithme euclidien classique (pivot de degré minimal, à égalité
l'indice de ligne le plus petit).
"""
from typing import Callable, Iterable, List, NamedTuple, Sequence, Tuple, Union

from app.algebra.polynomials import FFPoly, PolyRing, WittPoly
from app.algebra.witt_ring import FiniteField, WittElem, WittRing
from app.utils.errors import DimensionMismatch, InputError

# Types personnalisés pour améliorer la lisibilité
Ring = Union[WittRing, PolyRing]
Rows = Tuple[Tuple[object, ...], ...]


class WittMatrix:
    """Matrice rectangulaire immuable à coefficients dans `ring`."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring: Ring, rows: Iterable[Iterable], ncols: int = None):
        built = tuple(tuple(ring(x) for x in row) for row in rows)
        widths = {len(row) for row in built}
        if len(widths) > 1:
            raise DimensionMismatch("Lignes de longueurs différentes")
        self.ring = ring
        self.rows: Rows = built
        self.nrows = len(built)
        self.ncols = widths.pop() if widths else (ncols or 0)

    # --- constructeurs ----------------------------------------------------

    @classmethod
    def from_function(cls, ring: Ring, nrows: int, ncols: int, entry: Callable[[int, int], object]) -> "WittMatrix":
        return cls(ring, [[entry(i, j) for j in range(ncols)] for i in range(nrows)], ncols)

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int = None) -> "WittMatrix":
        ncols = nrows if ncols is None else ncols
        return cls.from_function(ring, nrows, ncols, lambda i, j: 0)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "WittMatrix":
        return cls.from_function(ring, n, n, lambda i, j: 1 if i == j else 0)

    @classmethod
    def diagonal(cls, ring: Ring, values: Sequence) -> "WittMatrix":
        n = len(values)
        return cls.from_function(ring, n, n, lambda i, j: values[i] if i == j else 0)

    # --- accès ------------------------------------------------------------

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        return self.rows[i][j]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> Tuple:
        return self.rows[i]

    def column(self, j: int) -> Tuple:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "WittMatrix":
        return WittMatrix.from_function(self.ring, self.ncols, self.nrows, lambda i, j: self.rows[j][i])

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "WittMatrix":
        return WittMatrix(self.ring, [[self.rows[i][j] for j in col_indices] for i in row_indices], len(col_indices))

    def map(self, func: Callable, ring: Ring) -> "WittMatrix":
        return WittMatrix(ring, [[func(x) for x in row] for row in self.rows], self.ncols)

    # --- arithmétique -----------------------------------------------------

    def _check_same_shape(self, other: "WittMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"Formes {self.shape} et {other.shape} incompatibles")

    def __add__(self, other: "WittMatrix") -> "WittMatrix":
        self._check_same_shape(other)
        return WittMatrix.from_function(self.ring, self.nrows, self.ncols,
                                        lambda i, j: self.rows[i][j] + other.rows[i][j])

    def __sub__(self, other: "WittMatrix") -> "WittMatrix":
        self._check_same_shape(other)
        return WittMatrix.from_function(self.ring, self.nrows, self.ncols,
                                        lambda i, j: self.rows[i][j] - other.rows[i][j])

    def __neg__(self) -> "WittMatrix":
        return self.map(lambda x: -x, self.ring)

    def __mul__(self, other):
        if not isinstance(other, WittMatrix):
            scalar = self.ring(other)
            return self.map(lambda x: x * scalar, self.ring)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"Produit {self.shape} × {other.shape} impossible")
        zero = self.ring(0)
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for row in self.rows:
            line = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    acc = acc + a * b
                line.append(acc)
            out.append(line)
        return WittMatrix(self.ring, out, other.ncols)

    def __rmul__(self, scalar):
        return self * scalar

    def __matmul__(self, other: "WittMatrix") -> "WittMatrix":
        return self * other

    def __pow__(self, exponent: int) -> "WittMatrix":
        if not self.is_square or exponent < 0:
            raise DimensionMismatch("Puissance définie pour une matrice carrée et un exposant ≥ 0")
        result, base = WittMatrix.identity(self.ring, self.nrows), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, WittMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"WittMatrix({self.to_ints() if isinstance(self.ring, WittRing) and self.ring.degree == 1 else self.rows})"

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    # --- déterminant, polynôme caractéristique ------------------------------

    def _berkowitz(self) -> List:
        """Coefficients c_0 = 1, c_1, …, c_n de det(t·I − M), dominant en premier."""
        one, zero = self.ring(1), self.ring(0)
        n = self.nrows
        if n == 0:
            return [one]
        if n == 1:
            return [one, -self.rows[0][0]]
        a = self.rows[0][0]
        rest = list(range(1, n))
        R = self.submatrix([0], rest)
        C = self.submatrix(rest, [0])
        A = self.submatrix(rest, rest)
        powers = [C]
        for _ in range(n - 2):
            powers.append(A * powers[-1])
        diags = [one, -a] + [-(R * p)[0, 0] for p in powers]
        sub = A._berkowitz()
        out = []
        for i in range(n + 1):
            acc = zero
            for j in range(min(i + 1, n)):
                acc = acc + diags[i - j] * sub[j]
            out.append(acc)
        return out

    def charpoly_coefficients(self) -> List:
        if not self.is_square:
            raise DimensionMismatch("Polynôme caractéristique d'une matrice non carrée")
        return self._berkowitz()

    def charpoly(self) -> WittPoly:
        """det(t·I − M) dans W[t] (coefficients dans `ring`, qui doit être un WittRing)."""
        if not isinstance(self.ring, WittRing):
            raise InputError("charpoly() exige des coefficients dans un WittRing")
        cls = FFPoly if self.ring.precision == 1 else WittPoly
        return cls(self.ring, list(reversed(self.charpoly_coefficients())))

    def det(self):
        coeffs = self.charpoly_coefficients()
        return coeffs[-1] if self.nrows % 2 == 0 else -coeffs[-1]

    def adjugate(self) -> "WittMatrix":
        """adj(M) = (−1)^{n−1}(M^{n−1} + c_1 M^{n−2} + … + c_{n−1} I) (Cayley–Hamilton)."""
        coeffs = self.charpoly_coefficients()
        n = self.nrows
        acc = WittMatrix.zeros(self.ring, n)
        power = WittMatrix.identity(self.ring, n)
        for k in range(n - 1, -1, -1):
            acc = acc + power * coeffs[k]
            power = power * self
        return acc if n % 2 == 1 else -acc

    # --- algèbre linéaire sur un corps -------------------------------------

    def rank(self) -> int:
        """Rang sur un corps fini (précision 1)."""
        if not isinstance(self.ring, WittRing) or self.ring.precision != 1:
            raise InputError("rank() exige un corps fini")
        rows = [list(row) for row in self.rows]
        rank, col = 0, 0
        while rank < self.nrows and col < self.ncols:
            pivot = next((i for i in range(rank, self.nrows) if not rows[i][col].is_zero()), None)
            if pivot is None:
                col += 1
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = rows[rank][col].inverse()
            rows[rank] = [x * inv for x in rows[rank]]
            for i in range(self.nrows):
                if i != rank and not rows[i][col].is_zero():
                    factor = rows[i][col]
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
            rank += 1
            col += 1
        return rank

    def left_kernel(self) -> List[Tuple]:
        """Base du noyau à gauche {φ : φ·M = 0} sur un corps fini."""
        transposed = self.transpose()
        return transposed.right_kernel()

    def right_kernel(self) -> List[Tuple]:
        """Base du noyau {v : M·v = 0} sur un corps fini, en forme échelonnée réduite."""
        if not isinstance(self.ring, WittRing) or self.ring.precision != 1:
            raise InputError("right_kernel() exige un corps fini")
        rows = [list(row) for row in self.rows]
        pivots: List[int] = []
        rank = 0
        for col in range(self.ncols):
            pivot = next((i for i in range(rank, self.nrows) if not rows[i][col].is_zero()), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = rows[rank][col].inverse()
            rows[rank] = [x * inv for x in rows[rank]]
            for i in range(self.nrows):
                if i != rank and not rows[i][col].is_zero():
                    factor = rows[i][col]
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
            pivots.append(col)
            rank += 1
        zero, one = self.ring(0), self.ring(1)
        basis = []
        for free in (c for c in range(self.ncols) if c not in pivots):
            vector = [zero] * self.ncols
            vector[free] = one
            for r, pcol in enumerate(pivots):
                vector[pcol] = -rows[r][free]
            basis.append(tuple(vector))
        return basis

    # --- changements d'anneau ----------------------------------------------

    def reduce(self) -> "WittMatrix":
        """Réduction modulo ℓ des coefficients."""
        if isinstance(self.ring, PolyRing):
            return self.map(lambda p: p.reduce(), self.ring.residue())
        return self.map(lambda x: x.residue(), self.ring.residue_field())

    def change_ring(self, ring: Ring) -> "WittMatrix":
        return self.map(ring, ring)

    def expand_to_prime_ring(self) -> "WittMatrix":
        """Représentation régulière : chaque coefficient devient une matrice m×m sur ℤ/ℓ^N."""
        ring = self.ring
        if ring.degree == 1:
            return self if ring.is_prime_ring else self.change_ring(ring.prime_ring())
        m = ring.degree
        prime = ring.prime_ring()
        basis = [ring([0] * j + [1]) for j in range(m)]

        def entry(i: int, j: int) -> int:
            block = self.rows[i // m][j // m]
            return (block * basis[j % m]).coeffs[i % m]

        return WittMatrix.from_function(prime, self.nrows * m, self.ncols * m, entry)

    def to_ints(self) -> List[List[int]]:
        return [[x.lift_int() for x in row] for row in self.rows]

    def to_json(self) -> dict:
        ring = self.ring if isinstance(self.ring, WittRing) else self.ring.base
        if isinstance(self.ring, PolyRing):
            entries = [[[list(c.coeffs) for c in p.coeffs] for p in row] for row in self.rows]
        else:
            entries = [[list(x.coeffs) for x in row] for row in self.rows]
        return {
            "ell": ring.ell,
            "residue_poly": list(ring.residue_poly) if ring.residue_poly else None,
            "precision": ring.precision,
            "coeffs": entries,
        }


def kron(a: WittMatrix, b: WittMatrix) -> WittMatrix:
    """Produit de Kronecker : (A⊗B)[i·p+k][j·q+l] = A[i][j]·B[k][l]."""
    p, q = b.shape
    return WittMatrix.from_function(
        a.ring, a.nrows * p, a.ncols * q,
        lambda r, c: a.rows[r // p][c // q] * b.rows[r % p][c % q],
    )


def block_diag(ring: Ring, blocks: Sequence[WittMatrix]) -> WittMatrix:
    n = sum(block.nrows for block in blocks)
    m = sum(block.ncols for block in blocks)
    out = [[ring(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for block in blocks:
        for i in range(block.nrows):
            for j in range(block.ncols):
                out[r0 + i][c0 + j] = block.rows[i][j]
        r0 += block.nrows
        c0 += block.ncols
    return WittMatrix(ring, out, m)


class PolynomialSmithForm(NamedTuple):
    diagonal: List[FFPoly]
    U: WittMatrix
    V: WittMatrix


def polynomial_smith_form(matrix: WittMatrix) -> PolynomialSmithForm:
    """
    Forme de Smith d'une matrice sur F[t] : U·M·V = diag(d_1, …), d_i | d_{i+1}.

    Les entrées non nulles de la diagonale sont unitaires ; U et V sont
    unimodulaires (produits d'opérations élémentaires).

    Args:
        matrix (WittMatrix): matrice à coefficients dans PolyRing(corps fini)

    Returns:
        PolynomialSmithForm: diagonale, U et V
    """
    ring = matrix.ring
    if not isinstance(ring, PolyRing) or ring.base.precision != 1:
        raise InputError("polynomial_smith_form() exige des coefficients dans F[t]")
    n, m = matrix.shape
    a = [list(row) for row in matrix.rows]
    u = [list(row) for row in WittMatrix.identity(ring, n).rows]
    v = [list(row) for row in WittMatrix.identity(ring, m).rows]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor) -> None:
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target: int, source: int, factor) -> None:
        for row in a:
            row[target] = row[target] + factor * row[source]
        for row in v:
            row[target] = row[target] + factor * row[source]

    for k in range(min(n, m)):
        while True:
            candidates = [(a[i][j].degree, i, j) for i in range(k, n) for j in range(k, m) if not a[i][j].is_zero()]
            if not candidates:
                break
            _, pi, pj = min(candidates)
            swap_rows(k, pi)
            swap_cols(k, pj)
            pivot = a[k][k]
            dirty = False
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    quo, rem = divmod(a[i][k], pivot)
                    add_row(i, k, -quo)
                    dirty = dirty or not rem.is_zero()
            for j in range(k + 1, m):
                if not a[k][j].is_zero():
                    quo, rem = divmod(a[k][j], pivot)
                    add_col(j, k, -quo)
                    dirty = dirty or not rem.is_zero()
            if dirty:
                continue
            offender = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, m)
                             if not (a[i][j] % pivot).is_zero()), None)
            if offender is None:
                break
            add_row(k, offender[0], ring.one())
        if not a[k][k].is_zero():
            inv = a[k][k].leading.inverse()
            a[k] = [x.scale(inv) for x in a[k]]
            u[k] = [x.scale(inv) for x in u[k]]

    diagonal = [a[k][k] for k in range(min(n, m))]
    return PolynomialSmithForm(diagonal, WittMatrix(ring, u, n), WittMatrix(ring, v, m))
