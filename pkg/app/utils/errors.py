"""
Hiérarchie des exceptions de torsion_atlas.

Chaque famille porte le code de sortie que la CLI renvoie lorsqu'elle
l'intercepte :

- 2 : entrée invalide ou précondition violée
- 3 : polynôme de Weil rejeté par la validation
- 4 : précision ℓ-adique épuisée malgré les relèvements adaptatifs
- 5 : assertion interne (ne doit jamais arriver)
"""
from typing import Optional


class TorsionAtlasError(Exception):
    """Erreur de base de la bibliothèque."""

    exit_code: int = 2

    def __init__(self, message: Optional[str] = None):
        super().__init__(message or self.__class__.__doc__ or self.__class__.__name__)
        self.message = str(self)


# --- Erreurs d'entrée (code 2) ---------------------------------------------

class InputError(TorsionAtlasError):
    """Entrée invalide."""


class MalformedPolynomial(InputError):
    """Polynôme mal formé."""


class NotPrimePower(InputError):
    """q n'est pas une puissance d'un nombre premier."""


class EllEqualsP(InputError):
    """ℓ doit être différent de la caractéristique p."""


class NotSquarefree(InputError):
    """Le polynôme de Weil n'est pas sans facteur carré."""


class WrongDegree(InputError):
    """Degré du polynôme non supporté."""


class NotCoprime(InputError):
    """Les groupes de facteurs modulo ℓ ne sont pas premiers entre eux."""


class FactorizationMismatch(InputError):
    """Le produit des groupes ne reproduit pas la réduction modulo ℓ."""


class DimensionMismatch(InputError):
    """Dimensions incompatibles."""


class NotDominated(InputError):
    """Le polygone de Newton ne domine pas le polygone de Young."""


class NotNilpotent(InputError):
    """La matrice n'est pas nilpotente."""


class NotIrreducible(InputError):
    """Le polynôme résiduel n'est pas irréductible."""


class NotPolynomial(InputError):
    """Une division exacte de polynômes a échoué."""


class SingularPresentation(InputError):
    """La présentation est singulière modulo ℓ."""


class ZeroConstantTerm(InputError):
    """Le terme constant est nul."""


class BadBVector(InputError):
    """Le b-vecteur ne vérifie pas Σ r·b_r = 16."""


class CharacteristicTwo(InputError):
    """La caractéristique 2 est exclue pour les surfaces de Kummer."""


# --- Validation de Weil (code 3) --------------------------------------------

class WeilValidationError(TorsionAtlasError):
    """Polynôme de Weil rejeté."""

    exit_code = 3


class FunctionalEquationViolated(WeilValidationError):
    """L'équation fonctionnelle a_{2g−i} = q^{g−i}·a_i n'est pas satisfaite."""


class RootModulusSuspect(WeilValidationError):
    """Une racine complexe n'a pas le module √q."""


# --- Précision (code 4) -----------------------------------------------------

class PrecisionExhausted(TorsionAtlasError):
    """Précision ℓ-adique insuffisante."""

    exit_code = 4


# --- Erreurs internes (code 5) ----------------------------------------------

class InternalError(TorsionAtlasError):
    """Assertion interne violée."""

    exit_code = 5


class UnpairedFactor(InternalError):
    """Un facteur local n'a pas de partenaire dual."""


class UnreachableCase(InternalError):
    """Branche de classification inatteignable."""
