"""Published reference data for the (n=1, l=0, K=2) state and the
closed-form eps_1..eps_4, embedded so validation needs no external files.

The symbolic forms are stored as factored prefactor * bracket exactly as
published and expanded on load; ``SYMBOLIC_EPS`` holds the expanded forms.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from hpmkit.exact import PolyNL, format_poly, format_rational, parse_poly

_COEFFS_N1_L0 = (
    "3/8",
    "-159/1024",
    "17967/65536",
    "-15522195/16777216",
    "5189052801/1073741824",
    "-4896676641339/137438953472",
    "3094900497137871/8796093022208",
    "-20233178231139761499/4503599627370496",
    "20808558827825859998445/288230376151711744",
    "-52693485465369543566065089/36893488147419103232",
    "80639435078901048406195920633/2361183241434822606848",
    "-587353055515797037508553136130823/604462909807314587353088",
    "1255613239147236284205667622925365349/38685626227668133590597632",
    "-6229668057619980010555555519950165544755/4951760157141521099596496896",
    "17753264589549239693872523415436400485638255/316912650057057350374175801344",
    "-921721759137179716887942948086717222595277533675/324518553658426726783156020576256",
    "3379056665253674076167201632469154672196055608756005/20769187434139310514121985316880384",
    "-27797116247667972439940810526714208588100705850127986405/2658455991569831745807614120560689152",
    "127484555261829518463134910686385252583016203699835125715445/170141183460469231731687303715884105728",
    "-2593203450314371618931792865686398116783507010792581025252777725/43556142965880123323311949751266331066368",
)

# (sign, power of (2n-1), denominator, bracket in canonical text form)
_SYMBOLIC_FACTORED = (
    (1, 2, 8, "5*n^2 - 3*l^2 - 5*n + 3"),
    (-1, 6, 1024,
     "143*n^4 - 286*n^3 - 90*n^2*l^2 - 21*l^4 + 582*n^2 + 90*n*l^2"
     " - 138*l^2 - 439*n + 159"),
    (1, 10, 65536,
     "6120*n^6 - 18360*n^5 - 5220*n^4*l^2 + 68835*n^4 + 10440*n^3*l^2 + 231*l^4"
     " - 132*l^6 - 107070*n^3 - 35130*n^2*l^2 + 115970*n^2 + 29910*n*l^2"
     " - 18066*l^2 - 65495*n + 17967"),
    (-1, 14, 16777216,
     "1502291*n^8 - 1640100*n^6*l^2 + 251370*n^4*l^4 - 3060*n^2*l^6 - 4005*l^8"
     " - 6009164*n^7 + 4920300*n^5*l^2 - 502740*n^3*l^4 + 3060*n*l^6"
     " + 33863592*n^6 - 26018580*n^4*l^2 + 2563680*n^2*l^4 - 4020*l^6"
     " - 80558702*n^5 + 43836660*n^3*l^2 - 2312310*n*l^4"
     " + 153888490*n^4 - 64292340*n^2*l^2 + 1991850*l^4"
     " - 180523168*n^3 + 43194060*n*l^2 + 145662172*n^2 - 17506020*l^2"
     " - 67825511*n + 15522195"),
)


def _expand(sign: int, power: int, den: int, bracket: str) -> PolyNL:
    base = 2 * PolyNL.n() - 1
    return Fraction(sign, den) * base**power * parse_poly(bracket)


@dataclass(frozen=True)
class ReferenceData:
    coeffs_n1_l0: tuple[Fraction, ...]
    symbolic_eps: tuple[PolyNL, ...]

    def digest(self) -> str:
        h = hashlib.sha256()
        for c in self.coeffs_n1_l0:
            h.update(format_rational(c).encode() + b"\n")
        for p in self.symbolic_eps:
            h.update(format_poly(p).encode() + b"\n")
        return h.hexdigest()


def _build() -> ReferenceData:
    return ReferenceData(
        coeffs_n1_l0=tuple(Fraction(s) for s in _COEFFS_N1_L0),
        symbolic_eps=tuple(_expand(*f) for f in _SYMBOLIC_FACTORED),
    )


REFERENCE = _build()
COEFFS_N1_L0 = REFERENCE.coeffs_n1_l0
SYMBOLIC_EPS = REFERENCE.symbolic_eps

# sha256 over the canonical text of the data above; guards against edits
REFERENCE_DIGEST = "141cd97213af5721461c8f674bfa21b6364538198a22be941091b627811bc55d"
if REFERENCE.digest() != REFERENCE_DIGEST:
    raise RuntimeError("embedded reference data corrupted")
