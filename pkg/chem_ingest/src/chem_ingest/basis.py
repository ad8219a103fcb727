"""Minimal STO-3G basis set (s and p shells, first two rows)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ANGSTROM_TO_BOHR = 1.8897259886

_S_COEFS = (0.15432897, 0.53532814, 0.44463454)
_SP_S_COEFS = (-0.09996723, 0.39951283, 0.70011547)
_SP_P_COEFS = (0.15591627, 0.60768372, 0.39195739)

# element -> (Z, 1s exponents, optional 2sp exponents)
STO3G = {
    "H": (1, (3.42525091, 0.62391373, 0.16885540), None),
    "He": (2, (6.36242139, 1.15892300, 0.31364979), None),
    "Li": (3, (16.1195750, 2.9362007, 0.7946505),
           (0.6362897, 0.1478601, 0.0480887)),
    "Be": (4, (30.1678710, 5.4951153, 1.4871927),
           (1.3148331, 0.3055389, 0.0993707)),
    "B": (5, (48.7911130, 8.8873622, 2.4052670),
          (2.2369561, 0.5198205, 0.1690618)),
    "C": (6, (71.6168370, 13.0450960, 3.5305122),
          (2.9412494, 0.6834831, 0.2222899)),
    "N": (7, (99.1061690, 18.0523120, 4.8856602),
          (3.7804559, 0.8784966, 0.2857144)),
    "O": (8, (130.7093200, 23.8088610, 6.4436083),
          (5.0331513, 1.1695961, 0.3803890)),
    "F": (9, (166.6791300, 30.3608120, 8.2168207),
          (6.4648032, 1.5022812, 0.4885885)),
}


@dataclass
class BasisFunction:
    """Contracted Cartesian Gaussian: sum_k c_k N_k x^i y^j z^k exp(-a_k r^2)."""

    center: np.ndarray
    lmn: tuple[int, int, int]
    exps: np.ndarray
    coefs: np.ndarray  # includes primitive norms; contraction normalized

    def __post_init__(self):
        # runtime import: integrals duck-types BasisFunction, no cycle
        from .integrals import overlap_bf
        self.coefs = self.coefs * _primitive_norms(self.exps, self.lmn)
        self.coefs = self.coefs / np.sqrt(overlap_bf(self, self))


def _primitive_norms(exps, lmn):
    i, j, k = lmn
    l_total = i + j + k
    dfact = _double_factorial(2 * i - 1) * _double_factorial(2 * j - 1) \
        * _double_factorial(2 * k - 1)
    return ((2.0 * exps / np.pi) ** 0.75
            * (4.0 * exps) ** (l_total / 2.0) / np.sqrt(dfact))


def _double_factorial(n: int) -> float:
    out = 1.0
    while n > 1:
        out *= n
        n -= 2
    return out


def build_basis(geometry: list[tuple[str, float, float, float]]):
    """Basis functions and nuclear charges for a geometry in Angstrom.

    Returns (functions, charges, centers_bohr).  Function order per atom:
    1s, then for heavier atoms 2s, 2px, 2py, 2pz.
    """
    functions: list[BasisFunction] = []
    charges: list[float] = []
    centers: list[np.ndarray] = []
    for element, x, y, z in geometry:
        if element not in STO3G:
            raise ValueError(f"no STO-3G parameters for element {element!r}")
        z_charge, exps_1s, exps_2sp = STO3G[element]
        center = np.array([x, y, z], dtype=float) * ANGSTROM_TO_BOHR
        charges.append(float(z_charge))
        centers.append(center)
        functions.append(BasisFunction(center, (0, 0, 0),
                                       np.array(exps_1s), np.array(_S_COEFS)))
        if exps_2sp is not None:
            functions.append(BasisFunction(center, (0, 0, 0),
                                           np.array(exps_2sp),
                                           np.array(_SP_S_COEFS)))
            for lmn in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                functions.append(BasisFunction(center, lmn,
                                               np.array(exps_2sp),
                                               np.array(_SP_P_COEFS)))
    return functions, np.array(charges), np.array(centers)
