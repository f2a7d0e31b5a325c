"""Two-qubit states with maximally mixed marginals (T-states).

Such a state is fixed, up to local unitaries, by the diagonal of its
correlation matrix, ``t = (t11, t22, t33)``; valid t-vectors form the
tetrahedron with vertices (1,1,-1), (1,-1,1), (-1,1,1), (-1,-1,-1), and the
state's eigenvalues are an affine image of t.  The separable T-states are
exactly the octahedron |t11| + |t22| + |t33| <= 1 (the intersection of the
tetrahedron with its mirror image), and on the spectrum side separability
reads: largest eigenvalue at most 1/2.

For a spectrum a >= b >= c >= d the information quantities compare the
quantum mutual information ceiling with what any classical arrangement of
the same eigenvalues can reach (natural log throughout):

    i_max_qmi   = 2 log 2 - H(a,b,c,d)
    i_min       = h(a+b) + h(a+c) - H(a,b,c,d)
    i_max_class = h(a+c) + h(b+c) - H(a,b,c,d)
    gamma_max   = i_max_qmi - i_max_class
    gamma_min   = i_max_qmi - i_min

``gamma_max`` is the irreducible gap between quantum and best-classical
mutual information; ``gamma_min`` the gap to the worst classical
arrangement.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from .core import EPSILON, ProbMatrix, Spectrum, binary_entropy, cmi

__all__ = [
    "LN2",
    "TVector",
    "tvector_from_spectrum",
    "spectrum_from_tvector",
    "DOMAIN_VERTICES",
    "Qubit2Informations",
    "qubit2_informations",
    "i_max_qmi",
    "i_min",
    "i_max_class",
    "gamma_max",
    "gamma_min",
    "separable_tstate",
    "absolutely_separable",
    "mems_concurrence",
    "BlochClassical",
    "bloch_classical",
    "TotalOrder2x2",
    "verify_total_order_2x2",
    "SCAN_FUNCTIONS",
    "octahedron_scan",
]

LN2 = math.log(2.0)


def _require_dim4(s: Spectrum) -> None:
    if s.dim != 4:
        raise ValueError(f"two-qubit spectrum needs 4 eigenvalues, got {s.dim}")


@dataclasses.dataclass(frozen=True)
class TVector:
    """Diagonal of the correlation matrix of a T-state."""

    t11: float
    t22: float
    t33: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.t11, self.t22, self.t33)

    def norm1(self) -> float:
        return abs(self.t11) + abs(self.t22) + abs(self.t33)

    def in_octahedron(self, tol: float = EPSILON) -> bool:
        """Whether the T-state with this correlation diagonal is separable."""
        return self.norm1() <= 1.0 + tol


def tvector_from_spectrum(s: Spectrum) -> TVector:
    """Correlation diagonal of the T-state with eigenvalues a >= b >= c >= d."""
    _require_dim4(s)
    a, b, c, d = s.values
    return TVector(t11=a - b + c - d, t22=-a + b + c - d, t33=a + b - c - d)


def spectrum_from_tvector(t: TVector) -> tuple[tuple[float, float, float, float], bool]:
    """Eigenvalue 4-tuple of the T-state with correlation diagonal t.

    Returns the raw (unsorted) tuple and whether all four are nonnegative,
    i.e. whether t lies in the tetrahedron of valid states.
    """
    u, v, w = t.t11, t.t22, t.t33
    a = (1.0 + u - v + w) / 4.0
    b = (1.0 - u + v + w) / 4.0
    c = (1.0 + u + v - w) / 4.0
    d = (1.0 - u - v - w) / 4.0
    return (a, b, c, d), all(x >= -EPSILON for x in (a, b, c, d))


#: Corners of the descending-spectrum domain used throughout: the pure-ish
#: boundary spectra at which the information gaps attain their extremes.
DOMAIN_VERTICES: tuple[Spectrum, ...] = (
    Spectrum((0.5, 0.5, 0.0, 0.0)),
    Spectrum((0.25, 0.25, 0.25, 0.25)),
    Spectrum((1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0)),
    Spectrum((0.5, 0.25, 0.25, 0.0)),
    Spectrum((0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0)),
)


def i_max_qmi(s: Spectrum) -> float:
    """Quantum mutual information of the T-state (marginals maximally mixed)."""
    _require_dim4(s)
    return 2.0 * LN2 - s.entropy()


def i_min(s: Spectrum) -> float:
    """Classical mutual information of the least informative 2x2 arrangement."""
    _require_dim4(s)
    a, b, c, _ = s.values
    return binary_entropy(a + b) + binary_entropy(a + c) - s.entropy()


def i_max_class(s: Spectrum) -> float:
    """Classical mutual information of the most informative 2x2 arrangement."""
    _require_dim4(s)
    a, b, c, _ = s.values
    return binary_entropy(a + c) + binary_entropy(b + c) - s.entropy()


def gamma_max(s: Spectrum) -> float:
    """Gap between the quantum mutual information and the best classical one."""
    _require_dim4(s)
    a, b, c, _ = s.values
    return 2.0 * LN2 - binary_entropy(a + c) - binary_entropy(b + c)


def gamma_min(s: Spectrum) -> float:
    """Gap between the quantum mutual information and the worst classical one."""
    _require_dim4(s)
    a, b, c, _ = s.values
    return 2.0 * LN2 - binary_entropy(a + b) - binary_entropy(a + c)


def separable_tstate(s: Spectrum) -> bool:
    """Separability of the T-state: largest eigenvalue at most 1/2."""
    _require_dim4(s)
    return s.values[0] <= 0.5 + EPSILON


def absolutely_separable(s: Spectrum) -> bool:
    """Separability after every global unitary: a <= c + 2 sqrt(b d)."""
    _require_dim4(s)
    a, b, c, d = s.values
    return a <= c + 2.0 * math.sqrt(max(b * d, 0.0)) + EPSILON


def mems_concurrence(s: Spectrum) -> float:
    """Concurrence of the maximally entangled mixed state with this spectrum."""
    _require_dim4(s)
    a, b, c, d = s.values
    return max(0.0, a - c - 2.0 * math.sqrt(max(b * d, 0.0)))


@dataclasses.dataclass(frozen=True)
class Qubit2Informations:
    """The five information quantities of one T-state spectrum."""

    i_max_qmi: float
    i_min: float
    i_max_class: float
    gamma_max: float
    gamma_min: float
    separable: bool


def qubit2_informations(s: Spectrum) -> Qubit2Informations:
    return Qubit2Informations(
        i_max_qmi=i_max_qmi(s),
        i_min=i_min(s),
        i_max_class=i_max_class(s),
        gamma_max=gamma_max(s),
        gamma_min=gamma_min(s),
        separable=separable_tstate(s),
    )


@dataclasses.dataclass(frozen=True)
class BlochClassical:
    """z-components of the local Bloch vectors and correlation after a
    classical relabelling of the eigenvalues."""

    r_a_z: float
    r_b_z: float
    t_z: float


def bloch_classical(
    s: Spectrum, tau: tuple[int, int, int, int] = (1, 2, 3, 4), conventional: bool = False
) -> BlochClassical:
    """Bloch data of the classical (diagonal) state with permuted eigenvalues.

    ``tau`` gives 1-based positions: the i-th slot reads eigenvalue number
    ``tau[i-1]``.  The plain convention keeps the 1/4 normalisation of the
    eigenprojector expansion; ``conventional=True`` rescales by 4 to the
    usual Bloch normalisation.
    """
    _require_dim4(s)
    if sorted(tau) != [1, 2, 3, 4]:
        raise ValueError(f"tau {tau!r} is not a permutation of (1, 2, 3, 4)")
    p1, p2, p3, p4 = (s.values[t - 1] for t in tau)
    scale = 4.0 if conventional else 1.0
    return BlochClassical(
        r_a_z=scale * (p1 + p2 - p3 - p4) / 4.0,
        r_b_z=scale * (p1 - p2 + p3 - p4) / 4.0,
        t_z=scale * (p1 - p2 - p3 + p4) / 4.0,
    )


@dataclasses.dataclass(frozen=True)
class TotalOrder2x2:
    """The strict information order of the three 2x2 arrangement classes.

    For a strictly descending spectrum the identity arrangement, the
    bottom-row swap, and the anti-diagonal swap are totally ordered, both
    by mutual information and by how far the split marginals sit from 1/2.
    """

    i_identity: float
    i_bottom_swap: float
    i_antidiagonal: float
    smd_identity: float
    smd_bottom_swap: float
    smd_antidiagonal: float


def verify_total_order_2x2(s: Spectrum) -> TotalOrder2x2:
    """Check the strict 2x2 ordering at one strictly descending spectrum.

    Raises ValueError when the spectrum has tied eigenvalues (the order
    degenerates) and RuntimeError if the strict chain fails numerically.
    """
    _require_dim4(s)
    a, b, c, d = s.values
    for i, (x, y) in enumerate(zip(s.values, s.values[1:])):
        if x - y <= 0.0:
            raise ValueError(
                f"total order needs strictly descending eigenvalues; "
                f"entries {i} and {i + 1} are {x!r} and {y!r}"
            )
    m_identity = ProbMatrix(((a, b), (c, d)))
    m_bottom = ProbMatrix(((a, b), (d, c)))
    m_anti = ProbMatrix(((a, d), (c, b)))
    out = TotalOrder2x2(
        i_identity=cmi(m_identity),
        i_bottom_swap=cmi(m_bottom),
        i_antidiagonal=cmi(m_anti),
        smd_identity=abs(a + d - 0.5),
        smd_bottom_swap=abs(a + c - 0.5),
        smd_antidiagonal=abs(a + b - 0.5),
    )
    if not (out.i_identity < out.i_bottom_swap < out.i_antidiagonal):
        raise RuntimeError(f"information chain failed at spectrum {s.values!r}")
    if not (out.smd_identity < out.smd_bottom_swap < out.smd_antidiagonal):
        raise RuntimeError(f"marginal-deviation chain failed at spectrum {s.values!r}")
    return out


# ---------------------------------------------------------------------------
# Vectorized octahedron scans
# ---------------------------------------------------------------------------

def _h_rows(x: np.ndarray) -> np.ndarray:
    """Binary entropy of an array, elementwise, 0-safe at the endpoints."""
    x = np.clip(x, 0.0, 1.0)
    out = np.zeros_like(x)
    for p in (x, 1.0 - x):
        pos = p > 0.0
        out[pos] -= p[pos] * np.log(p[pos])
    return out


def _entropy_rows(spectra: np.ndarray) -> np.ndarray:
    pos = spectra > 0.0
    terms = np.zeros_like(spectra)
    terms[pos] = -spectra[pos] * np.log(spectra[pos])
    return terms.sum(axis=1)


def _scan_i_max_qmi(sp: np.ndarray) -> np.ndarray:
    return 2.0 * LN2 - _entropy_rows(sp)


def _scan_i_min(sp: np.ndarray) -> np.ndarray:
    a, b, c = sp[:, 0], sp[:, 1], sp[:, 2]
    return _h_rows(a + b) + _h_rows(a + c) - _entropy_rows(sp)


def _scan_i_max_class(sp: np.ndarray) -> np.ndarray:
    a, b, c = sp[:, 0], sp[:, 1], sp[:, 2]
    return _h_rows(a + c) + _h_rows(b + c) - _entropy_rows(sp)


def _scan_gamma_max(sp: np.ndarray) -> np.ndarray:
    a, b, c = sp[:, 0], sp[:, 1], sp[:, 2]
    return 2.0 * LN2 - _h_rows(a + c) - _h_rows(b + c)


def _scan_gamma_min(sp: np.ndarray) -> np.ndarray:
    a, b, c = sp[:, 0], sp[:, 1], sp[:, 2]
    return 2.0 * LN2 - _h_rows(a + b) - _h_rows(a + c)


SCAN_FUNCTIONS = {
    "gamma_max": _scan_gamma_max,
    "gamma_min": _scan_gamma_min,
    "i_max_qmi": _scan_i_max_qmi,
    "i_min": _scan_i_min,
    "i_max_class": _scan_i_max_class,
}


def octahedron_scan(function: str, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate one information quantity over a grid of separable T-states.

    Grids each correlation axis with ``resolution`` points on [-1, 1],
    keeps the points of the separability octahedron (row-major grid
    order), folds each to its descending spectrum, and evaluates
    ``function`` (a key of SCAN_FUNCTIONS).  Returns (points, values):
    an (Nx3) array of t-vectors and the matching value array, in nats.
    """
    if function not in SCAN_FUNCTIONS:
        raise ValueError(
            f"unknown scan function {function!r}; choose one of "
            f"{sorted(SCAN_FUNCTIONS)}"
        )
    if resolution < 2:
        raise ValueError("octahedron_scan needs resolution >= 2")
    axis = np.linspace(-1.0, 1.0, resolution)
    grids = np.meshgrid(axis, axis, axis, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    points = points[np.abs(points).sum(axis=1) <= 1.0 + EPSILON]
    u, v, w = points[:, 0], points[:, 1], points[:, 2]
    spectra = np.stack(
        [
            (1.0 + u - v + w) / 4.0,
            (1.0 - u + v + w) / 4.0,
            (1.0 + u + v - w) / 4.0,
            (1.0 - u - v - w) / 4.0,
        ],
        axis=1,
    )
    np.clip(spectra, 0.0, None, out=spectra)
    spectra = np.sort(spectra, axis=1)[:, ::-1]
    values = SCAN_FUNCTIONS[function](spectra)
    return points, values
