"""Covariance-matrix algebra for multimode Gaussian states.

Conventions used throughout the package:

* shot-noise units, vacuum quadrature variance = 1;
* mode ordering (q1, p1, q2, p2, ...);
* a frame rotation by ``theta`` sends q -> cos(theta) q + sin(theta) p,
  so measuring the rotated quadrature x_theta equals measuring q after
  the rotation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

# validation tolerances
SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-12
DET_TOL = 1e-9
PHYSICALITY_TOL = 1e-9
PINV_CUTOFF = 1e-12

SIGMA_Z = np.diag([1.0, -1.0])


class ConditioningStrategy(enum.Enum):
    """How a homodyne outcome at angle theta conditions the remaining modes.

    STANDARD projects onto the measured direction (rank-one projector),
    i.e. rotate the measured mode so x_theta becomes its q quadrature and
    condition on q. DIAGONAL applies the literal diag(cos theta, sin theta)
    weighting instead; it coincides with STANDARD at theta in {0, pi/2}
    but is not a projector in between and may yield unphysical output.
    """

    STANDARD = "standard"
    DIAGONAL = "diagonal"


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """A 2n x 2n real symmetric quadrature covariance matrix.

    Structural invariants (symmetry to 1e-12, strictly positive diagonal,
    even dimension) are enforced on construction. Physicality (all
    symplectic eigenvalues >= 1) is checked separately via
    :func:`is_physical`, because some closed-form constructions are
    deliberately carried in unphysical form for comparison purposes.
    """

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0 or m.shape[0] == 0:
            raise ValueError(f"covariance matrix must be 2n x 2n, got shape {m.shape}")
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
            raise ValueError("covariance matrix must be symmetric to 1e-12")
        if np.any(np.diag(m) <= 0):
            raise ValueError("covariance diagonal entries must be strictly positive")
        m = (m + m.T) / 2
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def n_modes(self) -> int:
        return self.mat.shape[0] // 2


@dataclass(frozen=True, eq=False)
class SymplecticTransform:
    """A 2n x 2n real matrix S with S Omega S^T = Omega and det S = 1."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0 or m.shape[0] == 0:
            raise ValueError(f"symplectic transform must be 2n x 2n, got shape {m.shape}")
        omega = symplectic_form(m.shape[0] // 2)
        if np.max(np.abs(m @ omega @ m.T - omega)) > SYMPLECTIC_TOL:
            raise ValueError("matrix does not preserve the symplectic form")
        if abs(np.linalg.det(m) - 1.0) > DET_TOL:
            raise ValueError("symplectic transform must have determinant 1")
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def n_modes(self) -> int:
        return self.mat.shape[0] // 2


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal Omega with per-mode blocks [[0, 1], [-1, 0]]."""
    if n_modes < 1:
        raise ValueError("n_modes must be positive")
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def vacuum(n_modes: int = 1) -> CovarianceMatrix:
    """Covariance of n vacuum modes (the identity)."""
    return CovarianceMatrix(np.eye(2 * n_modes))


def tmsvs(v: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum state of quadrature variance v.

    Block form [[v I2, sqrt(v^2-1) sigma_z], [sqrt(v^2-1) sigma_z, v I2]];
    pure for every v >= 1.
    """
    if v < 1:
        raise ValueError(f"TMSVS variance must be >= 1 (vacuum), got {v}")
    c = np.sqrt(v * v - 1.0)
    m = np.zeros((4, 4))
    m[:2, :2] = v * np.eye(2)
    m[2:, 2:] = v * np.eye(2)
    m[:2, 2:] = c * SIGMA_Z
    m[2:, :2] = c * SIGMA_Z
    return CovarianceMatrix(m)


def _rotation_block(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def mode_rotation(theta: float, mode: int, n_modes: int) -> SymplecticTransform:
    """Frame rotation of one mode: new q = cos(theta) q + sin(theta) p.

    Args:
        theta: rotation angle in radians.
        mode: index of the rotated mode.
        n_modes: total number of modes; all others get the identity.
    """
    if not 0 <= mode < n_modes:
        raise IndexError(f"mode {mode} out of range for {n_modes} modes")
    m = np.eye(2 * n_modes)
    m[2 * mode:2 * mode + 2, 2 * mode:2 * mode + 2] = _rotation_block(theta)
    return SymplecticTransform(m)


def beam_splitter(t: float, mode_a: int, mode_b: int, n_modes: int) -> SymplecticTransform:
    """Beam splitter of transmittance t coupling two modes.

    Blocks sqrt(t) I on the diagonal and +/- sqrt(1-t) I off-diagonal;
    t = 1 is the identity, t = 0 swaps the modes up to sign.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmittance must lie in [0, 1], got {t}")
    if not (0 <= mode_a < n_modes and 0 <= mode_b < n_modes):
        raise IndexError(f"modes ({mode_a}, {mode_b}) out of range for {n_modes} modes")
    if mode_a == mode_b:
        raise IndexError("beam splitter requires two distinct modes")
    m = np.eye(2 * n_modes)
    a, b = 2 * mode_a, 2 * mode_b
    m[a:a + 2, a:a + 2] = np.sqrt(t) * np.eye(2)
    m[b:b + 2, b:b + 2] = np.sqrt(t) * np.eye(2)
    m[a:a + 2, b:b + 2] = np.sqrt(1.0 - t) * np.eye(2)
    m[b:b + 2, a:a + 2] = -np.sqrt(1.0 - t) * np.eye(2)
    return SymplecticTransform(m)


def apply(s: SymplecticTransform, sigma: CovarianceMatrix) -> CovarianceMatrix:
    """Conjugate a covariance matrix: S Sigma S^T."""
    if s.n_modes != sigma.n_modes:
        raise ValueError(
            f"mode count mismatch: transform has {s.n_modes}, state has {sigma.n_modes}"
        )
    out = s.mat @ sigma.mat @ s.mat.T
    return CovarianceMatrix((out + out.T) / 2)


def direct_sum(a: CovarianceMatrix, b: CovarianceMatrix) -> CovarianceMatrix:
    """Block-diagonal composition of two uncorrelated states."""
    na, nb = a.mat.shape[0], b.mat.shape[0]
    m = np.zeros((na + nb, na + nb))
    m[:na, :na] = a.mat
    m[na:, na:] = b.mat
    return CovarianceMatrix(m)


def reduce(sigma: CovarianceMatrix, keep_modes: list[int]) -> CovarianceMatrix:
    """Principal submatrix on the kept modes (partial trace over the rest)."""
    n = sigma.n_modes
    modes = list(keep_modes)
    if not modes:
        raise IndexError("keep_modes must not be empty")
    if len(set(modes)) != len(modes):
        raise IndexError(f"keep_modes must be distinct, got {modes}")
    if any(not 0 <= m < n for m in modes):
        raise IndexError(f"keep_modes {modes} out of range for {n} modes")
    rows = [i for m in modes for i in (2 * m, 2 * m + 1)]
    return CovarianceMatrix(sigma.mat[np.ix_(rows, rows)])


def _pinv_sym(m: np.ndarray, cutoff: float = PINV_CUTOFF) -> np.ndarray:
    """Pseudoinverse of a symmetric matrix via spectral decomposition."""
    vals, vecs = np.linalg.eigh(m)
    inv = np.where(np.abs(vals) > cutoff, 1.0 / np.where(vals == 0, 1.0, vals), 0.0)
    return (vecs * inv) @ vecs.T


def homodyne_condition(
    sigma: CovarianceMatrix,
    measured_mode: int,
    theta: float = 0.0,
    strategy: ConditioningStrategy = ConditioningStrategy.STANDARD,
) -> CovarianceMatrix:
    """Covariance of the remaining modes after homodyning one mode at angle theta.

    Gaussian conditioning is outcome independent, so only the covariance is
    returned: A - C (Pi B Pi)^+ C^T where B is the measured mode's block and
    Pi depends on the strategy (see :class:`ConditioningStrategy`).

    Raises:
        ValueError: if the input state is unphysical, or if the DIAGONAL
            strategy produces a structurally invalid matrix.
        IndexError: if the measured mode is out of range.
    """
    n = sigma.n_modes
    if n < 2:
        raise ValueError("conditioning requires at least two modes")
    if not 0 <= measured_mode < n:
        raise IndexError(f"measured mode {measured_mode} out of range for {n} modes")
    if min_symplectic_eigenvalue(sigma) < 1.0 - PHYSICALITY_TOL:
        raise ValueError("cannot condition an unphysical covariance matrix")

    keep = [m for m in range(n) if m != measured_mode]
    rows_keep = [i for m in keep for i in (2 * m, 2 * m + 1)]
    rows_meas = [2 * measured_mode, 2 * measured_mode + 1]
    a = sigma.mat[np.ix_(rows_keep, rows_keep)]
    b = sigma.mat[np.ix_(rows_meas, rows_meas)]
    c = sigma.mat[np.ix_(rows_keep, rows_meas)]

    if strategy is ConditioningStrategy.STANDARD:
        u = np.array([np.cos(theta), np.sin(theta)])
        pi = np.outer(u, u)
    else:
        pi = np.diag([np.cos(theta), np.sin(theta)])
    out = a - c @ _pinv_sym(pi @ b @ pi) @ c.T
    return CovarianceMatrix((out + out.T) / 2)


def symplectic_eigenvalues(sigma: CovarianceMatrix, method: str = "auto") -> np.ndarray:
    """Symplectic spectrum, one value per mode, descending.

    ``method`` selects the code path: "closed" uses the two-mode block
    determinant formula nu+- = sqrt((mu +- sqrt(mu^2 - 4 det)) / 2) with
    mu = det A + det B + 2 det C; "general" takes the moduli of the
    eigenvalues of i Omega Sigma; "auto" picks closed for n <= 2.
    """
    m = sigma.mat
    n = sigma.n_modes
    if method not in ("auto", "closed", "general"):
        raise ValueError(f"unknown method {method!r}")
    if method == "closed" and n > 2:
        raise ValueError("closed-form spectrum only exists for n <= 2 modes")
    if method == "auto":
        method = "closed" if n <= 2 else "general"

    if method == "closed":
        if n == 1:
            return np.array([np.sqrt(max(np.linalg.det(m), 0.0))])
        a = np.linalg.det(m[:2, :2])
        b = np.linalg.det(m[2:, 2:])
        c = np.linalg.det(m[:2, 2:])
        mu = a + b + 2 * c
        disc = np.sqrt(max(mu * mu - 4 * np.linalg.det(m), 0.0))
        nu_plus = np.sqrt(max((mu + disc) / 2, 0.0))
        nu_minus = np.sqrt(max((mu - disc) / 2, 0.0))
        return np.array([nu_plus, nu_minus])

    vals = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ m))
    vals = np.sort(vals)  # each nu appears twice as +/- eigenvalue moduli
    return vals[::2][::-1].copy()


def min_symplectic_eigenvalue(sigma: CovarianceMatrix) -> float:
    return float(symplectic_eigenvalues(sigma)[-1])


def is_physical(sigma: CovarianceMatrix, tol: float = PHYSICALITY_TOL) -> bool:
    """Whether all symplectic eigenvalues respect the uncertainty bound nu >= 1."""
    return min_symplectic_eigenvalue(sigma) >= 1.0 - tol


def g_entropy(nu: float) -> float:
    """Bosonic entropy g(nu) in bits of a thermal mode with symplectic eigenvalue nu.

    g(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), with the
    nu -> 1 limit taken explicitly so the boundary never produces 0*log(0).
    """
    if nu < 1.0 - PHYSICALITY_TOL:
        raise ValueError(f"symplectic eigenvalue must be >= 1, got {nu}")
    if nu <= 1.0:
        return 0.0
    x = (nu + 1.0) / 2.0
    y = (nu - 1.0) / 2.0
    return float(x * np.log2(x) - y * np.log2(y))


def von_neumann_entropy(sigma: CovarianceMatrix) -> float:
    """Entropy in bits: sum of g over the symplectic spectrum; 0 for pure states."""
    return float(sum(g_entropy(nu) for nu in symplectic_eigenvalues(sigma)))


# ---------------------------------------------------------------------------
# closed-form covariance constructions for the rotated-frame protocol
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CovarianceReport:
    """A closed-form covariance plus its physicality check result.

    These constructions are transcribed literally from their published
    closed forms. For generic angles they are not symplectic rotations of
    the standard two-mode squeezed state, so physicality is reported, not
    assumed.
    """

    cov: CovarianceMatrix
    physical: bool
    min_symplectic_eigenvalue: float


def _p_block(theta: float) -> np.ndarray:
    return np.array([[np.cos(theta), 0.0], [-np.sin(theta), -1.0]])


def _r_block(theta: float) -> np.ndarray:
    s = np.sin(theta)
    return np.array([[0.0, s], [s, 0.0]])


_CLOSED_FORM_PARAMS = {
    "rotated_ab": ("v", "theta"),
    "eve_cloner": ("w", "phi"),
    "joint_abe": ("v", "w", "t", "theta", "phi"),
    "two_angle": ("v", "theta_a", "theta_b"),
}


def closed_form_covariance(kind: str, **params) -> CovarianceReport:
    """Literal closed-form covariance for one of the rotated-frame systems.

    Kinds and their required parameters:

    * ``rotated_ab``  (v, theta): sender/receiver pair with the receiver
      frame rotated by theta.
    * ``eve_cloner``  (w, phi): eavesdropper's two-mode cloner resource of
      variance w measured at angle phi.
    * ``joint_abe``   (v, w, t, theta, phi): four-mode joint system after
      the cloner couples into the channel of transmittance t.
    * ``two_angle``   (v, theta_a, theta_b): both parties measuring in
      independently rotated frames.

    Returns a :class:`CovarianceReport`; callers must consult ``physical``
    before feeding the matrix to entropy computations.
    """
    if kind not in _CLOSED_FORM_PARAMS:
        raise ValueError(f"unknown covariance kind {kind!r}")
    required = _CLOSED_FORM_PARAMS[kind]
    missing = [k for k in required if k not in params]
    extra = [k for k in params if k not in required]
    if missing or extra:
        raise TypeError(
            f"kind {kind!r} takes parameters {required}; missing {missing}, unexpected {extra}"
        )

    if kind == "rotated_ab":
        m = _rotated_pair(params["v"], params["theta"])
    elif kind == "eve_cloner":
        m = _rotated_pair(params["w"], params["phi"])
    elif kind == "joint_abe":
        m = _joint_abe(params["v"], params["w"], params["t"], params["theta"], params["phi"])
    else:
        m = _two_angle(params["v"], params["theta_a"], params["theta_b"])

    cov = CovarianceMatrix(m)
    min_nu = min_symplectic_eigenvalue(cov)
    return CovarianceReport(cov, min_nu >= 1.0 - PHYSICALITY_TOL, min_nu)


def _rotated_pair(v: float, theta: float) -> np.ndarray:
    if v < 1:
        raise ValueError(f"variance must be >= 1, got {v}")
    c = np.sqrt(v * v - 1.0)
    p = _p_block(theta)
    m = np.zeros((4, 4))
    m[:2, :2] = v * np.eye(2)
    m[:2, 2:] = c * p
    m[2:, :2] = c * p.T
    m[2:, 2:] = v * np.eye(2) + (v + 1.0) / 2.0 * _r_block(theta)
    return m


def _joint_abe(v: float, w: float, t: float, theta: float, phi: float) -> np.ndarray:
    if v < 1 or w < 1:
        raise ValueError("variances must be >= 1")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmittance must lie in [0, 1], got {t}")
    x_plus = np.sqrt(t * (v * v - 1.0))
    x_minus = -np.sqrt((1.0 - t) * (v * v - 1.0))
    y_minus = np.sqrt((1.0 - t) * (w * w - 1.0))
    y_plus = np.sqrt(t * (w * w - 1.0))
    p = _p_block(theta)
    q = _p_block(phi)
    r = _r_block(theta)
    s = _r_block(phi)
    z = np.sqrt(t * (1.0 - t)) * (w * np.eye(2) - (v * np.eye(2) + r))
    z1 = t * (v * np.eye(2) + r) + (1.0 - t) * w * np.eye(2)
    z2 = (1.0 - t) * (v * np.eye(2) + r) + t * w * np.eye(2)

    m = np.zeros((8, 8))
    m[0:2, 0:2] = v * np.eye(2)
    m[0:2, 2:4] = x_plus * p
    m[0:2, 4:6] = x_minus * p
    m[2:4, 0:2] = x_plus * p.T
    m[2:4, 2:4] = z1
    m[2:4, 4:6] = z
    m[2:4, 6:8] = y_minus * q
    m[4:6, 0:2] = x_minus * p.T
    m[4:6, 2:4] = z
    m[4:6, 4:6] = z2
    m[4:6, 6:8] = y_plus * q
    m[6:8, 2:4] = y_minus * q.T
    m[6:8, 4:6] = y_plus * q.T
    m[6:8, 6:8] = w * np.eye(2) + (w + 1.0) / 2.0 * s
    return m


def _two_angle(v: float, theta_a: float, theta_b: float) -> np.ndarray:
    if v < 1:
        raise ValueError(f"variance must be >= 1, got {v}")
    c = np.sqrt(v * v - 1.0)
    cs = np.cos(theta_a) * np.cos(theta_b) - np.sin(theta_a) * np.sin(theta_b)
    p1 = np.array([[cs, -np.sin(theta_a)], [-np.sin(theta_b), -1.0]])
    m = np.zeros((4, 4))
    m[:2, :2] = v * np.eye(2) + (v + 1.0) / 2.0 * _r_block(theta_a)
    m[:2, 2:] = c * p1
    m[2:, :2] = c * p1.T
    m[2:, 2:] = v * np.eye(2) + (v + 1.0) / 2.0 * _r_block(theta_b)
    return m
