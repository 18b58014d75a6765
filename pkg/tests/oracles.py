"""Independent reference implementations used to pin expected test values.

The analytic key-rate oracle below is computed with mpmath at 50 digits
straight from the closed forms for the lossy-channel two-mode squeezed
state: block determinants -> symplectic eigenvalues -> bosonic entropy.
It deliberately does not import anything from ``cvqkd`` so the production
pipeline and this reference share no code path.

The dense-matrix helpers build covariance matrices and Schur complements
with raw numpy, again without touching the package under test.
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def g_ref(nu):
    """Bosonic entropy g(nu) in bits, high precision."""
    nu = mp.mpf(nu)
    if nu == 1:
        return mp.mpf(0)
    x = (nu + 1) / 2
    y = (nu - 1) / 2
    return x * mp.log(x, 2) - y * mp.log(y, 2)


def eve_variance_ref(t, xi):
    t, xi = mp.mpf(t), mp.mpf(xi)
    if xi == 0:
        return mp.mpf(1)
    return 1 + xi / (1 - t)


def mutual_information_ref(v, t, xi):
    v, t, xi = mp.mpf(v), mp.mpf(t), mp.mpf(xi)
    return mp.log(1 + t * (v - 1) / (1 + xi), 2) / 2


def key_rate_ref(v, t, xi, beta):
    """Closed-form i_ab, chi, r plus the three symplectic eigenvalues.

    Evaluated at measurement angle 0, where the shared-state covariance is
    [[V I, sqrt(T(V^2-1)) sigma_z], [., V_B I]] with V_B = T V + (1-T) W.
    Returns a dict of floats.
    """
    v, t, xi = mp.mpf(v), mp.mpf(t), mp.mpf(xi)
    beta = mp.mpf(beta)
    w = eve_variance_ref(t, xi)
    v_b = t * v + (1 - t) * w
    c2 = t * (v * v - 1)  # squared off-diagonal coefficient

    mu = v * v + v_b * v_b - 2 * c2
    det_sigma = (v * v_b - c2) ** 2
    disc = mp.sqrt(mu * mu - 4 * det_sigma)
    nu_plus = mp.sqrt((mu + disc) / 2)
    nu_minus = mp.sqrt((mu - disc) / 2)

    # homodyne of Bob's q: conditional block diag(V - C^2/V_B, V)
    nu_cond = mp.sqrt(v * (v - c2 / v_b))

    i_ab = mutual_information_ref(v, t, xi)
    chi = g_ref(nu_plus) + g_ref(nu_minus) - g_ref(nu_cond)
    r = beta * i_ab - chi
    return {
        "i_ab": float(i_ab),
        "chi": float(chi),
        "r": float(r),
        "nu_plus": float(nu_plus),
        "nu_minus": float(nu_minus),
        "nu_cond": float(nu_cond),
        "v_b": float(v_b),
        "w": float(w),
    }


def mutual_information_two_angle_ref(v_a, theta_a, theta_b, t, xi):
    v_a, t, xi = mp.mpf(v_a), mp.mpf(t), mp.mpf(xi)
    v_prime = v_a * mp.cos(theta_b) / mp.cos(theta_a)
    return float(mp.log(1 + t * (v_prime - 1) / (1 + xi), 2) / 2)


# ---------------------------------------------------------------------------
# dense-matrix references (raw numpy, double precision)
# ---------------------------------------------------------------------------

SIGMA_Z = np.diag([1.0, -1.0])


def tmsvs_ref(v):
    c = np.sqrt(v * v - 1.0)
    top = np.hstack([v * np.eye(2), c * SIGMA_Z])
    bot = np.hstack([c * SIGMA_Z, v * np.eye(2)])
    return np.vstack([top, bot])


def rotation_block_ref(theta):
    """Frame transform sending q -> cos(theta) q + sin(theta) p."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def embed_ref(block, mode, n_modes):
    m = np.eye(2 * n_modes)
    m[2 * mode:2 * mode + 2, 2 * mode:2 * mode + 2] = block
    return m


def beam_splitter_ref(t, mode_a, mode_b, n_modes):
    m = np.eye(2 * n_modes)
    a, b = 2 * mode_a, 2 * mode_b
    m[a:a + 2, a:a + 2] = np.sqrt(t) * np.eye(2)
    m[b:b + 2, b:b + 2] = np.sqrt(t) * np.eye(2)
    m[a:a + 2, b:b + 2] = np.sqrt(1 - t) * np.eye(2)
    m[b:b + 2, a:a + 2] = -np.sqrt(1 - t) * np.eye(2)
    return m


def conditional_covariance_ref(sigma, measured_mode, theta):
    """Schur complement for a homodyne along cos(theta) q + sin(theta) p.

    Dense construction: permute the measured mode last, split blocks, apply
    A - C (Pi B Pi)^+ C^T with the rank-one projector onto the measured
    direction.
    """
    n = sigma.shape[0] // 2
    keep = [m for m in range(n) if m != measured_mode]
    rows_keep = [i for m in keep for i in (2 * m, 2 * m + 1)]
    rows_meas = [2 * measured_mode, 2 * measured_mode + 1]
    a = sigma[np.ix_(rows_keep, rows_keep)]
    b = sigma[np.ix_(rows_meas, rows_meas)]
    c = sigma[np.ix_(rows_keep, rows_meas)]
    u = np.array([np.cos(theta), np.sin(theta)])
    pi = np.outer(u, u)
    core = np.linalg.pinv(pi @ b @ pi, rcond=1e-14)
    return a - c @ core @ c.T


def symplectic_spectrum_ref(sigma):
    """Moduli of the eigenvalues of i Omega Sigma, one per mode, descending."""
    n = sigma.shape[0] // 2
    omega = np.zeros((2 * n, 2 * n))
    for k in range(n):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    vals = np.abs(np.linalg.eigvals(1j * omega @ sigma))
    vals = np.sort(vals)
    return vals[::2][::-1].copy()
