"""Scaled discrete Fourier sums on arbitrary uniform grids.

    F[m] = sum_j f[j] * exp(-2j*pi * x[j] * u[m]),
    x[j] = x0 + j*dx,  u[m] = u0 + m*du

When ``n*dx*du == 1`` this is an FFT with phase ramps; otherwise the
``j*m`` term is handled with Bluestein's chirp convolution.
"""

import numpy as np
from scipy import fft as sfft

__all__ = ["scaled_dft", "chirp_phase"]


def chirp_phase(a, j):
    """``exp(1j*pi*a*j**2)`` with the argument reduced modulo 2 first.

    ``j`` is integral; ``j**2`` is formed exactly in integer arithmetic so
    large indices keep full phase accuracy.
    """
    j = np.asarray(j, dtype=np.int64)
    t = np.mod(a * (j * j).astype(float), 2.0)
    return np.exp(1j * np.pi * t)


def _bluestein(g, a, m_out):
    """sum_j g[j] exp(-2j*pi*a*j*m) for m = 0..m_out-1."""
    n = g.size
    size = sfft.next_fast_len(n + m_out - 1)
    w_in = chirp_phase(-a, np.arange(n))
    w_out = chirp_phase(-a, np.arange(m_out))
    # kernel exp(+i pi a k^2) for k = -(n-1) .. m_out-1, wrapped
    ker = np.zeros(size, dtype=complex)
    ker[:m_out] = chirp_phase(a, np.arange(m_out))
    ker[size - n + 1:] = chirp_phase(a, np.arange(-(n - 1), 0))
    buf = np.zeros(size, dtype=complex)
    buf[:n] = g * w_in
    conv = sfft.ifft(sfft.fft(buf) * sfft.fft(ker))
    return w_out * conv[:m_out]


def scaled_dft(f, x0, dx, u0, du, m_out=None):
    f = np.asarray(f, dtype=complex)
    n = f.size
    m_out = n if m_out is None else m_out
    a = dx * du
    j = np.arange(n)
    m = np.arange(m_out)
    # exp(-2i pi (x0 + j dx)(u0 + m du)) split into separable factors
    pre = np.exp(-2j * np.pi * np.mod(j * dx * u0, 1.0))
    post = np.exp(-2j * np.pi * np.mod(x0 * (u0 + m * du), 1.0))
    g = f * pre
    if m_out == n and abs(n * a - 1.0) < 1e-12:
        core = sfft.fft(g)
    else:
        core = _bluestein(g, a, m_out)
    return post * core
