"""Independent numerical oracles shared by the test modules.

These deliberately avoid the package's own closed forms: the dephasing
average is done by Gauss-Hermite quadrature over the jitter angle, so a
bug in the analytic mixing weights cannot hide.
"""

import numpy as np

# 61 nodes is plenty: the integrand is smooth and sigma <= 1.5 in tests.
_GH_NODES, _GH_WEIGHTS = np.polynomial.hermite.hermgauss(61)


def dephased_readout_variance(
    v_sq: float, v_anti: float, state_angle: float, sigma: float, readout_angle: float
) -> float:
    """Jitter-averaged readout variance by Gauss-Hermite quadrature.

    E[v_sq cos^2(phi - a - d) + v_anti sin^2(phi - a - d)] for
    d ~ N(0, sigma^2), via the substitution d = sqrt(2) * sigma * t.
    """
    rel = readout_angle - state_angle - np.sqrt(2.0) * sigma * _GH_NODES
    projected = v_sq * np.cos(rel) ** 2 + v_anti * np.sin(rel) ** 2
    return float(np.sum(_GH_WEIGHTS * projected) / np.sqrt(np.pi))
