"""Exponent arithmetic for the Sobolev/Besov inequality family.

All relations are plain rational arithmetic; when every input is an int or
fractions.Fraction the result stays exact, which is what the consistency
scan asserts.  Violated admissibility gates raise GateError naming the
gate.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "GateError",
    "sobolev_conjugate",
    "hedberg_theta",
    "lorentz_exponent",
    "young_oneil_q",
    "sigma_exponent",
    "q_pointwise",
    "mixed_theta",
]


class GateError(ValueError):
    """An exponent admissibility gate was violated."""

    def __init__(self, gate: str, detail: str):
        self.gate = gate
        super().__init__(f"gate '{gate}' violated: {detail}")


def _exact(*vals):
    """Promote to Fraction when every input is rational, else to float."""
    if all(isinstance(v, (int, Fraction)) for v in vals):
        return tuple(Fraction(v) for v in vals)
    return tuple(float(v) for v in vals)


def sobolev_conjugate(n, s, p):
    """q = n p / (n - s p), the gain exponent of the Sobolev embedding."""
    n, s, p = _exact(n, s, p)
    if not p > 1:
        raise GateError("p_range", f"need p > 1, got p={p}")
    if not s > 0:
        raise GateError("s_positive", f"need s > 0, got s={s}")
    if not s * p < n:
        raise GateError("subcritical", f"need s < n/p, got s={s}, n/p={n}/{p}")
    return (n * p) / (n - s * p)


def hedberg_theta(s, s1, beta):
    """theta = (s - s1) / (beta + s), required to land strictly in (0, 1)."""
    s, s1, beta = _exact(s, s1, beta)
    if not s1 >= 0:
        raise GateError("s1_nonnegative", f"got s1={s1}")
    if not s1 < s:
        raise GateError("s1_below_s", f"need s1 < s, got s1={s1}, s={s}")
    if not beta > 0:
        raise GateError("beta_positive", f"got beta={beta}")
    theta = (s - s1) / (beta + s)
    if not 0 < theta < 1:
        raise GateError("theta_range", f"theta={theta} not in (0, 1)")
    return theta


def lorentz_exponent(n, s):
    """r = n / (n - s), the weak-Lorentz exponent of the kernel |x|^(s-n)."""
    n, s = _exact(n, s)
    if not 0 < s < n:
        raise GateError("s_in_0_n", f"need 0 < s < n={n}, got s={s}")
    return n / (n - s)


def young_oneil_q(r, p):
    """q from 1 + 1/q = 1/r + 1/p (weak-type Young convolution relation)."""
    r, p = _exact(r, p)
    if r < 1 or p < 1:
        raise GateError("exponents_ge_1", f"got r={r}, p={p}")
    inv = 1 / r + 1 / p - 1
    if not inv > 0:
        raise GateError("young_oneil_admissible", f"1/r + 1/p must exceed 1, got r={r}, p={p}")
    return 1 / inv


def mixed_theta(n, s, frak_p):
    """theta = s * frak_p / n for the mixed inequalities."""
    n, s, frak_p = _exact(n, s, frak_p)
    if not frak_p > 1:
        raise GateError("frak_p_range", f"got frak_p={frak_p}")
    if not 0 < s * frak_p < n:
        raise GateError("mixed_subcritical", f"need 0 < s < n/frak_p = {n}/{frak_p}, got s={s}")
    return s * frak_p / n


def sigma_exponent(n, s, frak_p, p_values):
    """sigma(.) = n p(.) / (n - s frak_p), elementwise over a p descriptor."""
    mixed_theta(n, s, frak_p)  # same admissibility gate
    if isinstance(p_values, np.ndarray):
        n_f, s_f, fp = float(n), float(s), float(frak_p)
        return n_f * p_values / (n_f - s_f * fp)
    n, s, frak_p, p_values = _exact(n, s, frak_p, p_values)
    return (n * p_values) / (n - s * frak_p)


def q_pointwise(p_values, s, n):
    """q(.) from 1/q(x) = 1/p(x) - s/n, elementwise."""
    if isinstance(p_values, np.ndarray):
        p_plus = float(p_values.max())
        s_f, n_f = float(s), float(n)
        if not s_f * p_plus < n_f:
            raise GateError("subcritical_plus", f"need s < n/p_plus = {n_f}/{p_plus}, got s={s}")
        return 1.0 / (1.0 / p_values - s_f / n_f)
    p, s, n = _exact(p_values, s, n)
    if not s * p < n:
        raise GateError("subcritical_plus", f"need s < n/p = {n}/{p}, got s={s}")
    return 1 / (1 / p - s / n)
