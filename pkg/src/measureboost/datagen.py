"""Synthetic point-cloud generators: tori, spheres, chaotic orbits, and
Poisson / Ginibre point processes on a disk.

Every generator is a pure function of its parameters and seed, so reruns
are bit-identical.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "sample_torus",
    "sample_sphere",
    "add_gaussian_noise",
    "orbit",
    "sample_ppp_disk",
    "sample_ginibre",
]


def sample_torus(n: int, outer_radius: float, inner_radius: float, seed: int) -> np.ndarray:
    """n surface-area-uniform points on a torus in R^3.

    Rejection sampling on the tube angle with density proportional to
    1 + (r/R) cos(theta) corrects for the area distortion of the naive
    angle parametrization.
    """
    if not 0 < inner_radius < outer_radius:
        raise ValueError("need 0 < inner_radius < outer_radius")
    rng = np.random.default_rng(seed)
    ratio = inner_radius / outer_radius
    thetas = []
    while len(thetas) < n:
        cand = rng.uniform(0.0, 2 * np.pi, size=max(n, 16))
        accept = rng.uniform(0.0, 1.0, size=len(cand)) < (1 + ratio * np.cos(cand)) / (1 + ratio)
        thetas.extend(cand[accept].tolist())
    theta = np.array(thetas[:n])
    phi = rng.uniform(0.0, 2 * np.pi, size=n)
    ring = outer_radius + inner_radius * np.cos(theta)
    return np.column_stack(
        [ring * np.cos(phi), ring * np.sin(phi), inner_radius * np.sin(theta)]
    )


def sample_sphere(n: int, radius: float, seed: int) -> np.ndarray:
    """n uniform points on the 2-sphere of the given radius in R^3."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, 3))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return radius * g / norms


def add_gaussian_noise(points: np.ndarray, sigma: float, seed: int) -> np.ndarray:
    """Isotropic Gaussian perturbation per coordinate; sigma=0 is the identity."""
    points = np.asarray(points, dtype=float)
    if sigma == 0:
        return points.copy()
    rng = np.random.default_rng(seed)
    return points + sigma * rng.standard_normal(points.shape)


def orbit(rho: float, length: int, seed: int, start=None) -> np.ndarray:
    """Chaotic orbit in the unit square from a uniform random start.

    x_{n+1} = x_n + rho * y_n (1 - y_n)        mod 1
    y_{n+1} = y_n + rho * x_{n+1} (1 - x_{n+1}) mod 1

    Note the y-update uses the freshly updated x.  Returns all `length`
    iterates (the initial point excluded).  `start` overrides the random
    initial point.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if start is not None:
        x, y = float(start[0]), float(start[1])
    else:
        rng = np.random.default_rng(seed)
        x, y = rng.uniform(), rng.uniform()
    out = np.empty((length, 2))
    for i in range(length):
        x = (x + rho * y * (1 - y)) % 1.0
        y = (y + rho * x * (1 - x)) % 1.0
        out[i] = (x, y)
    return out


def sample_ppp_disk(mean_count: float, radius: float, seed: int) -> np.ndarray:
    """Homogeneous Poisson process on a disk: Poisson count, uniform points."""
    rng = np.random.default_rng(seed)
    n = rng.poisson(mean_count)
    r = radius * np.sqrt(rng.uniform(size=n))
    phi = rng.uniform(0.0, 2 * np.pi, size=n)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi)])


def sample_ginibre(n_modes: int, seed: int, radius: float = 1.0) -> np.ndarray:
    """Ginibre point process: eigenvalues of a complex Gaussian matrix.

    The spectrum of an n x n matrix with iid standard complex Gaussian
    entries, scaled by 1/sqrt(n) so it fills the unit disk (circular law),
    then rescaled to the requested radius.  Returns exactly n_modes points.
    """
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    rng = np.random.default_rng(seed)
    g = (
        rng.standard_normal((n_modes, n_modes))
        + 1j * rng.standard_normal((n_modes, n_modes))
    ) / np.sqrt(2.0)
    eig = np.linalg.eigvals(g) / np.sqrt(n_modes)
    eig = eig * radius
    return np.column_stack([eig.real, eig.imag])
