"""Секторы и специальные лучи плоскости rho для веса W = diag(w1, w2)"""
from dataclasses import dataclass

import numpy as np

from src.errors import DegenerateWeightError

TWO_PI = 2.0 * np.pi
_ANGLE_TOL = 1e-12


def _mod(theta: float, period: float) -> float:
    value = float(np.mod(theta, period))
    return 0.0 if period - value < _ANGLE_TOL else value


def _oriented(d: complex, theta: float) -> complex:
    """Ветвь +-d с Re(i rho d) > 0 при arg rho = theta"""
    return d if (1j * np.exp(1j * theta) * d).real > 0 else -d


@dataclass(frozen=True)
class SectorGeometry:
    weights: tuple[complex, complex]
    thetas: tuple[float, ...]
    rays: tuple[float, float, float, float]
    ray_branches: tuple[tuple[complex, complex], ...]
    sector_branches: tuple[tuple[complex, complex], ...]

    def sector_index(self, theta: float) -> int:
        theta = _mod(theta, TWO_PI)
        index = int(np.searchsorted(self.thetas, theta, side="right")) - 1
        return index % len(self.thetas)

    def sector_midpoint(self, index: int) -> float:
        start = self.thetas[index]
        end = self.thetas[(index + 1) % len(self.thetas)]
        if end <= start:
            end += TWO_PI
        return _mod(0.5 * (start + end), TWO_PI)

    def branch_at(self, theta: float) -> tuple[complex, complex]:
        """(d1, d2) на луче или в секторе, содержащем направление theta"""
        theta = _mod(theta, TWO_PI)
        for ray, branch in zip(self.rays, self.ray_branches):
            if abs(ray - theta) < 1e-10:
                return branch
        return self.sector_branches[self.sector_index(theta)]

    def D(self, theta: float) -> np.ndarray:
        return np.diag(np.array(self.branch_at(theta), dtype=complex))

    def ray_branch(self, ray_index: int) -> tuple[complex, complex]:
        return self.ray_branches[ray_index]


def sector_geometry(weights) -> SectorGeometry:
    """Границы секторов theta_j, четыре луча Re(i rho d1) = Re(i rho d2) > 0 и таблица ветвей"""
    weights = np.asarray(weights, dtype=complex)
    if weights.shape == (2, 2):
        weights = np.diag(weights)
    w1, w2 = complex(weights[0]), complex(weights[1])
    if w1 == 0 or w2 == 0:
        raise DegenerateWeightError("Вес W вырожден: w1 * w2 = 0")
    if abs(np.angle(w1 / w2)) < 1e-14:
        raise DegenerateWeightError("arg w1 = arg w2: специальных лучей нет", w1=w1, w2=w2)
    d1, d2 = np.sqrt(w1), np.sqrt(w2)

    # Re(i rho d) = 0 при rho d вещественном, т.е. theta = -arg d (mod pi)
    half_turn = sorted(
        {
            round(_mod(-np.angle(d), np.pi), 13)
            for d in (d1, d2, d1 - d2, d1 + d2)
        }
    )
    thetas = tuple(sorted(_mod(theta + shift, TWO_PI) for theta in half_turn for shift in (0.0, np.pi)))

    first = sorted(_mod(-np.angle(d), np.pi) for d in (d1 - d2, d1 + d2))
    rays = (first[0], first[1], first[0] + np.pi, first[1] + np.pi)
    ray_branches = []
    for theta in rays:
        b1 = _oriented(d1, theta)
        b2 = _oriented(d2, theta)
        ray_branches.append((complex(b1), complex(b2)))

    sector_branches = []
    for index, start in enumerate(thetas):
        end = thetas[(index + 1) % len(thetas)]
        if end <= start:
            end += TWO_PI
        middle = 0.5 * (start + end)
        sector_branches.append((complex(_oriented(d1, middle)), complex(_oriented(d2, middle))))

    return SectorGeometry(
        weights=(w1, w2),
        thetas=thetas,
        rays=tuple(float(r) for r in rays),
        ray_branches=tuple(ray_branches),
        sector_branches=tuple(sector_branches),
    )
