"""Свободный случай p = q = 0: решения cos(k_e x), sin(k_o x)/k_o и явные определители"""
import numpy as np

from src.problem.models import Variant, check_alpha
from src.spectral.eigen import initial_radius, lowest_zeros


def _cos(k: np.ndarray, scaled: bool) -> np.ndarray:
    if not scaled:
        return np.cos(k)
    g = np.abs(k.imag)
    return 0.5 * (np.exp(1j * k - g) + np.exp(-1j * k - g))


def _sinc(k: np.ndarray, scaled: bool) -> np.ndarray:
    """sin(k)/k: чётная по k, поэтому целая функция k^2"""
    if not scaled:
        return np.sinc(k / np.pi)
    g = np.abs(k.imag)
    small = np.abs(k) < 1e-3
    safe = np.where(small, 1.0, k)
    exact = (np.exp(1j * safe - g) - np.exp(-1j * safe - g)) / (2j * safe)
    return np.where(small, np.sinc(k / np.pi) * np.exp(-g), exact)


def oracle_determinant(
    alpha: complex, lambdas, variant: Variant, *, scaled: bool = False
) -> np.ndarray:
    """Определитель краевых условий на базисе {cos(k_e x), sin(k_o x)/k_o}

    При scaled=True значение умножено на exp(-|Im k_e| - |Im k_o|).
    """
    alpha = check_alpha(alpha)
    lambdas = np.asarray(lambdas, dtype=complex)
    even = lambdas / (alpha + 1.0)
    odd = lambdas / (alpha - 1.0)
    k_e, k_o = np.sqrt(even), np.sqrt(odd)
    c_e, s_e = _cos(k_e, scaled), _sinc(k_e, scaled)
    c_o, s_o = _cos(k_o, scaled), _sinc(k_o, scaled)
    match Variant(variant):
        case Variant.L:
            value = 2.0 * c_e * s_o
        case Variant.L11:
            value = even * s_e * s_o - c_o * c_e
        case Variant.L12 | Variant.L21:
            value = c_e * c_o + s_o * even * s_e
        case Variant.L22:
            value = c_e * c_o - s_o * even * s_e
    return value


def oracle_spectrum(alpha: complex, count: int) -> np.ndarray:
    """count собственных значений задачи L наименьшего модуля:
    (alpha + 1)((n + 1/2)pi)^2 и (alpha - 1)(n pi)^2, n >= 1"""
    alpha = check_alpha(alpha)
    n = np.arange(count + 1)
    values = np.concatenate(
        [(alpha + 1.0) * ((n + 0.5) * np.pi) ** 2, (alpha - 1.0) * ((n[1:]) * np.pi) ** 2]
    )
    values = values[np.argsort(np.abs(values), kind="stable")][:count]
    return np.array(sorted(values, key=lambda z: (z.real, z.imag)), dtype=complex)


def oracle_eigenvalues(alpha: complex, variant: Variant, count: int) -> np.ndarray:
    """count нулей явного определителя наименьшего модуля (без интегрирования ОДУ)"""
    alpha = check_alpha(alpha)
    weights = (1.0 / (alpha + 1.0), 1.0 / (alpha - 1.0))
    zeros, _ = lowest_zeros(
        lambda lambdas: oracle_determinant(alpha, lambdas, variant, scaled=True),
        count,
        start=initial_radius(weights, count),
    )
    values = np.array([zero.value for zero in zeros for _ in range(zero.multiplicity)])
    return np.array(sorted(values, key=lambda z: (z.real, z.imag)), dtype=complex)
