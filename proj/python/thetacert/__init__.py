"""Lattice theta series, Poisson-certificate LPs and saturation audits."""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    InsufficientShells,
    default_dictionary,
    eisenstein_e4,
    four_squares,
    functional_equation_residual,
    jacobi_theta,
    lattice_info,
    lattice_theta,
    secrecy_function,
    shell_counts,
    sigma3,
)

__all__ = [
    "BudgetExceeded",
    "InsufficientShells",
    "chain_audit",
    "default_dictionary",
    "e8_collapse_audit",
    "eisenstein_e4",
    "four_squares",
    "functional_equation_residual",
    "gaussian",
    "identity_suite",
    "jacobi_theta",
    "lattice",
    "lattice_info",
    "lattice_theta",
    "poisson_check",
    "random_rotation",
    "run",
    "secrecy_function",
    "shell_counts",
    "sigma3",
    "solve_lp",
    "verify_solution",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def lattice(name):
    return json.loads(_core.lattice_json(name))


def gaussian(dim, t):
    """The combination g_t(x) = exp(-t |x|^2) as combo JSON."""
    return json.loads(_core.gaussian_combo(dim, t))


def identity_suite(t):
    return json.loads(_core.identity_suite(t))


def poisson_check(combo, lattice, tolerance=1e-9):
    return json.loads(_core.poisson_check(_text(combo), lattice, tolerance))


def solve_lp(n, t, widths=(), shells=0, coefficient_bound=1e4, tail=1e-9):
    """Builds and solves the certificate LP; returns (problem, solution) dicts.

    shells=0 picks the shell cutoff from the tail rule; widths=() uses the
    default geometric dictionary.
    """
    problem, solution = _core.solve_lp(n, t, list(widths), shells, coefficient_bound, tail)
    return json.loads(problem), json.loads(solution)


def verify_solution(problem, solution, lattice):
    return json.loads(_core.verify_solution(_text(problem), _text(solution), lattice))


def chain_audit(combo, lattice, t, seed=None):
    return json.loads(_core.chain_audit(_text(combo), lattice, t, seed))


def e8_collapse_audit(combo, n, t):
    return json.loads(_core.e8_collapse_audit(_text(combo), n, t))


def random_rotation(n, seed):
    flat = _core.random_rotation(n, seed)
    return [flat[i * n:(i + 1) * n] for i in range(n)]


def run(config):
    """Runs one CLI subcommand from a config dict; returns (report, exit_code)."""
    report, code = _core.run_command(_text(config))
    return json.loads(report), code
