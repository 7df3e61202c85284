"""Exact and Monte Carlo span probabilities in finite classical geometries.

Thin wrapper over the compiled ``formspan._core`` module.  The core hands back
JSON with rationals as exact ``"p/q"`` strings; this layer revives them as
:class:`fractions.Fraction` so nothing is ever rounded.
"""

import json
from fractions import Fraction

from . import _core

__version__ = _core.__version__

_LOSSY = "_decimal_lossy"


def _revive(node):
    """Turn every "p/q" value that ships with a lossy decimal twin into a Fraction."""
    if isinstance(node, dict):
        exact_keys = {k[: -len(_LOSSY)] for k in node if k.endswith(_LOSSY)}
        out = {}
        for key, value in node.items():
            if key.endswith(_LOSSY):
                continue
            if key in exact_keys and isinstance(value, str):
                out[key] = Fraction(value)
            else:
                out[key] = _revive(value)
        return out
    if isinstance(node, list):
        return [_revive(item) for item in node]
    return node


def _parse(text):
    return _revive(json.loads(text))


def _sign(label):
    """Accept +1/-1/0 ints or '+'/'-'/'o' strings for type labels."""
    if label in (1, "+", "+1"):
        return "+"
    if label in (-1, "-", "-1"):
        return "-"
    if label in (0, "o", "0", "", None):
        return "o"
    raise ValueError(f"bad sign label: {label!r}")


def gaussian_binomial(n, k, order):
    """Number of k-dimensional subspaces of an n-dimensional space, exactly."""
    return int(_core.gaussian_binomial(n, k, order))


def gl_span_proportion(n, nprime, q):
    """Probability that random n- and n'-subspaces span, with no form in play."""
    return Fraction(_core.gl_span_proportion(n, nprime, q))


def exact_phi_report(kind, n, nprime, q, epsilon="o", sigma="+", sigma_prime="+",
                     budget=0, threads=1, rep_index=0):
    """Full exact-enumeration record: phi, the defining count pair, bound, margin."""
    return _parse(_core.exact_phi_json(kind, n, nprime, q, _sign(epsilon), _sign(sigma),
                                       _sign(sigma_prime), budget, threads, rep_index))


def exact_phi(kind, n, nprime, q, epsilon="o", sigma="+", sigma_prime="+",
              budget=0, threads=1, rep_index=0):
    """Exact probability that a random orbit member meets the fixed subspace."""
    return exact_phi_report(kind, n, nprime, q, epsilon, sigma, sigma_prime,
                            budget, threads, rep_index)["phi"]


def estimate_phi(kind, n, nprime, q, epsilon="o", sigma="+", sigma_prime="+",
                 samples=20000, seed=0):
    """Monte Carlo estimate with a Wilson interval; deterministic in the seed."""
    return _parse(_core.estimate_phi_json(kind, n, nprime, q, _sign(epsilon), _sign(sigma),
                                          _sign(sigma_prime), samples, seed))


def bound_report(kind, n, nprime, q, epsilon="o", sigma="+", sigma_prime="+"):
    """The proved bound c/|F| for a context, with the constant and exception flag."""
    return _parse(_core.bound_json(kind, n, nprime, q, _sign(epsilon), _sign(sigma),
                                   _sign(sigma_prime)))


def bound(kind, n, nprime, q, epsilon="o", sigma="+", sigma_prime="+"):
    """Just the bound value c/|F| as a Fraction."""
    return bound_report(kind, n, nprime, q, epsilon, sigma, sigma_prime)["phi_bound"]


def verify_bounds(grid="small", mode="exact", budget=0, samples=20000, seed=0, threads=1):
    """Check phi <= c/|F| over a named context grid; returns the full run record."""
    return _parse(_core.verify_json(grid, mode, budget, samples, seed, threads))


def check_identities(suite="all"):
    """Sweep the inequality suites; any failing witness appears in the result."""
    return _parse(_core.identities_json(suite))


def constants_table():
    """The headline constants per geometry, with their side conditions."""
    return _parse(_core.table1_json())


def q2_experiment(max_half_dim=6, samples=20000, seed=0, budget=0):
    """Orthogonal q=2 sweep: exact phi where enumerable, sampled otherwise."""
    return _parse(_core.q2_json(max_half_dim, samples, seed, budget))


def wilson_interval(hits, n):
    """Exact-rational Wilson score interval for hits successes out of n."""
    rec = _parse(_core.wilson_json(hits, n))
    return rec["ci_low"], rec["ci_high"]
