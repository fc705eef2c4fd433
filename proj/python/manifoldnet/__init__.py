"""Networks as points on the manifold of symmetric positive-definite matrices."""

import json

from ._core import *  # noqa: F401,F403
from ._core import ManifoldNetError, _run_scalefree, _run_toy

__all__ = [name for name in dir() if not name.startswith("_")]


def run_toy(seeds, n=200, m=400, supports=((1.0, 1.0), (1.0, 1.5), (1.0, 2.0)), eps=DEFAULT_EPS):  # noqa: F405
    """Chain/star/random ordering experiment; returns the report as a dict."""
    return json.loads(_run_toy(list(seeds), n, m, [tuple(s) for s in supports], eps))


def run_scalefree(seed, n_per_class=20, n=200, m=1164, m_attach=6, eps=DEFAULT_EPS, out_dir=""):  # noqa: F405
    """Preferential-attachment vs random cohorts; returns the report as a dict."""
    return json.loads(_run_scalefree(n_per_class, n, m, m_attach, seed, eps, str(out_dir)))
