"""Exact p-adic and mod p computations for GL2(Q_p)."""

import json

from . import _core
from ._core import PgkError, tree_dim

__all__ = ["PgkError", "run", "reduce_crystalline", "is_admissible_dkap", "correspond_ind", "ext_dim", "tree_dim"]

EXIT_DECIDED, EXIT_USAGE, EXIT_UNDECIDED, EXIT_PRECISION = 0, 1, 3, 4


def run(command, op="", *, a=8, N=64, L=None, threads=0, cache_dir=None, **params):
    """Run a pgk command. Returns (exit_code, result) where result is parsed JSON, CSV text, or the error object."""
    params = {k: str(v) for k, v in params.items()}
    code, out, err = _core.run_job(command, op, params, a, N, L, threads, cache_dir)
    if not out:
        return code, json.loads(err) if err else None
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out


def reduce_crystalline(p, k, ap):
    return json.loads(_core.reduce_crystalline(p, k, str(ap)))


def is_admissible_dkap(p, k, ap):
    return json.loads(_core.is_admissible_dkap(p, k, str(ap)))


def correspond_ind(p, h):
    return json.loads(_core.correspond_ind(p, h))


def ext_dim(p, d1, d2):
    enc = lambda d: d if isinstance(d, str) else json.dumps(d)
    return _core.ext_dim(p, enc(d1), enc(d2))
