"""zw-measures on the Gelfand-Tsetlin graph and Hua-Pickrell matrices."""

import json

from ._gtzw import (
    Error,
    ZwParams,
    canonical_projection,
    cayley,
    haar_unitary,
    inverse_cayley,
    is_admissible,
    log_p_prime,
    log_s_n,
    sample_hua_pickrell,
    sample_signatures,
    tabulate,
    weyl_dim,
)
from . import _gtzw


def embed(signature):
    """Boundary point of a signature as a dict of Voiculescu coordinates."""
    return json.loads(_gtzw.embed(list(signature)))


def verify(only=(), seed=None):
    """Run the self-verification suite and return the report."""
    if seed is None:
        return json.loads(_gtzw.verify(list(only)))
    return json.loads(_gtzw.verify(list(only), seed))


__all__ = [
    "Error",
    "ZwParams",
    "canonical_projection",
    "cayley",
    "embed",
    "haar_unitary",
    "inverse_cayley",
    "is_admissible",
    "log_p_prime",
    "log_s_n",
    "sample_hua_pickrell",
    "sample_signatures",
    "tabulate",
    "verify",
    "weyl_dim",
]
