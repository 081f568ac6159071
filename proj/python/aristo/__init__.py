"""Three-body first-order dynamics with logarithmic interactions.

Thin Python layer over the native core: vector fields, conserved quantities,
coupling classification, integration and the verification suites.
"""

import json

from . import _aristo
from ._aristo import (
    AristoError,
    SCHEMA_VERSION,
    TRAJECTORY_CSV_HEADER,
    auxiliary_rhs,
    cubic_roots,
    fundamental_dirres,
    grad_potential,
    h1,
    h2,
    h3,
    physical_rhs,
    tau_of_time,
)

__all__ = [
    "AristoError",
    "SCHEMA_VERSION",
    "TRAJECTORY_CSV_HEADER",
    "auxiliary_rhs",
    "classify",
    "cubic_roots",
    "fundamental_dirres",
    "grad_potential",
    "h1",
    "h2",
    "h3",
    "integrate",
    "physical_rhs",
    "tau_of_time",
    "verify",
]


def classify(a, b, c):
    """Root profile of the couplings as a dict."""
    return json.loads(_aristo.classify_json(a, b, c))


def verify(suite="all", couplings=(1.0, 1.0, 1.0), omega=1.0, samples=100, seed=1, box=5.0):
    """Run a verification suite and return the report as a dict."""
    a, b, c = couplings
    return json.loads(_aristo.verify_json(suite, a, b, c, omega, samples, seed, box))


def integrate(state, couplings=(1.0, 1.0, 1.0), model="auxiliary", omega=1.0, t0=0.0, t1=1.0,
              rtol=1e-10, atol=1e-12, tau0=0j):
    """Integrate the auxiliary or physical model; returns the trajectory as a dict."""
    a, b, c = couplings
    return json.loads(
        _aristo.integrate_json(model, list(state), a, b, c, omega, t0, t1, rtol, atol, complex(tau0))
    )
