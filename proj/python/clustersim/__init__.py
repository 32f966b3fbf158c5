"""Monte Carlo simulator for clustered LEO satellite downlink networks.

The heavy lifting lives in the compiled extension; this package re-exports it
and adds a couple of convenience helpers.
"""

import json as _json

from ._clustersim import *  # noqa: F401,F403
from ._clustersim import __version__, advise_json as _advise_json  # noqa: F401


def advise(**kwargs):
    """Fronthaul split advice as a plain dict.

    Keyword arguments mirror the CLI: theta_c_deg, altitude_km,
    earth_radius_km, n_slaves, capacity_ul_gbps, capacity_dl_gbps,
    processing_ms, safety_margin.
    """
    return _json.loads(_advise_json(**kwargs))
