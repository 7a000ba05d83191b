"""Robust transmission expansion planning with storage under budgeted
demand/generation uncertainty.

The heavy lifting lives in the compiled ``_tnep`` extension; this package
re-exports its surface.  Structs cross the language boundary by value, so
mutate nested fields via whole-struct assignment::

    u = case.uncertainty
    u.budget_demand = 2
    case.uncertainty = u
"""

from ._tnep import *  # noqa: F401,F403
from ._tnep import __doc__ as _core_doc  # noqa: F401
