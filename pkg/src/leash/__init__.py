"""Exact leash-metric computations for group actions on a dyadic measure space."""
from __future__ import annotations

__version__ = "0.1.0"

from .actions import *  # noqa: F401,F403
from .approximation import *  # noqa: F401,F403
from .distances import *  # noqa: F401,F403
from .dyadic import Dyadic, parse_dyadic  # noqa: F401
from .errors import *  # noqa: F401,F403
from .groups import *  # noqa: F401,F403
from .measure import *  # noqa: F401,F403
from .metrics import *  # noqa: F401,F403
from .mixing import *  # noqa: F401,F403
from .transforms import *  # noqa: F401,F403
