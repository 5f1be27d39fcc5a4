"""Python bindings for the genfrac C++ library."""

from ._genfrac import *  # noqa: F401,F403
from ._genfrac import __doc__  # noqa: F401
