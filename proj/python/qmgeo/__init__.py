"""Python interface to the qmgeo geometry kernels.

The compiled extension lives next to this file in an installed wheel; in a
plain CMake build it sits at the top of the build directory instead, so fall
back to a bare import there.
"""

try:
    from ._qmgeo import *  # noqa: F401,F403
    from ._qmgeo import __version__  # noqa: F401
except ImportError:
    from _qmgeo import *  # noqa: F401,F403
    from _qmgeo import __version__  # noqa: F401
