"""Ferromagnetic Ising model on sparse random graphs.

Exact enumeration on small graphs, cavity/population-dynamics fixed points,
limiting thermodynamic quantities, and Glauber-dynamics cross-checks.
"""

try:
    from ._pyising import *  # noqa: F401,F403  (installed layout)
    from ._pyising import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree layout: extension built next to the package
    from _pyising import *  # type: ignore # noqa: F401,F403

__version__ = "0.1.0"
