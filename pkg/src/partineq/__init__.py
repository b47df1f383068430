"""Exact q-series and partition inequality verification.

Modules, bottom-up: ``fps`` (truncated power series), ``partitions``
(frequency-form partitions, constrained enumeration and counting),
``maps`` (the injections and their complements), ``hypergeom`` (basic
hypergeometric series with monomial parameters), ``genfun`` (named closed
forms), ``identities`` (claim registry and checker), ``scan`` (conjecture
evidence) and ``cli``.
"""

__version__ = "0.1.0"
