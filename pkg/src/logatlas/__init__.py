"""logatlas: the set of real logarithms of a matrix, classified and sampled.

For a semi-simple real matrix (or a special orthogonal one, in skew mode)
the package enumerates the branches of its logarithm set, builds canonical
and randomly sampled logarithms on each branch, and reports the
differential-topological structure of every branch: dimension, connected
components, fundamental group, second homotopy rank and, where available,
the higher homotopy factorization.
"""

__version__ = "0.1.0"
