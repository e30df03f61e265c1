"""Exact q-series toolkit for shifted and shiftless partition identities.

Modules:
    qseries      truncated Laurent series over exact integers
    theta        theta-bracket atoms, monomials, and Ramanujan's f(a,b)
    jacobi       four-parameter theta relations and identity derivation
    partitions   partition identities, verification, and special checks
    equivalence  the U(M) unit-group action and classification
    search       bulk parameter search for derivable identities
    corpus       the shipped identity catalog, loader and validator
    cli          command-line interface
"""

__version__ = "0.1.0"
