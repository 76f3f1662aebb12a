"""Prime graph complements of finite groups.

A toolkit for computing Gruenberg-Kegel graphs (prime graphs) of finite
groups, for extracting the prime graph complements of group extensions from
exact character data and finite-field representations, and for deciding
whether a given graph is realizable as the prime graph complement of a
solvable, Sz(32)-solvable, Sz(8)-solvable, or PSL(2,32)-solvable group.
"""

__version__ = "0.1.0"
