"""Generalized rings in the sense of Durov: commutative algebraic monads on sets.

Submodules:

* :mod:`genring.exactnum` -- valuations and the product formula
* :mod:`genring.coeffmonads` -- Z, N, B_N, Z_(inf), A_N, F_1, F_{1^2} as coefficient predicates
* :mod:`genring.torsionmonads` -- F_{1^n} and the residue field F_inf
* :mod:`genring.presentations` -- terms, parser, interpretation, bounded proving, finite models
* :mod:`genring.classify` -- commutativity, comparison maps, hypo- and hyperadditivity
* :mod:`genring.spectra` -- prime spectra, the compactified Spec Z and its stalks
* :mod:`genring.projgraded` -- the graded ring R and Proj R
* :mod:`genring.picard_arakelov` -- Picard groups, convex bodies, lattice points, models
"""

__version__ = "0.1.0"
