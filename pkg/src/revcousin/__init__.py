"""Exact constructions for Cousin's lemma in second-order arithmetic: coded reals,
continuous and Baire-class functions, gauges, tagged partitions, the dyadic partition
search, counter-machine computability, and a small second-order logic toolkit."""

__version__ = "0.1.0"
