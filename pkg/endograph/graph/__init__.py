"""Simple graphs, permutation groups, automorphism groups and the Frucht construction."""
