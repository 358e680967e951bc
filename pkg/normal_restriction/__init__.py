"""Finite permutation groups, subgroup lattices and checks of normal-restriction (NR) properties"""
