"""Lattice, braid group, hearts, periods, conformal maps and stability conditions."""
