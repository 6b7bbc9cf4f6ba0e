"""Matroids on group-labeled graphs: constructions, connectivity, structure and checks."""
