"""Exact lattice arithmetic and SVG rendering."""
