"""Exact workbench for rational maps, orbifolds and semiconjugacy equations."""
