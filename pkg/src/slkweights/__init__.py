"""Exact weight multiplicities and chamber complexes for type A."""
