"""Bicharacter construction of H_D-quantum vertex algebras, computed exactly."""
