"""Maltsev bases and canonical forms for partially commutative nilpotent groups."""
