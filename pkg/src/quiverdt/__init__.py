"""Exact motivic DT invariants of quivers with stability."""
