"""Ring groups of H-trivial links."""
