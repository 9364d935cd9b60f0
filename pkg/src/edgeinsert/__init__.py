"""Multiple edge insertion into planar graphs."""
