"""3-SAT to Evolomino reduction."""
