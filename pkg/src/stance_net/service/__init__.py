"""HTTP front end for the stance pipeline."""
