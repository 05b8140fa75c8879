"""Independent reference computations that share no code with the pipeline."""
