"""Critical groups of strongly regular graphs."""
