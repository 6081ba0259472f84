"""Second-order weight distributions of codes over finite fields."""
