"""Crystal lattices of quantized function algebras of type A, checked exactly at small rank."""
