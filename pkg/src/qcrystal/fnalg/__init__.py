"""Quantized function algebra O_t(SL(n+1)) and its matrix coefficients."""
