"""Coresets for k-means clustering of noisy data."""
