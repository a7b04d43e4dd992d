"""Domain services: validation, tau permutations, surfaces, partitions, tessellations and generators."""
