# Bounds mappings
