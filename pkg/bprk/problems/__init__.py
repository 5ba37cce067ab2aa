# Test problems
