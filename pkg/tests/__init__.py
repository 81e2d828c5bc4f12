# Tests directory initializer
