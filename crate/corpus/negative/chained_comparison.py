ok = 1 < x < 10
