1 = x
