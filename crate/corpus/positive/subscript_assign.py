counts = {}
counts["a"] = 1
counts["a"] += 2
matrix[i][j] -= 1
