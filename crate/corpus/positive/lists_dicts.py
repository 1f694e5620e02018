xs = [1, 2, 3]
empty = []
pairs = {"a": 1, "b": 2}
nested = [[1, 2], [3, 4]]
first = xs[0]
cell = nested[1][0]
