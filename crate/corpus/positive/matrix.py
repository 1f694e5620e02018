def transpose(m):
    out = []
    for i in range(len(m[0])):
        row = []
        for j in range(len(m)):
            row.append(m[j][i])
        out.append(row)
    return out

grid = [[1, 2, 3],
        [4, 5, 6]]
print(transpose(grid))
