a = b = c = 0
x += 1
y -= x
items[0] = 5
obj.field = items[0]
