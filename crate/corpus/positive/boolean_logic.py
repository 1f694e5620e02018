ok = a and b or not c
fine = not (a or b) and c
flag = x > 1 and y <= 2 or z != 3
