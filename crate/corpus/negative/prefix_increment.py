i = 0
j = ++i
