while True:
    return
if x:
    return x + 1
