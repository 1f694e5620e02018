if a: b = 1
while flag: step()
if c:
    pass
else: d = 2
