total = 0
for item in items:
    total += item
    if total > 100:
        break
