print("one",
      "two",
      "three")
result = compute(1,
2,
                 3)
