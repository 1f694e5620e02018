doc = """First line
    second line, indented
third line"""
x = 1
