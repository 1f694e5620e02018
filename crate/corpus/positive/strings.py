a = 'single'
b = "double"
c = 'it\'s escaped'
d = "tab\tand newline\n"
e = a + b
