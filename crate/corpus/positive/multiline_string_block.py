if ready:
    banner = '''
+------+
| box  |
+------+
'''
    show(banner)
else:
    pass
