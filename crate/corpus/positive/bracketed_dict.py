config = {
    "name": "demo",
    "size": 10,
    "flags": [
        True,
        False,
    ],
}
