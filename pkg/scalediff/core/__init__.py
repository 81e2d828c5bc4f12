# scalediff/core/__init__.py
