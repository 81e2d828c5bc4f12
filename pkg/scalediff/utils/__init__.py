# scalediff/utils/__init__.py
