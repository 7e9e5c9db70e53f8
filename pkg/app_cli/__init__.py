# app_cli/__init__.py
