"""
Entanglement Broadcasting Toolkit - Main Entry Point

Exposes the WSGI application for gunicorn (`main:app`) and runs the
command-line interface when executed as a script:

    python main.py verify
    python main.py sweep --format csv --out report.csv
"""

from app import create_app
from app.cli import cli

# Create the Flask application
app = create_app()

if __name__ == '__main__':
    cli()
