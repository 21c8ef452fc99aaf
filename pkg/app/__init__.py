"""
Flask Application Package

The JSON HTTP service, the command-line interface, and the report helpers
both of them share.
"""

import logging

from flask import Flask
from dotenv import load_dotenv

# Load environment variables (PORT, HOST)
load_dotenv()


def create_app():
    """
    Application factory pattern for creating Flask app.

    Returns:
        Flask application instance
    """
    app = Flask(__name__)
    app.json.sort_keys = False

    # Register routes
    from app import routes
    app.register_blueprint(routes.bp)

    logging.getLogger(__name__).debug("registered routes: %s",
                                      sorted(rule.rule for rule in app.url_map.iter_rules()))
    return app
