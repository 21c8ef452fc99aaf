"""
Flask Routes

JSON endpoints of the broadcasting toolkit. Every endpoint returns the same
ReportEnvelope the CLI prints with --format json.
"""

import logging

from flask import Blueprint, jsonify, request

from config.settings import THRESHOLD_STEP, TOOL_VERSION
from app import reports
from simulators.errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

# Create blueprint
bp = Blueprint('main', __name__)


class QueryError(ValueError):
    """A query parameter is missing or not a number."""


def _number(name, cast=float, default=None):
    raw = request.args.get(name)
    if raw is None:
        if default is None:
            raise QueryError(f"missing query parameter '{name}'")
        return default
    try:
        return cast(raw)
    except ValueError:
        raise QueryError(f"query parameter '{name}' must be a number, got {raw!r}")


def _respond(build):
    """Run a report builder and map failures to 400 (bad input) or 500."""
    try:
        return jsonify(build().as_dict())
    except (QueryError, DomainError, DimensionError) as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        logger.exception("error in %s", request.path)
        return jsonify({'error': f'Server error: {str(e)}'}), 500


@bp.route('/')
def index():
    """Service description"""
    return jsonify({
        'service': 'entanglement-broadcasting',
        'tool_version': TOOL_VERSION,
        'endpoints': ['/range?eta=', '/nonlocal?max_m=', '/clone3?alpha_sq=', '/threshold?step='],
    })


@bp.route('/favicon.ico')
def favicon():
    """Return empty favicon to prevent 404 errors"""
    return '', 204


@bp.route('/range')
def alpha_ranges():
    """
    Analytic alpha^2 ranges for one reduction factor.

    Query:
        eta: reduction factor in (0, 2/3]
    """
    return _respond(lambda: reports.range_report(_number('eta')))


@bp.route('/nonlocal')
def nonlocal_scaling():
    """Copy-count scaling of nonlocal entanglement cloning (max_m defaults to 10)."""
    return _respond(lambda: reports.nonlocal_report(_number('max_m', int, 10)))


@bp.route('/clone3')
def clone3():
    """1->3 broadcasting for one input weight alpha_sq."""
    return _respond(lambda: reports.clone3_report(_number('alpha_sq')))


@bp.route('/threshold')
def threshold():
    """Downward eta scan for the broadcasting threshold."""
    return _respond(lambda: reports.threshold_report(_number('step', float, THRESHOLD_STEP)))
