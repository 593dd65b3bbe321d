"""
Geometric Algebra Qubit Engine - HTTP API
Flask application exposing the decompose / observables / overlap / bell-curve
commands and the engine self-checks.
"""

import os
import logging
from datetime import datetime

from flask import Flask, request, jsonify
from flask_cors import CORS

from config import Config

# --- Application-wide Logging Setup ---
logging.basicConfig(level=getattr(logging, Config.LOG_LEVEL, logging.WARNING))
logger = logging.getLogger(__name__)

from engine.exceptions import ConvergenceError, DomainError, ParseError, UsageError
from models import StateSpec
from services import StateAnalysisService
from utils import HealthChecker, curve_to_dict

# --- Flask Application Instance Initialization ---
app = Flask(__name__)

# --- Configure Cross-Origin Resource Sharing (CORS) ---
CORS(app, origins=Config.CORS_ORIGINS)


def initialize_services():
    """Initializes the analysis service and the health checker, logging their status."""
    services = {}

    Config.log_config_status()
    Config.validate_config()

    try:
        services['analysis'] = StateAnalysisService()
        logger.info("✅ Analysis service initialized")
    except Exception as e:
        logger.error(f"❌ Analysis service initialization failed: {e}")
        services['analysis'] = None

    try:
        services['health'] = HealthChecker(services)
        logger.info("✅ Health checker initialized")
    except Exception as e:
        logger.error(f"❌ Health checker initialization failed: {e}")
        services['health'] = None

    return services


services = initialize_services()


def _timestamp() -> str:
    return datetime.now().isoformat()


def _error_response(message: str, status: int):
    return jsonify({
        'success': False,
        'error': message,
        'timestamp': _timestamp()
    }), status


def _analysis_service() -> StateAnalysisService:
    if not services.get('analysis'):
        raise RuntimeError("Analysis service not available")
    return services['analysis']


def _request_body() -> dict:
    body = request.get_json(silent=True)
    if not isinstance(body, dict):
        raise ParseError("Request body must be a JSON object")
    return body


def _state_from(body: dict, key: str = 'state') -> StateSpec:
    if key not in body:
        raise ParseError(f"Request body is missing '{key}'")
    return StateSpec.from_document(body[key])


def _flag(value, name: str) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ('true', '1', 'yes', 'false', '0', 'no', ''):
        return value.lower() in ('true', '1', 'yes')
    raise UsageError(f"'{name}' must be a boolean")


def _report_response(record):
    return jsonify({
        'success': True,
        'report': record.to_dict(),
        'timestamp': _timestamp()
    })


# ================================
# MAIN API ROUTES
# ================================

@app.route('/')
def api_info():
    """General information about the API."""
    return jsonify({
        'name': Config.APP_NAME,
        'version': Config.APP_VERSION,
        'status': 'running',
        'timestamp': _timestamp(),
        'description': 'Two-qubit states as multivectors: Schmidt decomposition, observables, overlap probabilities',
        'services': services['health'].get_service_status() if services.get('health') else {},
        'api_endpoints': {
            'info': 'GET /',
            'health_check': 'GET /health',
            'decompose': 'POST /api/decompose',
            'observables': 'POST /api/observables',
            'overlap': 'POST /api/overlap',
            'bell_curve': 'GET /api/bell-curve?samples=N'
        }
    })


@app.route('/health')
def health_check_endpoint():
    """Engine self-checks plus configuration status."""
    if not services.get('health'):
        logger.error("Health checker service is not available during health check request.")
        return jsonify({
            'status': 'error',
            'error': 'Health checker not available',
            'timestamp': _timestamp()
        }), 500

    health = services['health'].get_comprehensive_health()
    return jsonify(health), 200 if health['status'] == 'healthy' else 503


@app.route('/api/decompose', methods=['POST'])
def decompose_state():
    body = _request_body()
    record = _analysis_service().decompose(_state_from(body), xcheck=_flag(body.get('xcheck', False), 'xcheck'))
    return _report_response(record)


@app.route('/api/observables', methods=['POST'])
def state_observables():
    body = _request_body()
    record = _analysis_service().observables(_state_from(body), xcheck=_flag(body.get('xcheck', False), 'xcheck'))
    return _report_response(record)


@app.route('/api/overlap', methods=['POST'])
def state_overlap():
    body = _request_body()
    record = _analysis_service().overlap(
        _state_from(body, 'state'),
        _state_from(body, 'other_state'),
        xcheck=_flag(body.get('xcheck', False), 'xcheck'),
    )
    return _report_response(record)


@app.route('/api/bell-curve', methods=['GET'])
def bell_curve():
    raw_samples = request.args.get('samples', str(Config.BELL_CURVE_DEFAULT_SAMPLES))
    try:
        samples = int(raw_samples)
    except ValueError:
        raise UsageError(f"samples must be an integer, got '{raw_samples}'")
    if samples > Config.MAX_BELL_CURVE_SAMPLES:
        raise UsageError(f"samples is limited to {Config.MAX_BELL_CURVE_SAMPLES}")

    frame = _analysis_service().bell_curve(samples, xcheck=_flag(request.args.get('xcheck', 'false'), 'xcheck'))
    return jsonify({
        'success': True,
        'report': curve_to_dict(frame),
        'timestamp': _timestamp()
    })


# ================================
# GLOBAL ERROR HANDLERS
# ================================

@app.errorhandler(UsageError)
def usage_error_handler(error):
    """Malformed state specs, bad flags, out-of-range parameters."""
    logger.warning(f"⚠️ Rejected request: {error}")
    return _error_response(str(error), 400)


@app.errorhandler(DomainError)
@app.errorhandler(ConvergenceError)
def domain_error_handler(error):
    """Well-formed input the engine cannot work with (zero state, unnormalized input...)."""
    logger.warning(f"⚠️ Domain error: {error}")
    return _error_response(str(error), 422)


@app.errorhandler(400)
def bad_request_error_handler(error):
    """Handles HTTP 400 Bad Request errors."""
    return _error_response(f"Bad Request: {error}", 400)


@app.errorhandler(404)
def not_found_error_handler(error):
    """Handles HTTP 404 Not Found errors."""
    return jsonify({
        'success': False,
        'error': 'Endpoint not found. Please check the URL.',
        'available_endpoints': [
            'GET /',
            'GET /health',
            'POST /api/decompose',
            'POST /api/observables',
            'POST /api/overlap',
            'GET /api/bell-curve'
        ],
        'timestamp': _timestamp()
    }), 404


@app.errorhandler(405)
def method_not_allowed_error_handler(error):
    """Handles HTTP 405 Method Not Allowed errors."""
    return _error_response(f"Method not allowed: {error}", 405)


@app.errorhandler(500)
def internal_server_error_handler(error):
    """Handles HTTP 500 Internal Server Errors."""
    logger.error(f"An unhandled internal server error occurred: {error}", exc_info=True)
    return _error_response('Internal server error. An unexpected condition was encountered.', 500)


# ================================
# APPLICATION ENTRY POINT
# Gunicorn imports 'app' directly; this block is for local runs.
# ================================

if __name__ == '__main__':
    port = int(os.environ.get('PORT', 5000))
    debug_mode = os.environ.get('FLASK_ENV') == 'development'

    logger.info(f"🚀 Starting {Config.APP_NAME} v{Config.APP_VERSION}")
    logger.info(f"📡 Port: {port}")
    logger.info(f"🔧 Debug Mode: {debug_mode}")

    app.run(host='0.0.0.0', port=port, debug=debug_mode)
