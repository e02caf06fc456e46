"""
Configuration and logging setup for weylgraphs

Configuration is a plain dict: built-in defaults, overridden key by key by a
YAML (or JSON) file when one is given.
"""

import os
import sys
import logging

import yaml

DEFAULT_CONFIG_FILE = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    'config', 'weylgraphs-config.yml')

DEFAULT_CONFIG = {
    "log_file": None,
    "log_level": "INFO",
    "canonical_max_vertices": 512,
    "automorphism_max_vertices": 256,
    "symplectic_max_half_dimension": 5,
    "workers": 1,
    "seed": 0,
    "relabel_rounds": 100,
    "report_file": None,
    "metrics_file": None,
}

# Active configuration; library functions read their caps from here.
_active = dict(DEFAULT_CONFIG)


def load_config(config_file=None):
    """Load configuration from a YAML file, merged over the defaults"""
    config = dict(DEFAULT_CONFIG)
    config_file = config_file or DEFAULT_CONFIG_FILE

    try:
        if os.path.exists(config_file):
            with open(config_file, 'r') as f:
                loaded = yaml.safe_load(f) or {}
            for key, value in loaded.items():
                if key not in DEFAULT_CONFIG:
                    logging.getLogger(__name__).warning(
                        f"Ignoring unknown config key: {key}")
                    continue
                config[key] = value
    except (OSError, yaml.YAMLError) as e:
        print(f"Error loading config {config_file}: {e}", file=sys.stderr)

    return config


def activate(config):
    """Make `config` the configuration library calls consult"""
    _active.clear()
    _active.update(DEFAULT_CONFIG)
    _active.update(config)


def get(key):
    return _active.get(key, DEFAULT_CONFIG.get(key))


def setup_logging(config):
    """Setup logging configuration"""
    log_level = getattr(logging, str(config.get('log_level', 'INFO')).upper(),
                        logging.INFO)
    log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = config.get('log_file')
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(level=log_level, format=log_format,
                        handlers=handlers, force=True)
    return logging.getLogger('weylgraphs')
