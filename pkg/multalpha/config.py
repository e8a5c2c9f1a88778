"""Configuration initialization and handling."""

import os
import sys
import toml

from argparse import (
    Namespace)
from typing import (
    Any,
    Dict,
    Optional)

from multalpha.errors import (
    MultalphaConfigError,
    MultalphaInternalError)
from multalpha.io_console import (
    print_w_d2,
    set_quiet)
from multalpha.io_files import (
    dir_exists,
    file_exists,
    read_text)

THREADS_ENV_VAR = 'MULTALPHA_THREADS'
OUTPUT_FORMATS = ('text', 'csv', 'json')

_CONFIG_DIR = os.path.join(
    os.path.abspath(os.path.dirname(__file__)), 'configuration')

db: Dict[str, Any] = dict()


def good_py_version() -> bool:
    """Verify that this program is being run with the expected version."""
    return sys.version_info >= (3, 10)


def py_version_str() -> str:
    """Get the running Python version as a string."""
    return str(sys.version_info.major) + '.' + str(sys.version_info.minor)


def load_default_config_file(filename: str) -> str:
    """Packaged-friendly method to load contents of a default config file."""
    pyinst_basedir = getattr(sys, '_MEIPASS', None)
    if pyinst_basedir is not None:
        # load configuration from PyInstaller bundle
        filepath = os.path.join(pyinst_basedir, 'configuration', filename)
    else:
        # load configuration from either Python wheel or the filesystem
        filepath = os.path.join(_CONFIG_DIR, filename)

    try:
        return read_text(filepath)
    except FileNotFoundError:
        raise MultalphaConfigError(
            'Unable to find default configuration file `' + filename + '`')


def load_config_file(filename: str, base_dir: Optional[str]=None) -> str:
    """Load config file from specified base_dir, falling back on defaults."""
    if base_dir is None:
        return load_default_config_file(filename)
    elif not dir_exists(base_dir):
        print_w_d2('Specified `--config-dir` ', base_dir, ' does not exist, '
                   'falling back to default configuration file for ', filename)
        return load_default_config_file(filename)

    path = os.path.join(base_dir, filename)
    if file_exists(path):
        return read_text(path)
    else:
        print_w_d2('File ', filename, ' not found in specified `--config-dir`'
                   ', falling back to default configuration file for ',
                   filename)
        return load_default_config_file(filename)


def load_toml_config_file(filename: str,
                          base_dir: Optional[str]=None) -> Dict[str, Any]:
    """Load and parse a TOML configuration file."""
    try:
        return toml.loads(load_config_file(filename, base_dir))
    except toml.TomlDecodeError as e:
        raise MultalphaConfigError(
            'Unable to parse `' + filename + '`: ' + str(e))


def load_defaults(config_dir: Optional[str]=None) -> Dict[str, Any]:
    """Load the study and engine defaults from `defaults.toml`."""
    return load_toml_config_file('defaults.toml', config_dir)


def load_published(config_dir: Optional[str]=None) -> Dict[str, Any]:
    """Load the published reference cells from `published.toml`."""
    return load_toml_config_file('published.toml', config_dir)


def get_defaults() -> Dict[str, Any]:
    """Return the active defaults, loading the bundled file on first use."""
    if 'defaults' not in db:
        db['defaults'] = load_defaults()
    return db['defaults']


def default_value(section: str, key: str) -> Any:
    """Look up `key` in a section of the active defaults."""
    try:
        return get_defaults()[section][key]
    except KeyError:
        raise MultalphaConfigError(
            'Missing configuration value `' + section + '.' + key + '`')


def worker_count() -> int:
    """Number of simulation workers, capped by `MULTALPHA_THREADS`."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return os.cpu_count() or 1

    try:
        count = int(raw)
        if count < 1:
            raise ValueError
    except ValueError:
        raise MultalphaConfigError(
            'Invalid `' + THREADS_ENV_VAR + '` value ' + repr(raw) +
            '; must be a positive integer')
    return count


def init_config(ns: Namespace) -> None:
    """Init configuration from default files and command-line arguments."""
    # --quiet
    db['quiet'] = ns.quiet
    set_quiet(ns.quiet)

    # --config-dir
    if ns.config_dir is not None and not dir_exists(ns.config_dir):
        raise MultalphaConfigError(
            '`--config-dir` directory ' + ns.config_dir + ' does not exist')
    db['config-dir'] = ns.config_dir

    # --format
    if ns.format not in OUTPUT_FORMATS:
        raise MultalphaConfigError(
            'Invalid `--format` specified: ' + str(ns.format))
    db['format'] = ns.format

    db['defaults'] = load_defaults(ns.config_dir)
    db['published'] = load_published(ns.config_dir)
    db['threads'] = worker_count()


def get_db_value(key: str) -> Any:
    """Retrieve a database value."""
    try:
        return db[key]
    except KeyError:
        raise MultalphaInternalError(
            'Attempted to access unknown database key `' + key + '`')
