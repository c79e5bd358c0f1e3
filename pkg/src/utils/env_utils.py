import os
import shutil
from typing import Any, Iterator, Mapping, Tuple

from src.utils.exceptions import ConfigParseError


def ensure_env_file_exists(env_path: str = '.env', example_env_path: str = '.env.example') -> bool:
    """
    Ensures that the .env file exists. If it doesn't, creates it from the example file or creates an empty one.

    Args:
        env_path: Path to the .env file
        example_env_path: Path to the example .env file

    Returns:
        bool: True if the file was created, False if it already existed
    """
    if os.path.exists(env_path):
        return False

    if os.path.exists(example_env_path):
        shutil.copy2(example_env_path, env_path)
    else:
        with open(env_path, 'w', encoding='utf-8') as f:
            f.write("# Environment Variables\n")

    return True


def iter_key_value_lines(text: str) -> Iterator[Tuple[int, str, str]]:
    """
    Yields (line_number, key, value) for every assignment in key=value text.

    Empty lines and lines starting with '#' are skipped; the first '=' splits
    key from value and both are stripped.

    Raises:
        ConfigParseError: A non-comment line has no '=' or an empty key
    """
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue

        if '=' not in line:
            raise ConfigParseError(f"expected key=value, got {line!r}", line_number)
        key, value = line.split('=', 1)
        key = key.strip()
        if not key:
            raise ConfigParseError("missing key before '='", line_number)
        yield line_number, key, value.strip()


def get_env_value(env_settings: Mapping[str, str], key: str, default: Any, type_cast=None) -> Any:
    """
    Get environment variable value with type casting and error handling.

    Args:
        env_settings: Mapping of environment settings (os.environ works)
        key: Environment variable key
        default: Default value if key not found or conversion fails
        type_cast: Type to cast the value to (bool, int, float, etc.)

    Returns:
        The environment value cast to the specified type, or default value
    """
    val = env_settings.get(key, default)
    if val == "":
        return default
    if type_cast:
        try:
            if type_cast is bool:
                return str(val).lower() == "true"
            return type_cast(val)
        except (ValueError, TypeError):
            return default
    return val
