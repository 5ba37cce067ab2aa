from lark import Lark, Token, Transformer
from lark.exceptions import LarkError, VisitError

from bprk.core.errors import ConfigError

# Cargar gramática desde archivo grammar.lark
with open(__file__.replace("parser.py", "grammar.lark"), "r", encoding="utf-8") as f:
    _GRAMMAR = f.read()

_PARSER = Lark(_GRAMMAR, start="start", parser="lalr")


def _to_int_or_float(s: str):
    try:
        if any(ch in s for ch in ".eE"):
            return float(s)
        return int(s)
    except ValueError:
        return float(s)


class _T(Transformer):
    # ==== LITERALES ====
    def number(self, items):
        return _to_int_or_float(items[0].value)

    def string(self, items):
        # para quitar comillas de ESCAPED_STRING
        return items[0].value[1:-1]

    def boolean(self, items):
        return items[0].value == "true"

    def word(self, items):
        return items[0].value

    def list_value(self, items):
        return list(items)

    # ==== ASIGNACIONES ====
    def assignment(self, items):
        key = items[0].value if isinstance(items[0], Token) else str(items[0])
        return key, items[1]

    def assignments(self, items):
        result = {}
        for key, value in items:
            if key in result:
                raise ConfigError(f"Key '{key}' is assigned twice")
            result[key] = value
        return result

    def start(self, items):
        return items[0] if items and items[0] is not None else {}


_TRANSFORMER = _T()


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into a dict, preserving file order."""
    try:
        tree = _PARSER.parse(text.strip() + "\n" if text.strip() else "")
        return _TRANSFORMER.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ConfigError):
            raise e.orig_exc
        raise ConfigError(f"Invalid configuration: {e.orig_exc}") from e
    except LarkError as e:
        raise ConfigError(f"Invalid configuration syntax: {e}") from e


def parse_config_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"Cannot read configuration file {path}: {e}") from e
    return parse_config_text(text)


def parse_override(item: str) -> dict:
    """One ``--set key=value`` argument."""
    if "=" not in item:
        raise ConfigError(f"Override '{item}' is not of the form key=value")
    return parse_config_text(item)
