import json
from io import TextIOBase

from ..errors import FormatError
from .data import GeneratorSet

__all__ = ["load_generator_set", "save_generator_set", "parse_generator_set"]


def parse_generator_set(text: str) -> GeneratorSet:
    """Parses a GeneratorSet JSON document.

    Raises:
        FormatError:
            The text isn't valid JSON (the message carries the line and
            column) or a field is malformed (the error names the field).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e

    return GeneratorSet.from_json(data)


def load_generator_set(file: TextIOBase) -> GeneratorSet:
    """Load a GeneratorSet JSON document from disk.

    Args:
        file (TextIOBase):
            The file handle to read the generator set from.
    """
    return parse_generator_set(file.read())


def save_generator_set(file: TextIOBase, gs: GeneratorSet):
    """Saves the generator set to disk.

    Floats are written in their shortest round-trip form, so loading the
    file back reproduces every coordinate bit for bit.

    Args:
        file (TextIOBase):
            The file handle to write the generator set to.
        gs (GeneratorSet):
            The generator set to save to disk.
    """
    json.dump(gs.to_json(), file, indent=2)
    file.write("\n")
