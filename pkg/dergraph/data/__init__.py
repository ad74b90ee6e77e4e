from .character_cache import (
    InvalidCharacterCacheFile,
    load_character_table,
    save_character_table,
)
from .suite_definition import (
    CheckName,
    LiteralCheck,
    SuiteDefinition,
    InvalidSuiteDefinitionFile,
)


__all__ = (
    "InvalidCharacterCacheFile",
    "load_character_table",
    "save_character_table",
    "CheckName",
    "LiteralCheck",
    "SuiteDefinition",
    "InvalidSuiteDefinitionFile",
)
