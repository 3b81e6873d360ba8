"""Small bundled corpora used by tests, demos and the ablation driver.

``eng``: English sentences with repeated collocations ("of the", "in the morning").
``hin``: Hindi (Devanagari) sentences.
``ben``, ``asm``: short Bengali and Assamese samples.
:func:`bilingual`: English plus a Hindi subset of similar byte size.
"""

from importlib import resources

NAMES = ("eng", "hin", "ben", "asm")
# evaluation language code -> fixture name
LANG_CODES = {"as": "asm", "bn": "ben", "eng": "eng", "hi": "hin"}


def path(name: str):
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(NAMES)}")
    return resources.files(__name__) / f"{name}.txt"


def load(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def lines(name: str) -> list[str]:
    return [l for l in load(name).split("\n") if l.strip()]


def bilingual_lines() -> list[str]:
    """English plus the last 150 Hindi lines; roughly byte-balanced between scripts."""
    return lines("eng") + lines("hin")[-150:]


def bilingual() -> str:
    return "\n".join(bilingual_lines()) + "\n"


def manifest_entries(langs=None) -> list[dict]:
    """Manifest items ``{lang, path}`` for the bundled fixtures."""
    langs = sorted(LANG_CODES) if langs is None else langs
    return [{"lang": code, "path": str(path(LANG_CODES[code]))} for code in langs]


def write_manifest(dest, langs=None) -> None:
    import json
    from pathlib import Path

    Path(dest).write_text(json.dumps(manifest_entries(langs), indent=1) + "\n", encoding="utf-8")
