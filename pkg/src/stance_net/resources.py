"""Access to the word lists and default lexicon shipped with the package.

All list files are plain text, one entry per line, with '#' starting a
comment.  Entries are matched case-insensitively everywhere, so they are
folded to lowercase on load.
"""

from functools import lru_cache
from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    """Absolute path of a bundled data file."""
    return DATA_DIR / name


def load_word_list(path: str | Path) -> frozenset[str]:
    """Load a one-entry-per-line word file, lowercased, comments stripped."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            entry = line.split("#", 1)[0].strip()
            if entry:
                words.add(entry.lower())
    return frozenset(words)


@lru_cache(maxsize=None)
def _cached_list(name: str) -> frozenset[str]:
    return load_word_list(data_path(name))


def stopwords() -> frozenset[str]:
    return _cached_list("stopwords.txt")


def abbreviations() -> frozenset[str]:
    """Sentence-split exceptions, stored without the trailing period."""
    return frozenset(w.rstrip(".") for w in _cached_list("abbreviations.txt"))


def honorifics() -> frozenset[str]:
    return frozenset(w.rstrip(".") for w in _cached_list("honorifics.txt"))


def reporting_verbs() -> frozenset[str]:
    return _cached_list("reporting_verbs.txt")


def content_verbs() -> frozenset[str]:
    return _cached_list("verbs.txt")


def finite_verbs() -> frozenset[str]:
    """Auxiliaries, modals and common verbs used as finite-verb evidence."""
    return content_verbs() | reporting_verbs()


def default_lexicon_path() -> Path:
    return data_path("lexicon.txt")


def golden_config_path() -> Path:
    """Config for the bundled end-to-end demo corpus."""
    return data_path("golden") / "config.json"
