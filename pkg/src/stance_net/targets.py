"""Event-target extraction from an article corpus.

Two families of targets come out of the articles:

* key phrases: stopword-delimited word runs scored by
  importance = phrase_frequency × Σ word_frequency, kept when the score
  reaches mean + one standard deviation of all candidate scores;
* key players: person names found as runs of capitalized tokens, with
  honorific and verb-context rules standing in for a full NER system.
"""

import statistics
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping

from . import resources
from .corpus import Document, Sentence, Token, is_word
from .errors import InputError


@dataclass(frozen=True)
class Phrase:
    words: tuple[str, ...]
    cooccurrence_freq: int
    importance: int


@dataclass(frozen=True)
class CorpusStats:
    word_freq: Mapping[str, int]
    phrase_freq: Mapping[tuple[str, ...], int]


class TargetKind(Enum):
    KEY_PHRASE = "KeyPhrase"
    KEY_PLAYER = "KeyPlayer"


@dataclass(frozen=True)
class Target:
    id: str
    kind: TargetKind
    surface_forms: frozenset[str]
    importance: int | None = None


@dataclass(frozen=True)
class TargetSet:
    key_phrases: tuple[Target, ...]
    key_players: tuple[Target, ...]
    threshold: float

    def all_targets(self) -> tuple[Target, ...]:
        return self.key_phrases + self.key_players

    def get(self, target_id: str) -> Target | None:
        for target in self.all_targets():
            if target.id == target_id:
                return target
        return None

    def surface_index(self) -> dict[tuple[str, ...], Target]:
        """Map normalized word sequences to targets for mention matching.

        Key players claim a surface when a key phrase spells the same
        words: a capitalized-run name is the more specific reading.
        """
        index: dict[tuple[str, ...], Target] = {}
        for target in self.key_phrases:
            for surface in target.surface_forms:
                index[tuple(surface.split())] = target
        for target in self.key_players:
            for surface in target.surface_forms:
                index[tuple(surface.split())] = target
        return index


def _sentence_runs(sentence: Sentence, stoplist: frozenset[str]) -> list[tuple[str, ...]]:
    """Maximal runs of non-stopword word tokens, split at punctuation."""
    runs: list[tuple[str, ...]] = []
    current: list[str] = []
    for token in sentence.tokens:
        if is_word(token) and token.normalized not in stoplist:
            current.append(token.normalized)
        else:
            if current:
                runs.append(tuple(current))
            current = []
    if current:
        runs.append(tuple(current))
    return runs


def compute_corpus_stats(
    docs: list[Document], stoplist: frozenset[str]
) -> CorpusStats:
    word_freq: dict[str, int] = {}
    phrase_freq: dict[tuple[str, ...], int] = {}
    for doc in docs:
        for sentence in doc.sentences:
            for token in sentence.tokens:
                if is_word(token):
                    word_freq[token.normalized] = word_freq.get(token.normalized, 0) + 1
            for run in _sentence_runs(sentence, stoplist):
                phrase_freq[run] = phrase_freq.get(run, 0) + 1
    return CorpusStats(word_freq=word_freq, phrase_freq=phrase_freq)


def score_phrase(phrase: Phrase, stats: CorpusStats) -> int:
    """Importance of a phrase: cooccurrence count times summed word counts."""
    total = 0
    for word in phrase.words:
        if word not in stats.word_freq:
            raise ValueError(
                f"internal consistency: no word frequency for '{word}' "
                f"of phrase {' '.join(phrase.words)}"
            )
        total += stats.word_freq[word]
    return phrase.cooccurrence_freq * total


def extract_candidate_phrases(
    docs: list[Document], stoplist: frozenset[str]
) -> list[Phrase]:
    """All stopword-delimited candidate phrases with importance scores."""
    if not stoplist:
        raise InputError("stopword list is empty")
    stats = compute_corpus_stats(docs, stoplist)
    phrases = []
    for words, freq in stats.phrase_freq.items():
        phrase = Phrase(words=words, cooccurrence_freq=freq, importance=0)
        phrases.append(replace(phrase, importance=score_phrase(phrase, stats)))
    phrases.sort(key=lambda p: (-p.importance, p.words))
    return phrases


def selection_threshold(importances: Iterable[int | float]) -> float:
    """Mean plus one (population) standard deviation."""
    values = list(importances)
    return statistics.mean(values) + statistics.pstdev(values)


def select_key_phrases(phrases: list[Phrase]) -> tuple[list[Target], float]:
    if not phrases:
        raise InputError("no candidate phrases")
    threshold = selection_threshold(p.importance for p in phrases)
    selected = []
    for phrase in phrases:
        if phrase.importance >= threshold:
            text = " ".join(phrase.words)
            selected.append(
                Target(
                    id=f"kp:{text}",
                    kind=TargetKind.KEY_PHRASE,
                    surface_forms=frozenset({text}),
                    importance=phrase.importance,
                )
            )
    selected.sort(key=lambda t: (-(t.importance or 0), t.id))
    return selected, threshold


def _capitalized_runs(sentence: Sentence, honorifics: frozenset[str]) -> list[tuple[int, list[Token]]]:
    """Runs of capitalized word tokens; a period may continue a run only
    directly after an honorific ("Mr. Khashoggi")."""
    runs: list[tuple[int, list[Token]]] = []
    current: list[Token] = []
    start = 0
    word_pos = -1
    for token in sentence.tokens:
        if is_word(token):
            word_pos += 1
            if token.is_capitalized:
                if not current:
                    start = word_pos
                current.append(token)
                continue
        elif token.normalized == "." and current and current[-1].normalized in honorifics:
            continue
        if current:
            runs.append((start, current))
            current = []
    if current:
        runs.append((start, current))
    return runs


def extract_key_players(
    docs: list[Document],
    honorifics: frozenset[str] | None = None,
    stoplist: frozenset[str] | None = None,
    verbs: frozenset[str] | None = None,
) -> list[Target]:
    """Person-name targets from capitalized-token runs.

    A sentence-initial run is kept only when an honorific introduces it,
    when its words also show up capitalized mid-sentence somewhere in
    the corpus, or when a multi-word run is followed directly by a known
    finite verb ("Nirav Modi absconded").  Runs containing stopwords are
    rejected, which discards starts like "The".
    """
    if honorifics is None:
        honorifics = resources.honorifics()
    if stoplist is None:
        stoplist = resources.stopwords()
    if verbs is None:
        verbs = resources.finite_verbs()

    mid_caps: set[str] = set()
    pending: list[tuple[tuple[str, ...], bool, bool, str | None]] = []
    for doc in docs:
        for sentence in doc.sentences:
            word_tokens = [t for t in sentence.tokens if is_word(t)]
            for pos, token in enumerate(word_tokens):
                if pos > 0 and token.is_capitalized:
                    mid_caps.add(token.normalized)
            for start, run in _capitalized_runs(sentence, honorifics):
                words = [t.normalized for t in run]
                had_honorific = False
                while words and words[0] in honorifics:
                    words.pop(0)
                    had_honorific = True
                if not words:
                    continue
                if any(w in stoplist for w in words):
                    continue
                if len(words) == 1 and len(words[0]) == 1:
                    continue
                end = start + len(run)
                following = (
                    word_tokens[end].normalized if end < len(word_tokens) else None
                )
                pending.append((tuple(words), start == 0, had_honorific, following))

    names: set[tuple[str, ...]] = set()
    for words, initial, had_honorific, following in pending:
        if initial and not had_honorific:
            seen_mid = all(w in mid_caps for w in words)
            verb_context = len(words) >= 2 and following in verbs
            if not (seen_mid or verb_context):
                continue
        names.add(words)

    full_forms = {" ".join(name) for name in names}
    alias_owners: dict[str, int] = {}
    for name in names:
        if len(name) > 1:
            alias_owners[name[-1]] = alias_owners.get(name[-1], 0) + 1

    targets = []
    for name in sorted(names):
        text = " ".join(name)
        surfaces = {text}
        alias = name[-1]
        # The surname alias is usable only when it is unambiguous: owned
        # by one name and not itself another player's full name.
        if len(name) > 1 and alias_owners[alias] == 1 and alias not in full_forms:
            surfaces.add(alias)
        targets.append(
            Target(
                id=f"kl:{text}",
                kind=TargetKind.KEY_PLAYER,
                surface_forms=frozenset(surfaces),
            )
        )
    return targets


def build_target_set(
    docs: list[Document],
    stoplist: frozenset[str] | None = None,
    honorifics: frozenset[str] | None = None,
    verbs: frozenset[str] | None = None,
) -> TargetSet:
    if stoplist is None:
        stoplist = resources.stopwords()
    phrases = extract_candidate_phrases(docs, stoplist)
    key_phrases, threshold = select_key_phrases(phrases)
    key_players = extract_key_players(
        docs, honorifics=honorifics, stoplist=stoplist, verbs=verbs
    )
    return TargetSet(
        key_phrases=tuple(key_phrases),
        key_players=tuple(key_players),
        threshold=threshold,
    )


def target_to_record(target: Target) -> dict:
    record = {
        "id": target.id,
        "kind": target.kind.value,
        "surface_forms": sorted(target.surface_forms),
    }
    if target.importance is not None:
        record["importance"] = target.importance
    return record


def target_from_record(record: dict) -> Target:
    try:
        importance = record.get("importance")
        if importance is not None and not isinstance(importance, (int, float)):
            raise TypeError(f"importance must be numeric, got {importance!r}")
        return Target(
            id=str(record["id"]),
            kind=TargetKind(record["kind"]),
            surface_forms=frozenset(str(s) for s in record["surface_forms"]),
            importance=importance,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed target record: {exc}") from exc


def assemble_target_set(targets: Iterable[Target], threshold: float = 0.0) -> TargetSet:
    """Group already-parsed targets into a TargetSet.

    The selection threshold is not part of the per-target records; pass
    it explicitly when known, it is informational downstream.
    """
    phrases: list[Target] = []
    players: list[Target] = []
    seen: set[str] = set()
    for target in targets:
        if target.id in seen:
            raise InputError(f"duplicate target id '{target.id}'")
        seen.add(target.id)
        if target.kind is TargetKind.KEY_PHRASE:
            phrases.append(target)
        else:
            players.append(target)
    return TargetSet(
        key_phrases=tuple(phrases), key_players=tuple(players), threshold=threshold
    )


def target_set_from_records(records, threshold: float = 0.0) -> TargetSet:
    """Rebuild a TargetSet from serialized target records."""
    return assemble_target_set(
        (target_from_record(r) for r in records), threshold=threshold
    )


def phrase_report(
    phrases: list[Phrase], threshold: float, selected: int, key_players: int
) -> dict:
    """Summary of the extraction run: candidate/selected counts plus
    max, mean and standard deviation of the importance scores."""
    importances = [p.importance for p in phrases]
    return {
        "candidates": len(phrases),
        "selected": selected,
        "max_importance": float(max(importances)),
        "mean_importance": statistics.mean(importances),
        "sd_importance": statistics.pstdev(importances),
        "threshold": threshold,
        "key_players": key_players,
    }
