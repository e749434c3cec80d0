"""Independent reference implementations used to cross-check the package.

These deliberately re-derive results from raw text with the dumbest
possible code (per-phrase rescans, exhaustive path enumeration) so they
share no logic with the implementations under test.
"""

import re

_WORD = re.compile(r"[A-Za-z0-9']+")


def _oracle_words(sentence: str) -> list[str]:
    return [w.lower() for w in _WORD.findall(sentence)]


def oracle_phrase_importance(
    doc_texts: list[str], stoplist: set[str], phrase_words: tuple[str, ...]
) -> int:
    """Rescan the whole corpus for one phrase: count its exact runs and
    every occurrence of each of its words, then multiply."""
    run_count = 0
    word_counts = {w: 0 for w in phrase_words}
    for text in doc_texts:
        for sentence in re.split(r"[.!?]", text):
            words = _oracle_words(sentence)
            for w in words:
                if w in word_counts:
                    word_counts[w] += 1
            runs = []
            current = []
            for w in words:
                if w in stoplist:
                    if current:
                        runs.append(tuple(current))
                    current = []
                else:
                    current.append(w)
            if current:
                runs.append(tuple(current))
            run_count += sum(1 for r in runs if r == phrase_words)
    # Sum per phrase position: a word repeated inside the phrase counts
    # once per occurrence.
    return run_count * sum(word_counts[w] for w in phrase_words)


def oracle_threshold(values: list[float]) -> float:
    """Mean plus population standard deviation, written out longhand."""
    mean = sum(values) / len(values)
    return mean + (sum((v - mean) ** 2 for v in values) / len(values)) ** 0.5


def oracle_all_path_signs(
    edges: dict[tuple[str, str], int], source: str, node: str
) -> set[int]:
    """Sign products of every simple path between two nodes, by
    exhaustive depth-first enumeration."""
    if source == node:
        return {1}
    adjacency: dict[str, list[tuple[str, int]]] = {}
    for (a, b), sign in edges.items():
        adjacency.setdefault(a, []).append((b, sign))
        adjacency.setdefault(b, []).append((a, sign))
    signs: set[int] = set()

    def walk(current: str, visited: frozenset[str], product: int) -> None:
        if current == node:
            signs.add(product)
            return
        for nxt, sign in adjacency.get(current, []):
            if nxt not in visited:
                walk(nxt, visited | {nxt}, product * sign)

    walk(source, frozenset({source}), 1)
    return signs
