"""Target-based stance classification for short messages about news events.

The package extracts event targets (key phrases and key players) from
news articles, infers each target's polarity toward the event through
sentence-level analysis and signed-network balance propagation, and
labels short messages as Positive, Negative or Neutral toward the event.
"""

__version__ = "0.1.0"
