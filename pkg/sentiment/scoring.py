"""Per-report sentiment: summed positive and negative lexicon scores and the
Emotion and Emotionality derived from them.
"""

from enum import Enum
import logging

LOGGER = logging.getLogger(__name__)


class EmotionClass(Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"


class SentimentScore(object):
    """Sentiment of one report.

    Attributes:
        pos_score: Sum of positive scores of matched tokens.
        neg_score: Sum of negative scores of matched tokens.
        matched_tokens: Tokens found in the lexicon.
    """

    def __init__(self, pos_score=0.0, neg_score=0.0, matched_tokens=0):
        assert pos_score >= 0.0 and neg_score >= 0.0
        self.pos_score = pos_score
        self.neg_score = neg_score
        self.matched_tokens = matched_tokens

    @property
    def emotion_value(self):
        return self.pos_score - self.neg_score

    @property
    def emotion_class(self):
        """POSITIVE when the emotion value is zero or more."""
        if self.emotion_value >= 0.0:
            return EmotionClass.POSITIVE
        return EmotionClass.NEGATIVE

    @property
    def emotionality(self):
        return self.pos_score + self.neg_score

    def __repr__(self):
        return "SentimentScore(pos={}, neg={}, matched={})".format(
            self.pos_score, self.neg_score, self.matched_tokens)


def score_document(stream, lexicon):
    """Sums lexicon scores over the tokens of ``stream``. Unmatched tokens
    contribute nothing.
    """
    pos_score = 0.0
    neg_score = 0.0
    matched = 0
    for token, surface in zip(stream.tokens, stream.surface):
        scores = lexicon.lookup_token(token, surface)
        if scores is None:
            continue
        pos_score += scores[0]
        neg_score += scores[1]
        matched += 1
    return SentimentScore(pos_score, neg_score, matched)


def score_streams(streams, lexicon):
    """SentimentScores of ``streams``, in order."""
    scores = [score_document(stream, lexicon) for stream in streams]
    tokens = sum(len(stream) for stream in streams)
    matched = sum(score.matched_tokens for score in scores)
    LOGGER.info("Scored %d documents; %d of %d tokens matched the lexicon.",
                len(scores), matched, tokens)
    return scores
