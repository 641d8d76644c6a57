"""Usage statistics and System Usability Scale scoring.

All functions are pure. Distributions are kept at full precision; display
rounding to whole percentages happens at the formatting edge only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .ingest import WatchEvent
from .session import ChangeStatus, Mood, MoodSession


class AnalyticsError(Exception):
    pass


class EmptyInput(AnalyticsError):
    pass


class InvalidResponse(AnalyticsError):
    pass


class FrequencyClass(enum.Enum):
    EVERY_DAY = "Every Day"
    SEVERAL_TIMES_A_WEEK = "Several Times a Week"
    EVERY_WEEK = "Every Week"


class DayPeriod(enum.Enum):
    NIGHT = "Night"        # [00, 06)
    MORNING = "Morning"    # [06, 12)
    AFTERNOON = "Afternoon"  # [12, 18)
    EVENING = "Evening"    # [18, 24)


class UsageLevel(enum.Enum):
    LIGHT = "Light"       # under an hour a day
    MODERATE = "Moderate"  # one to three hours
    HEAVY = "Heavy"       # over three hours


def frequency_class(days_watched: int) -> FrequencyClass:
    """5+ days of a week → Every Day; 2 or fewer → Every Week; gap → middle."""
    if not 0 <= days_watched <= 7:
        raise InvalidResponse(f"days watched {days_watched} outside 0..7")
    if days_watched >= 5:
        return FrequencyClass.EVERY_DAY
    if days_watched <= 2:
        return FrequencyClass.EVERY_WEEK
    return FrequencyClass.SEVERAL_TIMES_A_WEEK


def period_of_hour(hour: int) -> DayPeriod:
    if hour < 6:
        return DayPeriod.NIGHT
    if hour < 12:
        return DayPeriod.MORNING
    if hour < 18:
        return DayPeriod.AFTERNOON
    return DayPeriod.EVENING


def period_histogram(events: Sequence[WatchEvent]) -> dict[DayPeriod, int]:
    """Bucket events by local hour into the four day periods."""
    histogram = {period: 0 for period in DayPeriod}
    for event in events:
        hour = int(event.watched_at_local[11:13])
        histogram[period_of_hour(hour)] += 1
    return histogram


def long_short_split(events: Sequence[WatchEvent]) -> tuple[int, int]:
    """(shortCount, longCount) by the Shorts flag."""
    short = sum(1 for e in events if e.is_short)
    return short, len(events) - short


def usage_level(minutes_per_day: float) -> UsageLevel:
    if minutes_per_day < 60:
        return UsageLevel.LIGHT
    if minutes_per_day <= 180:
        return UsageLevel.MODERATE
    return UsageLevel.HEAVY


def mood_change_distribution(sessions: Sequence[MoodSession]) -> dict[ChangeStatus, float]:
    completed = [s for s in sessions if s.complete]
    if not completed:
        raise EmptyInput("no completed sessions")
    total = len(completed)
    return {
        status: sum(1 for s in completed if s.status == status) / total
        for status in ChangeStatus
    }


def start_mood_distribution(sessions: Sequence[MoodSession]) -> dict[Mood, float]:
    if not sessions:
        raise EmptyInput("no sessions")
    total = len(sessions)
    return {mood: sum(1 for s in sessions if s.before == mood) / total for mood in Mood}


@dataclass(frozen=True)
class SusResponse:
    """One questionnaire row: ten answers in 1..5, standard item order."""

    answers: tuple[int, ...]

    def __post_init__(self):
        if len(self.answers) != 10:
            raise InvalidResponse(f"expected 10 answers, got {len(self.answers)}")
        for answer in self.answers:
            if not isinstance(answer, int) or not 1 <= answer <= 5:
                raise InvalidResponse(f"answer {answer!r} outside 1..5")


def sus_score(responses: Sequence[SusResponse]) -> tuple[list[float], float]:
    """Per-respondent scores and their mean.

    Odd-numbered items contribute (answer - 1), even-numbered (5 - answer);
    the sum times 2.5 lands in [0, 100].
    """
    if not responses:
        raise InvalidResponse("no responses")
    per_respondent = []
    for response in responses:
        contributions = (
            (a - 1) if i % 2 == 0 else (5 - a)  # i is 0-based: even index = odd item
            for i, a in enumerate(response.answers)
        )
        per_respondent.append(sum(contributions) * 2.5)
    return per_respondent, sum(per_respondent) / len(per_respondent)


def as_percent(fraction: float) -> int:
    """Display rounding to the nearest whole percent."""
    return round(fraction * 100)
