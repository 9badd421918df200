from collections.abc import Iterable

from horserace.config import logger
from horserace.types import ForecastPanel, PanelKey, QuarterlyPeriod, SurveyRecord
from horserace.utils.errors import AmbiguousSurveyError

DEFAULT_SURVEY_LABEL = "survey"

# publication month -> (years from publication to target, horizon in quarters)
SURVEY_ALIGNMENT: dict[int, tuple[int, int]] = {
    8: (0, 1),
    5: (0, 2),
    11: (1, 4),
}


def _aligned_key(record: SurveyRecord) -> PanelKey | None:
    rule = SURVEY_ALIGNMENT.get(record.publication.month)
    if rule is None:
        return None

    years_ahead, horizon = rule
    if record.target_year != record.publication.year + years_ahead:
        return None

    target = QuarterlyPeriod(record.target_year, 4)
    return target - horizon, horizon


def align_survey(records: Iterable[SurveyRecord], source_label: str = DEFAULT_SURVEY_LABEL) -> ForecastPanel:
    """
    Turn fixed-event Q4 survey forecasts into a fixed-horizon panel.

    August forecasts of the current year's Q4 become one-quarter-ahead forecasts from Q3, May ones become
    two-quarter-ahead forecasts from Q2, and November forecasts of next year's Q4 become four-quarter-ahead
    forecasts from Q4. Every other record is left out.
    """
    entries: dict[PanelKey, float] = {}
    sources: dict[PanelKey, SurveyRecord] = {}
    ignored = 0

    for record in records:
        key = _aligned_key(record)
        if key is None:
            ignored += 1
            continue

        if key in entries:
            first = sources[key]
            raise AmbiguousSurveyError(
                f"ambiguous survey record: publications {first.publication} and {record.publication} "
                f"both map to origin {key[0]}, horizon {key[1]}"
            )
        entries[key] = record.value
        sources[key] = record

    logger.info(
        f"Aligned {len(entries)} survey records, {ignored} outside the alignment map",
        extra={"source": source_label, "aligned": len(entries), "ignored": ignored},
    )
    return ForecastPanel(source_label, entries)
