from horserace.io.readers import read_forecast_panel, read_realizations, read_survey
from horserace.io.survey import DEFAULT_SURVEY_LABEL, SURVEY_ALIGNMENT, align_survey
from horserace.io.writers import format_float, write_forecast_panel, write_realizations

__all__ = [
    "DEFAULT_SURVEY_LABEL",
    "SURVEY_ALIGNMENT",
    "align_survey",
    "format_float",
    "read_forecast_panel",
    "read_realizations",
    "read_survey",
    "write_forecast_panel",
    "write_realizations",
]
