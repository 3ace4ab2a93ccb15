"""Event log ingestion, serialization and timing features."""

from logfold.eventlog.preprocessing import group_infrequent_activities
from logfold.eventlog.reader import EventLogReader, parse_csv
from logfold.eventlog.timing import durations, execution_times, remaining_time, temporal_split
from logfold.eventlog.writer import log_to_csv_text, write_csv

__all__ = [
    "EventLogReader",
    "parse_csv",
    "write_csv",
    "log_to_csv_text",
    "execution_times",
    "durations",
    "remaining_time",
    "temporal_split",
    "group_infrequent_activities",
]
