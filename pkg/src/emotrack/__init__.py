"""Mood-aware YouTube watch tracking: ingest Takeout history, record mood
sessions, categorize videos, and build mood-correlated reports."""

__version__ = "0.1.0"
