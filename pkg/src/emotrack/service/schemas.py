"""Pydantic request/response models for the HTTP API.

Every request carries a uid; responses carry ``ok`` plus either the payload
or an ``error`` object with a code from a closed enum.
"""

from __future__ import annotations

import enum
from typing import Optional

from pydantic import BaseModel, Field


class ErrorCode(str, enum.Enum):
    MALFORMED = "MALFORMED"
    NOT_FOUND = "NOT_FOUND"
    STATE_CONFLICT = "STATE_CONFLICT"
    UPSTREAM = "UPSTREAM"
    INTERNAL = "INTERNAL"


class ApiError(BaseModel):
    code: ErrorCode
    message: str


class ErrorResponse(BaseModel):
    ok: bool = False
    error: ApiError


class HandleFileRequest(BaseModel):
    uid: str
    uploadOk: bool
    fileName: str = ""


class HandleFileResponse(BaseModel):
    ok: bool = True
    ingested: int
    skipped: int


class HandleDataRequest(BaseModel):
    uid: str
    start: str = Field(pattern=r"^\d{4}-\d{2}-\d{2}$")
    end: str = Field(pattern=r"^\d{4}-\d{2}-\d{2}$")


class SessionRequest(BaseModel):
    uid: str
    mood: str  # "Good" | "Okay" | "Not good"


class SessionRecord(BaseModel):
    id: str
    start: str = Field(serialization_alias="Start Watch Time")
    before: str = Field(serialization_alias="Before Watch Mood")
    stop: Optional[str] = Field(default=None, serialization_alias="Stop Watch Time")
    after: Optional[str] = Field(default=None, serialization_alias="After Watch Mood")
    status: Optional[str] = Field(default=None, serialization_alias="Mood Change Status")


class SessionResponse(BaseModel):
    ok: bool = True
    session: SessionRecord


class UploadResponse(BaseModel):
    ok: bool = True
    fileName: str
