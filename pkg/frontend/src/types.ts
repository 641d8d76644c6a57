/** Wire types for the tracking service HTTP API. */

export type Mood = "Good" | "Okay" | "Not good";
export type ChangeStatus = "Better" | "Same" | "Worse";

export interface ApiError {
  code: "MALFORMED" | "NOT_FOUND" | "STATE_CONFLICT" | "UPSTREAM" | "INTERNAL";
  message: string;
}

export interface ErrorEnvelope {
  ok: false;
  error: ApiError;
}

export interface SessionRecord {
  id: string;
  "Start Watch Time": string;
  "Before Watch Mood": Mood;
  "Stop Watch Time"?: string;
  "After Watch Mood"?: Mood;
  "Mood Change Status"?: ChangeStatus;
}

export interface DetailWire {
  Session: string;
  "Mood Change Status": ChangeStatus;
  "Watch Total Number": number;
  "Video Category": Record<string, number>;
}

export interface DayReport {
  Better: number;
  Same: number;
  Worse: number;
  "Watch Total Number": number;
  Details: DetailWire[];
}

export type ReportWire = Record<string, DayReport>;

export type RangePreset = "lastweek" | "lastmonth" | "last3months" | "halfyear";

export interface DateRange {
  start: string; // YYYY-MM-DD inclusive
  end: string;
}
