/** View state and the mood recording flow.
 *
 * The picker opens on Start/Stop, but nothing is sent to the server until
 * the user presses Confirm (guarding against accidental taps). The
 * `watching` flag always mirrors the last server response; server 409
 * messages are shown verbatim. */

import { ApiClient, ApiConflictError } from "./api.js";
import type { DateRange, Mood, RangePreset, ReportWire, SessionRecord } from "./types.js";

export type Screen = "Home" | "Report" | "Detail";

export interface PickerState {
  action: "start" | "stop";
  mood: Mood | null;
}

export interface ViewState {
  screen: Screen;
  watching: boolean;
  selectedRange: DateRange;
  selectedDate: string | null;
}

const PRESET_DAYS: Record<RangePreset, number> = {
  lastweek: 6,
  lastmonth: 29,
  last3months: 89,
  halfyear: 181,
};

function isoDate(d: Date): string {
  return d.toISOString().slice(0, 10);
}

/** Preset windows end at today inclusive; lastweek spans seven dates. */
export function resolvePreset(preset: RangePreset, today: Date = new Date()): DateRange {
  const start = new Date(today.getTime() - PRESET_DAYS[preset] * 86_400_000);
  return { start: isoDate(start), end: isoDate(today) };
}

export function validateCustomRange(start: string, end: string): string | null {
  if (!/^\d{4}-\d{2}-\d{2}$/.test(start) || !/^\d{4}-\d{2}-\d{2}$/.test(end)) {
    return "Dates must look like YYYY-MM-DD";
  }
  if (start > end) return "Start date must not be after end date";
  return null;
}

export class MoodRecorder {
  picker: PickerState | null = null;
  watching = false;
  requestsSent = 0;

  constructor(
    private api: ApiClient,
    private alert: (message: string) => void,
  ) {}

  open(action: "start" | "stop"): void {
    this.picker = { action, mood: null };
  }

  select(mood: Mood): void {
    if (this.picker) this.picker.mood = mood;
  }

  /** Dismiss without Confirm: no request is sent. */
  dismiss(): void {
    this.picker = null;
  }

  async confirm(): Promise<SessionRecord | null> {
    if (!this.picker || this.picker.mood === null) return null;
    const { action, mood } = this.picker;
    this.picker = null;
    this.requestsSent += 1;
    try {
      const record =
        action === "start"
          ? await this.api.startSession(mood)
          : await this.api.stopSession(mood);
      this.watching = action === "start";
      return record;
    } catch (error) {
      if (error instanceof ApiConflictError) {
        this.alert(error.message); // the server's exact wording
        this.watching = await this.api.watching().catch(() => this.watching);
        return null;
      }
      throw error;
    }
  }

  async refresh(): Promise<void> {
    this.watching = await this.api.watching();
  }
}

export class ReportLoader {
  report: ReportWire | null = null;
  private inFlight: AbortController | null = null;

  constructor(private api: ApiClient) {}

  /** At most one report request in flight; later requests cancel earlier. */
  async load(range: DateRange): Promise<ReportWire> {
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    const report = await this.api.handleData(range.start, range.end);
    if (controller.signal.aborted) return this.report ?? {};
    this.report = report;
    this.inFlight = null;
    return report;
  }
}
