import { describe, expect, it, vi } from "vitest";
import { ApiClient, ApiConflictError } from "../src/api.js";
import { MoodRecorder, resolvePreset, validateCustomRange } from "../src/state.js";
import type { SessionRecord } from "../src/types.js";

function fakeApi(overrides: Partial<Record<keyof ApiClient, unknown>> = {}): ApiClient {
  const record: SessionRecord = {
    id: "2024-04-22 10:00:00",
    "Start Watch Time": "2024-04-22 10:00:00",
    "Before Watch Mood": "Okay",
  };
  return {
    baseUrl: "http://test",
    uid: "u1",
    startSession: vi.fn().mockResolvedValue(record),
    stopSession: vi.fn().mockResolvedValue(record),
    watching: vi.fn().mockResolvedValue(false),
    ...overrides,
  } as unknown as ApiClient;
}

describe("MoodRecorder", () => {
  it("sends nothing until Confirm", async () => {
    const api = fakeApi();
    const recorder = new MoodRecorder(api, () => {});
    recorder.open("start");
    recorder.select("Okay");
    recorder.dismiss();
    expect(api.startSession).not.toHaveBeenCalled();
    expect(recorder.requestsSent).toBe(0);
  });

  it("confirm without a mood selection is a no-op", async () => {
    const api = fakeApi();
    const recorder = new MoodRecorder(api, () => {});
    recorder.open("start");
    await recorder.confirm();
    expect(api.startSession).not.toHaveBeenCalled();
  });

  it("start flow marks watching from the server response", async () => {
    const api = fakeApi();
    const recorder = new MoodRecorder(api, () => {});
    recorder.open("start");
    recorder.select("Okay");
    await recorder.confirm();
    expect(api.startSession).toHaveBeenCalledWith("Okay");
    expect(recorder.watching).toBe(true);
  });

  it("shows the server 409 message verbatim", async () => {
    const alerts: string[] = [];
    const api = fakeApi({
      stopSession: vi.fn().mockRejectedValue(new ApiConflictError("You are not watching anything")),
    });
    const recorder = new MoodRecorder(api, (m) => alerts.push(m));
    recorder.open("stop");
    recorder.select("Good");
    await recorder.confirm();
    expect(alerts).toEqual(["You are not watching anything"]);
    expect(recorder.watching).toBe(false); // re-synced from the server
  });
});

describe("resolvePreset", () => {
  const today = new Date("2024-04-28T12:00:00Z");

  it("lastweek spans seven dates including today", () => {
    expect(resolvePreset("lastweek", today)).toEqual({ start: "2024-04-22", end: "2024-04-28" });
  });

  it("lastmonth spans thirty dates", () => {
    expect(resolvePreset("lastmonth", today)).toEqual({ start: "2024-03-30", end: "2024-04-28" });
  });

  it("longer presets", () => {
    expect(resolvePreset("last3months", today).start).toBe("2024-01-30");
    expect(resolvePreset("halfyear", today).start).toBe("2023-10-30");
  });
});

describe("validateCustomRange", () => {
  it("accepts an ordered range", () => {
    expect(validateCustomRange("2024-04-01", "2024-04-30")).toBeNull();
  });

  it("rejects an inverted range", () => {
    expect(validateCustomRange("2024-05-01", "2024-04-01")).toMatch(/not be after/);
  });

  it("rejects malformed dates", () => {
    expect(validateCustomRange("yesterday", "2024-04-01")).toMatch(/YYYY-MM-DD/);
  });
});
