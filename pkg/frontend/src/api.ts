/** Thin typed client over the service endpoints. The UI never computes
 * business results itself; everything it shows comes from these calls.
 * Requests use credentials so the CORS contract is exercised when the UI
 * is served from a different origin than the API. */

import type { ErrorEnvelope, Mood, ReportWire, SessionRecord } from "./types.js";

export class ApiConflictError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ApiConflictError";
  }
}

export class ApiRequestError extends Error {
  constructor(message: string, readonly status: number, readonly code?: string) {
    super(message);
    this.name = "ApiRequestError";
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string, readonly uid: string) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      credentials: "include",
      body: JSON.stringify(body),
    });
    return this.unwrap<T>(response);
  }

  private async unwrap<T>(response: Response): Promise<T> {
    const payload = await response.json();
    if (!response.ok) {
      const error = (payload as ErrorEnvelope).error;
      // 409 messages are surfaced verbatim as user-facing alerts
      if (response.status === 409) throw new ApiConflictError(error.message);
      throw new ApiRequestError(error?.message ?? response.statusText, response.status, error?.code);
    }
    return payload as T;
  }

  async upload(file: Blob, fileName: string): Promise<string> {
    const form = new FormData();
    form.append("uid", this.uid);
    form.append("file", file, fileName);
    const response = await fetch(this.baseUrl + "/api/upload", {
      method: "POST",
      credentials: "include",
      body: form,
    });
    const result = await this.unwrap<{ fileName: string }>(response);
    return result.fileName;
  }

  handleFile(fileName: string): Promise<{ ingested: number; skipped: number }> {
    return this.post("/api/handle_file", { uid: this.uid, uploadOk: true, fileName });
  }

  async handleData(start: string, end: string): Promise<ReportWire> {
    const result = await this.post<{ report: ReportWire }>("/api/handle_data", {
      uid: this.uid,
      start,
      end,
    });
    return result.report;
  }

  async startSession(mood: Mood): Promise<SessionRecord> {
    const result = await this.post<{ session: SessionRecord }>("/api/session/start", {
      uid: this.uid,
      mood,
    });
    return result.session;
  }

  async stopSession(mood: Mood): Promise<SessionRecord> {
    const result = await this.post<{ session: SessionRecord }>("/api/session/stop", {
      uid: this.uid,
      mood,
    });
    return result.session;
  }

  async watching(): Promise<boolean> {
    const response = await fetch(
      this.baseUrl + "/api/session/state?uid=" + encodeURIComponent(this.uid),
      { credentials: "include" },
    );
    const result = await this.unwrap<{ watching: boolean }>(response);
    return result.watching;
  }
}
