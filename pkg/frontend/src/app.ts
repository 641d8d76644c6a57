/** DOM wiring for the single-page app. All business logic stays on the
 * server or in the pure modules; this file only moves data between the
 * DOM and those modules. */

import { ApiClient, ApiRequestError } from "./api.js";
import { layoutChart, renderChartSvg, STATUS_COLORS } from "./chart.js";
import { MoodRecorder, ReportLoader, resolvePreset, validateCustomRange } from "./state.js";
import type { DayReport, Mood, RangePreset, ReportWire, DateRange } from "./types.js";

const MOODS: Mood[] = ["Good", "Okay", "Not good"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function toast(message: string): void {
  const node = el<HTMLDivElement>("toast");
  node.textContent = message;
  node.classList.add("visible");
  setTimeout(() => node.classList.remove("visible"), 4000);
}

export function startApp(): void {
  const baseUrl =
    new URLSearchParams(location.search).get("api") ??
    localStorage.getItem("apiBase") ??
    "http://127.0.0.1:8000";
  localStorage.setItem("apiBase", baseUrl);
  const uid = localStorage.getItem("uid") ?? `web-${Math.random().toString(36).slice(2, 10)}`;
  localStorage.setItem("uid", uid);

  const api = new ApiClient(baseUrl, uid);
  const recorder = new MoodRecorder(api, (message) => window.alert(message));
  const loader = new ReportLoader(api);
  let range: DateRange = resolvePreset("lastweek"); // default: the previous week

  // --- mood recording -----------------------------------------------------
  const picker = el<HTMLDivElement>("picker");

  function renderPicker(): void {
    picker.hidden = recorder.picker === null;
    el<HTMLButtonElement>("btn-start").disabled = recorder.watching;
    el<HTMLButtonElement>("btn-stop").disabled = false;
    el<HTMLDivElement>("watch-state").textContent = recorder.watching
      ? "Currently watching"
      : "Not watching";
    for (const mood of MOODS) {
      const button = el<HTMLButtonElement>(`mood-${mood.replace(" ", "-")}`);
      button.classList.toggle("selected", recorder.picker?.mood === mood);
    }
  }

  el("btn-start").addEventListener("click", () => {
    recorder.open("start");
    renderPicker();
  });
  el("btn-stop").addEventListener("click", () => {
    recorder.open("stop");
    renderPicker();
  });
  for (const mood of MOODS) {
    el(`mood-${mood.replace(" ", "-")}`).addEventListener("click", () => {
      recorder.select(mood);
      renderPicker();
    });
  }
  el("picker-cancel").addEventListener("click", () => {
    recorder.dismiss();
    renderPicker();
  });
  el("picker-confirm").addEventListener("click", () => {
    void recorder.confirm().then(() => renderPicker());
  });

  void recorder.refresh().then(renderPicker, () => renderPicker());

  // --- history upload -----------------------------------------------------
  el("upload-input").addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      const fileName = await api.upload(file, file.name);
      const counts = await api.handleFile(fileName);
      toast(`Upload Succeed! Ingested ${counts.ingested} videos.`);
    } catch (error) {
      const detail = error instanceof ApiRequestError ? ` ${error.message}` : "";
      toast(`Upload Failed!${detail}`);
    } finally {
      input.value = "";
    }
  });

  // --- report -------------------------------------------------------------
  async function showReport(): Promise<void> {
    el("range-label").textContent = `${range.start} .. ${range.end}`;
    let report: ReportWire;
    try {
      report = await loader.load(range);
    } catch (error) {
      toast(error instanceof Error ? error.message : "Request failed");
      return;
    }
    const container = el<HTMLDivElement>("chart");
    if (Object.keys(report).length === 0) {
      container.innerHTML = '<p class="empty">Nothing watched in this range yet.</p>';
      return;
    }
    container.innerHTML = renderChartSvg(layoutChart(report));
    container.querySelectorAll("g.column").forEach((column) => {
      column.addEventListener("click", () => {
        const date = (column as SVGGElement).dataset.date!;
        showDetail(date, report[date]);
      });
    });
  }

  function showDetail(date: string, day: DayReport): void {
    el("detail-date").textContent = `${date} — ${day["Watch Total Number"]} videos`;
    const list = el<HTMLUListElement>("detail-list");
    list.innerHTML = "";
    for (const detail of day.Details) {
      const color = STATUS_COLORS[detail["Mood Change Status"]];
      for (const [category, count] of Object.entries(detail["Video Category"])) {
        const item = document.createElement("li");
        item.innerHTML =
          `<span class="cube" style="background:${color}"></span>` +
          `${category} × ${count}`;
        list.appendChild(item);
      }
    }
    el("detail").hidden = false;
  }

  el("detail-close").addEventListener("click", () => {
    el("detail").hidden = true;
  });
  el("btn-report").addEventListener("click", () => void showReport());

  // --- filter dialog ------------------------------------------------------
  for (const preset of ["lastweek", "lastmonth", "last3months", "halfyear"] as RangePreset[]) {
    el(`preset-${preset}`).addEventListener("click", () => {
      range = resolvePreset(preset);
      void showReport();
    });
  }
  el("custom-apply").addEventListener("click", () => {
    const start = el<HTMLInputElement>("custom-start").value;
    const end = el<HTMLInputElement>("custom-end").value;
    const problem = validateCustomRange(start, end);
    const errorNode = el<HTMLSpanElement>("custom-error");
    errorNode.textContent = problem ?? "";
    if (problem) return; // invalid range: no request leaves the page
    range = { start, end };
    void showReport();
  });
}

if (typeof document !== "undefined" && document.getElementById("btn-start")) {
  startApp();
}
