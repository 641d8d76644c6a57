/** Stacked bar chart layout and SVG rendering for the daily report.
 *
 * Pure functions: the layout renders exactly the numbers the server sent.
 * Fixed color table and stacking order (Better bottom, Same middle,
 * Worse top); the Y axis is scaled by the largest daily video total. */

import type { ChangeStatus, ReportWire } from "./types.js";

export const STATUS_COLORS: Record<ChangeStatus, string> = {
  Better: "#3fa34d", // green
  Same: "#e9c03a", // yellow
  Worse: "#d64541", // red
};

export const STACK_ORDER: ChangeStatus[] = ["Better", "Same", "Worse"];

export interface Segment {
  status: ChangeStatus;
  /** Videos watched during sessions with this status. */
  count: number;
  color: string;
  /** Pixel height; counts scale so the max daily total fills the axis. */
  px: number;
  /** Pixel offset from the column base. */
  baseline: number;
}

export interface Column {
  date: string;
  total: number;
  segments: Segment[];
}

export interface ChartLayout {
  columns: Column[];
  maxTotal: number;
  axisHeight: number;
}

export function layoutChart(report: ReportWire, axisHeight = 240): ChartLayout {
  const dates = Object.keys(report).sort();
  const maxTotal = Math.max(0, ...dates.map((d) => report[d]["Watch Total Number"]));
  const scale = maxTotal > 0 ? axisHeight / maxTotal : 0;

  const columns: Column[] = dates.map((date) => {
    const day = report[date];
    // column height is the day's video total; each segment is the share
    // of those videos watched under sessions with that status
    const videosByStatus: Record<ChangeStatus, number> = { Better: 0, Same: 0, Worse: 0 };
    for (const detail of day.Details) {
      videosByStatus[detail["Mood Change Status"]] += detail["Watch Total Number"];
    }
    const segments: Segment[] = [];
    let baseline = 0;
    for (const status of STACK_ORDER) {
      const count = videosByStatus[status];
      if (count === 0) continue;
      const px = count * scale;
      segments.push({ status, count, color: STATUS_COLORS[status], px, baseline });
      baseline += px;
    }
    return { date, total: day["Watch Total Number"], segments };
  });
  return { columns, maxTotal, axisHeight };
}

const COLUMN_WIDTH = 36;
const COLUMN_GAP = 14;
const LABEL_SPACE = 28;

/** Width grows with the number of dates; the container scrolls
 * horizontally when more than a month is shown. */
export function chartWidth(columnCount: number): number {
  return Math.max(1, columnCount) * (COLUMN_WIDTH + COLUMN_GAP) + COLUMN_GAP;
}

export function renderChartSvg(layout: ChartLayout): string {
  const width = chartWidth(layout.columns.length);
  const height = layout.axisHeight + LABEL_SPACE;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" role="img">`,
  ];
  layout.columns.forEach((column, i) => {
    const x = COLUMN_GAP + i * (COLUMN_WIDTH + COLUMN_GAP);
    parts.push(`<g class="column" data-date="${column.date}">`);
    for (const segment of column.segments) {
      const y = layout.axisHeight - segment.baseline - segment.px;
      parts.push(
        `<rect x="${x}" y="${y.toFixed(2)}" width="${COLUMN_WIDTH}" ` +
          `height="${segment.px.toFixed(2)}" fill="${segment.color}" ` +
          `data-status="${segment.status}" data-count="${segment.count}"/>`,
      );
    }
    parts.push(
      `<text x="${x + COLUMN_WIDTH / 2}" y="${layout.axisHeight + 16}" ` +
        `text-anchor="middle" font-size="9">${column.date.slice(5)}</text>`,
    );
    parts.push("</g>");
  });
  parts.push("</svg>");
  return parts.join("");
}
