// Line chart for run results. Geometry and tooltip values are computed by
// pure functions so tests can assert on them without rendering; the SVG
// layer is a straight projection of that geometry.

import type { RunResultDoc } from "./types";

export interface ChartGeometry {
  width: number;
  height: number;
  months: number;
  series: Array<{ name: string; color: string; points: Array<[number, number]> }>;
  monthAtX(x: number): number;
}

const PALETTE = ["#2563eb", "#16a34a", "#dc2626", "#9333ea", "#ea580c", "#0891b2"];
const MARGIN = { left: 48, right: 12, top: 12, bottom: 28 };

export function tooltipValuesAt(result: RunResultDoc, month: number): Record<string, number> {
  const values: Record<string, number> = {};
  for (const series of result.series) {
    if (month < 0 || month >= series.values.length) {
      throw new Error(`month ${month} outside run of ${series.values.length - 1} months`);
    }
    values[series.name] = series.values[month];
  }
  return values;
}

export function chartGeometry(result: RunResultDoc, width = 640, height = 240): ChartGeometry {
  const months = result.duration;
  const innerWidth = width - MARGIN.left - MARGIN.right;
  const innerHeight = height - MARGIN.top - MARGIN.bottom;
  const peak = Math.max(1, ...result.series.flatMap((s) => s.values));

  const x = (month: number) => MARGIN.left + (month / Math.max(1, months)) * innerWidth;
  const y = (value: number) => MARGIN.top + innerHeight - (value / peak) * innerHeight;

  return {
    width,
    height,
    months,
    series: result.series.map((s, i) => ({
      name: s.name,
      color: PALETTE[i % PALETTE.length],
      points: s.values.map((v, month) => [x(month), y(v)] as [number, number]),
    })),
    monthAtX(px: number): number {
      const month = Math.round(((px - MARGIN.left) / innerWidth) * Math.max(1, months));
      return Math.min(Math.max(month, 0), months);
    },
  };
}

export function renderChart(
  container: HTMLElement,
  result: RunResultDoc,
  onHoverMonth?: (month: number, values: Record<string, number>) => void,
): SVGSVGElement {
  const geometry = chartGeometry(result);
  const svgNs = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(svgNs, "svg");
  svg.setAttribute("viewBox", `0 0 ${geometry.width} ${geometry.height}`);
  svg.setAttribute("class", "run-chart");

  for (const series of geometry.series) {
    const polyline = document.createElementNS(svgNs, "polyline");
    polyline.setAttribute("fill", "none");
    polyline.setAttribute("stroke", series.color);
    polyline.setAttribute("stroke-width", "1.5");
    polyline.setAttribute("data-name", series.name);
    polyline.setAttribute(
      "points",
      series.points.map(([px, py]) => `${px.toFixed(2)},${py.toFixed(2)}`).join(" "),
    );
    svg.appendChild(polyline);
  }

  if (onHoverMonth) {
    svg.addEventListener("mousemove", (event) => {
      const month = geometry.monthAtX((event as MouseEvent).offsetX ?? 0);
      onHoverMonth(month, tooltipValuesAt(result, month));
    });
  }

  container.replaceChildren(svg);
  return svg;
}
