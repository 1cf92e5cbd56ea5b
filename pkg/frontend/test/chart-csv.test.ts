import { describe, expect, test } from "vitest";

import { chartGeometry, tooltipValuesAt } from "../src/chart";
import { cell, parseSeriesCsv, splitCsvLine } from "../src/csv";
import type { RunResultDoc } from "../src/types";

const SAMPLE_CSV = "month,sheep,grass\r\n0,20,50000\r\n1,22,49900\r\n2,25,49750\r\n";

function sampleResult(): RunResultDoc {
  return {
    seed: 1,
    duration: 2,
    program_hash: "abc",
    settings: {},
    series: [
      { name: "sheep", component_id: "sheep", biotic: true, values: [20, 22, 25] },
      { name: "grass", component_id: "grass", biotic: true, values: [50000, 49900, 49750] },
    ],
    final_state_summary: { month: 2 },
  };
}

describe("series csv parsing", () => {
  test("handles CRLF endings and numeric coercion", () => {
    const table = parseSeriesCsv(SAMPLE_CSV);
    expect(table.names).toEqual(["sheep", "grass"]);
    expect(table.rows.map((r) => r[0])).toEqual([0, 1, 2]);
    expect(cell(table, 1, "grass")).toBe(49900);
    expect(cell(table, 2, "sheep")).toBe(25);
  });

  test("rejects a table without a month header", () => {
    expect(() => parseSeriesCsv("time,sheep\n0,20\n")).toThrow(/month column/);
  });

  test("unknown lookups throw", () => {
    const table = parseSeriesCsv(SAMPLE_CSV);
    expect(() => cell(table, 9, "sheep")).toThrow(/month 9/);
    expect(() => cell(table, 0, "wolf")).toThrow(/wolf/);
  });

  test("quoted fields keep embedded commas and quotes", () => {
    expect(splitCsvLine('a,"b,c","d""e"')).toEqual(["a", "b,c", 'd"e']);
  });
});

describe("chart math", () => {
  test("tooltip values mirror the run series", () => {
    const result = sampleResult();
    expect(tooltipValuesAt(result, 0)).toEqual({ sheep: 20, grass: 50000 });
    expect(tooltipValuesAt(result, 2)).toEqual({ sheep: 25, grass: 49750 });
    expect(() => tooltipValuesAt(result, 3)).toThrow(/outside run/);
  });

  test("geometry maps months onto x pixels reversibly", () => {
    const geometry = chartGeometry(sampleResult(), 640, 240);
    expect(geometry.series.map((s) => s.name)).toEqual(["sheep", "grass"]);
    for (let month = 0; month <= 2; month += 1) {
      const [x] = geometry.series[0].points[month];
      expect(geometry.monthAtX(x)).toBe(month);
    }
    // clamped at both ends
    expect(geometry.monthAtX(-1000)).toBe(0);
    expect(geometry.monthAtX(10_000)).toBe(2);
  });

  test("the tallest series touches the top margin", () => {
    const geometry = chartGeometry(sampleResult(), 640, 240);
    const ys = geometry.series.flatMap((s) => s.points.map((p) => p[1]));
    expect(Math.min(...ys)).toBeCloseTo(12, 6);
  });
});
