// Minimal parser for the service's series CSV (RFC 4180 quoting, CRLF
// line endings, first column "month").

export interface SeriesTable {
  names: string[];
  rows: number[][];
}

export function parseSeriesCsv(text: string): SeriesTable {
  const lines = text.split(/\r\n|\n/).filter((line) => line.length > 0);
  if (lines.length === 0) throw new Error("empty CSV");
  const header = splitCsvLine(lines[0]);
  if (header[0] !== "month") throw new Error(`expected a month column, got '${header[0]}'`);
  const names = header.slice(1);
  const rows = lines.slice(1).map((line) => splitCsvLine(line).map(Number));
  return { names, rows };
}

export function cell(table: SeriesTable, month: number, name: string): number {
  const column = table.names.indexOf(name) + 1;
  if (column === 0) throw new Error(`no series named '${name}'`);
  const row = table.rows.find((r) => r[0] === month);
  if (!row) throw new Error(`no row for month ${month}`);
  return row[column];
}

export function splitCsvLine(line: string): string[] {
  const fields: string[] = [];
  let current = "";
  let quoted = false;
  for (let i = 0; i < line.length; i += 1) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          current += '"';
          i += 1;
        } else {
          quoted = false;
        }
      } else {
        current += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      fields.push(current);
      current = "";
    } else {
      current += ch;
    }
  }
  fields.push(current);
  return fields;
}
