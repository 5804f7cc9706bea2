/** Minimal CSV reader for the qprad tool's outputs.
 *
 * Those files are plain comma-separated with a header row and no quoting,
 * so a split-based parser is sufficient and keeps the package free of
 * runtime dependencies. Numeric-looking cells are converted to numbers.
 */

export type Row = Record<string, number | string>;

export interface Table {
  columns: string[];
  rows: Row[];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) throw new Error("empty CSV");
  const columns = lines[0]!.split(",");
  const rows: Row[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i]!.split(",");
    if (cells.length !== columns.length) {
      throw new Error(`row ${i} has ${cells.length} cells, expected ${columns.length}`);
    }
    const row: Row = {};
    for (let j = 0; j < columns.length; j++) {
      const raw = cells[j]!;
      const num = Number(raw);
      row[columns[j]!] = raw !== "" && Number.isFinite(num) ? num : raw;
    }
    rows.push(row);
  }
  return { columns, rows };
}

/** Pull one column as numbers, throwing if any cell is not numeric. */
export function numericColumn(table: Table, name: string): number[] {
  if (!table.columns.includes(name)) {
    throw new Error(`missing column '${name}' (have: ${table.columns.join(", ")})`);
  }
  return table.rows.map((r, i) => {
    const v = r[name];
    if (typeof v !== "number") throw new Error(`column '${name}' row ${i} is not numeric`);
    return v;
  });
}
