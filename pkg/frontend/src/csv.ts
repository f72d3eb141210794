import { readFileSync } from "fs";
import Papa from "papaparse";

/** Exact column set produced by the simulation harness, in order. */
export const EXPECTED_HEADER = [
  "sweep_value",
  "n",
  "mean_l2",
  "ci_low",
  "ci_high",
  "p95_l2",
  "mean_proxy",
  "bound_ours",
  "bound_shah",
  "ford_failures",
] as const;

export type ResultColumn = (typeof EXPECTED_HEADER)[number];

export type ResultRow = Record<ResultColumn, number>;

export class SchemaError extends Error {}

/**
 * Parse a results.csv produced by the simulation harness.
 *
 * Any missing or unexpected column is a SchemaError naming the full expected
 * header, so mismatched files fail loudly rather than plotting garbage.
 */
export function parseResultsCsv(text: string, source = "results.csv"): ResultRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`${source}: ${first.message} (row ${first.row})`);
  }
  const fields = parsed.meta.fields ?? [];
  const expected = EXPECTED_HEADER.join(",");
  const missing = EXPECTED_HEADER.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${source}: missing column(s) ${missing.join(", ")}; expected header: ${expected}`
    );
  }
  const extra = fields.filter((c) => !(EXPECTED_HEADER as readonly string[]).includes(c));
  if (extra.length > 0) {
    throw new SchemaError(
      `${source}: unexpected column(s) ${extra.join(", ")}; expected header: ${expected}`
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`${source}: no data rows`);
  }
  return parsed.data.map((raw, index) => {
    const row = {} as ResultRow;
    for (const column of EXPECTED_HEADER) {
      const value = Number(raw[column]);
      if (raw[column] === undefined || raw[column] === "") {
        throw new SchemaError(`${source}: row ${index + 1}: empty ${column}`);
      }
      row[column] = value;
    }
    return row;
  });
}

export function loadResultsCsv(path: string): ResultRow[] {
  return parseResultsCsv(readFileSync(path, "utf8"), path);
}
