/**
 * Reader for the simulator's CSV contract.
 *
 * The file must carry exactly these columns, in this order:
 * scheme,channel,param,level,trials,bit_count,bit_errors,ber,class_hits,
 * gca,gca_lo,gca_hi,ties,seed
 *
 * Every consumer in this package goes through parseCsv, so a schema
 * violation is reported once, by column name, before any drawing happens.
 */

export const REQUIRED_COLUMNS = [
  "scheme",
  "channel",
  "param",
  "level",
  "trials",
  "bit_count",
  "bit_errors",
  "ber",
  "class_hits",
  "gca",
  "gca_lo",
  "gca_hi",
  "ties",
  "seed",
] as const;

export interface SimRow {
  scheme: string;
  channel: string;
  param: number;
  level: string;
  trials: number;
  bit_count: number;
  bit_errors: number;
  ber: number;
  class_hits: number;
  gca: number;
  gca_lo: number;
  gca_hi: number;
  ties: number;
  seed: number;
}

export class CsvSchemaError extends Error {}

function parseNumber(value: string, column: string, line: number): number {
  const v = Number(value);
  if (value.trim() === "" || Number.isNaN(v)) {
    throw new CsvSchemaError(`line ${line}: column ${column} is not a number: ${JSON.stringify(value)}`);
  }
  return v;
}

export function parseCsv(text: string): SimRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "");
  if (lines.length === 0) {
    throw new CsvSchemaError("empty CSV");
  }
  const header = lines[0].split(",");
  for (const column of REQUIRED_COLUMNS) {
    if (!header.includes(column)) {
      throw new CsvSchemaError(`missing column: ${column}`);
    }
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const rows: SimRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new CsvSchemaError(`line ${i + 1}: expected ${header.length} fields, got ${parts.length}`);
    }
    const get = (column: string) => parts[index.get(column)!];
    rows.push({
      scheme: get("scheme"),
      channel: get("channel"),
      param: parseNumber(get("param"), "param", i + 1),
      level: get("level"),
      trials: parseNumber(get("trials"), "trials", i + 1),
      bit_count: parseNumber(get("bit_count"), "bit_count", i + 1),
      bit_errors: parseNumber(get("bit_errors"), "bit_errors", i + 1),
      ber: parseNumber(get("ber"), "ber", i + 1),
      class_hits: parseNumber(get("class_hits"), "class_hits", i + 1),
      gca: parseNumber(get("gca"), "gca", i + 1),
      gca_lo: parseNumber(get("gca_lo"), "gca_lo", i + 1),
      gca_hi: parseNumber(get("gca_hi"), "gca_hi", i + 1),
      ties: parseNumber(get("ties"), "ties", i + 1),
      seed: parseNumber(get("seed"), "seed", i + 1),
    });
  }
  return rows;
}
