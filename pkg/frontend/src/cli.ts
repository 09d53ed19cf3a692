/**
 * plots <csv> --kind <ber-awgn|ber-vlc|gca-awgn|gca-vlc> [--levels A,D,F] --out <file.svg>
 *
 * Reads the simulator's CSV, renders one figure kind, writes SVG. Exits 2 on
 * usage problems, 1 on schema violations (the offending column or level is
 * named), 0 on success.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { parseCsv, CsvSchemaError } from "./csv.js";
import { renderFigure, FigureKind, FIGURE_KINDS } from "./render.js";

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        kind: { type: "string" },
        levels: { type: "string", default: "A,D,F" },
        out: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const [csvPath] = parsed.positionals;
  const { kind, levels, out } = parsed.values;
  if (!csvPath || !kind || !out) {
    console.error("usage: plots <csv> --kind <kind> [--levels A,D,F] --out <file.svg>");
    return 2;
  }
  if (!FIGURE_KINDS.includes(kind as FigureKind)) {
    console.error(`unknown kind ${JSON.stringify(kind)}; expected one of ${FIGURE_KINDS.join(", ")}`);
    return 2;
  }
  let text: string;
  try {
    text = readFileSync(csvPath, "utf8");
  } catch (err) {
    console.error(`cannot read ${csvPath}: ${(err as Error).message}`);
    return 2;
  }
  try {
    const rows = parseCsv(text);
    const svg = renderFigure(rows, {
      kind: kind as FigureKind,
      levels: (levels as string).split(",").map((s) => s.trim()).filter(Boolean),
    });
    writeFileSync(out, svg, "utf8");
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly = process.argv[1] !== undefined && import.meta.url.endsWith(
  process.argv[1].split("/").pop() ?? "",
);
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
