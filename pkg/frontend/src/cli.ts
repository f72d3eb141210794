#!/usr/bin/env node
/**
 * Render a figure from a simulation results.csv.
 *
 * Usage:
 *   plot-results --input results.csv --output fig.svg [--x-label "dynamic range B"]
 *                [--linear-y] [--calibration <sweep_value>] [--title "..."]
 */

import { PlotSpec, renderToFile } from "./plot";

function parseArgs(argv: string[]): PlotSpec {
  const flags = new Map<string, string | boolean>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) {
      throw new Error(`unexpected argument: ${arg}`);
    }
    const name = arg.slice(2);
    if (name === "linear-y") {
      flags.set(name, true);
    } else {
      const value = argv[++i];
      if (value === undefined) {
        throw new Error(`flag --${name} needs a value`);
      }
      flags.set(name, value);
    }
  }
  const input = flags.get("input");
  const output = flags.get("output");
  if (typeof input !== "string" || typeof output !== "string") {
    throw new Error("--input and --output are required");
  }
  const calibration = flags.get("calibration");
  return {
    inputPath: input,
    outputPath: output,
    xField: "sweep_value",
    xLabel: typeof flags.get("x-label") === "string" ? (flags.get("x-label") as string) : "sweep value",
    logY: flags.get("linear-y") !== true,
    calibrationPoint:
      typeof calibration === "string" ? Number(calibration) : undefined,
    title: typeof flags.get("title") === "string" ? (flags.get("title") as string) : undefined,
  };
}

function main(): number {
  try {
    const spec = parseArgs(process.argv.slice(2));
    renderToFile(spec);
    console.log(`wrote ${spec.outputPath}`);
    return 0;
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
}

process.exitCode = main();
