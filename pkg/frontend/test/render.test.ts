import { existsSync, mkdtempSync, readFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { main, parseArgs, renderToFiles } from "../src/render.js";

const FIXTURES = join(__dirname, "..", "fixtures");

const tempDir = () => mkdtempSync(join(tmpdir(), "csdl-render-"));

describe("parseArgs", () => {
  it("collects repeated inputs", () => {
    const args = parseArgs([
      "--figure", "fig2",
      "--input", "a.csv", "--input", "b.csv",
      "--out", "x.svg",
    ]);
    expect(args.inputs).toEqual(["a.csv", "b.csv"]);
    expect(args.png).toBe(false);
  });

  it("rejects unknown figures and flags", () => {
    expect(() => parseArgs(["--figure", "fig9", "--input", "a", "--out", "b"])).toThrow(/--figure/);
    expect(() => parseArgs(["--wat"])).toThrow(/unknown argument/);
    expect(() => parseArgs(["--figure", "fig1", "--out", "b"])).toThrow(/--input/);
  });
});

describe("renderToFiles", () => {
  it("writes an SVG and reruns byte-identically", () => {
    const out = join(tempDir(), "fig1.svg");
    const args = {
      figure: "fig1" as const,
      inputs: [join(FIXTURES, "exp1_floor_sqrt_N_summary.csv")],
      out,
      png: false,
    };
    renderToFiles(args);
    const first = readFileSync(out);
    renderToFiles(args);
    expect(readFileSync(out).equals(first)).toBe(true);
    expect(first.toString()).toContain("<svg");
  });

  it("writes a PNG next to the SVG when asked", () => {
    const out = join(tempDir(), "fig3.svg");
    const written = renderToFiles({
      figure: "fig3",
      inputs: [join(FIXTURES, "exp3_summary.csv")],
      out,
      png: true,
    });
    expect(written).toEqual([out, out.replace(/\.svg$/, ".png")]);
    const png = readFileSync(out.replace(/\.svg$/, ".png"));
    expect(png.subarray(1, 4).toString()).toBe("PNG");
  });
});

describe("main", () => {
  it("returns 0 on success", () => {
    const out = join(tempDir(), "fig4.svg");
    const code = main([
      "--figure", "fig4",
      "--input", join(FIXTURES, "exp4_floor_N_over_10_summary.csv"),
      "--out", out,
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
  });

  it("returns 1 on schema mismatch and on bad flags", () => {
    expect(main(["--figure", "fig1", "--input", __filename, "--out", "/tmp/x.svg"])).toBe(1);
    expect(main(["--figure", "nope"])).toBe(1);
  });
});
