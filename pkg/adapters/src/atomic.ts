import { mkdirSync, renameSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";

/** Write JSON to a temp file in the target directory, then rename into place. */
export function atomicWriteJson(path: string, value: unknown): void {
  const dir = dirname(path);
  mkdirSync(dir, { recursive: true });
  const tmp = join(dir, `.${process.pid}.${Date.now()}.tmp`);
  writeFileSync(tmp, JSON.stringify(value) + "\n", "utf-8");
  renameSync(tmp, path);
}
