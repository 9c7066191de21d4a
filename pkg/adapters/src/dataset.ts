import { readFileSync } from "node:fs";

import { Topic, topicSchema } from "./schema.js";

/** Parse the pipeline's JSONL dataset; one validated topic per line. */
export function loadDataset(path: string): Topic[] {
  const topics: Topic[] = [];
  const lines = readFileSync(path, "utf-8").split("\n");
  lines.forEach((line, i) => {
    if (!line.trim()) return;
    let raw: unknown;
    try {
      raw = JSON.parse(line);
    } catch (e) {
      throw new Error(`${path}:${i + 1}: malformed JSON (${(e as Error).message})`);
    }
    const parsed = topicSchema.safeParse(raw);
    if (!parsed.success) {
      throw new Error(`${path}:${i + 1}: ${parsed.error.issues[0]?.message ?? "invalid record"}`);
    }
    topics.push(parsed.data);
  });
  return topics;
}
