#!/usr/bin/env node
/**
 * Offline adapter CLI.
 *
 *   node dist/cli.js embeddings  --in corpus.jsonl --out emb.json  [--model hashed] [--dim 768]
 *   node dist/cli.js temporal    --in corpus.jsonl --out temp.json [--model hashed]
 *   node dist/cli.js coref       --in corpus.jsonl --out coref.json [--model hashed]
 *   node dist/cli.js neutralized --in pairs.json   --out neu.json  [--model hashed]
 *
 * "hashed" is the deterministic offline backend; real model backends are
 * injected programmatically (see models.ts).
 */
import { readFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { atomicWriteJson } from "./atomic.js";
import { loadDataset } from "./dataset.js";
import { emitEmbeddings, emitNeutralized, emitPairwiseScores } from "./emitters.js";
import { resolveEncoder, resolvePairScorer, resolveRewriter } from "./models.js";
import { pairFileSchema } from "./schema.js";

export async function main(argv: string[]): Promise<number> {
  const [command, ...rest] = argv;
  const { values } = parseArgs({
    args: rest,
    options: {
      in: { type: "string" },
      out: { type: "string" },
      model: { type: "string", default: "hashed" },
      dim: { type: "string", default: "768" },
    },
  });
  if (!command || !values.in || !values.out) {
    console.error("usage: <embeddings|temporal|coref|neutralized> --in PATH --out PATH [--model ID] [--dim N]");
    return 1;
  }
  const model = values.model as string;
  try {
    switch (command) {
      case "embeddings": {
        const encoder = await resolveEncoder(model, Number(values.dim));
        atomicWriteJson(values.out, await emitEmbeddings(loadDataset(values.in), encoder));
        break;
      }
      case "temporal":
      case "coref": {
        const scorer = await resolvePairScorer(model);
        atomicWriteJson(values.out, await emitPairwiseScores(loadDataset(values.in), command, scorer));
        break;
      }
      case "neutralized": {
        const rewriter = await resolveRewriter(model);
        const pairs = pairFileSchema.parse(JSON.parse(readFileSync(values.in, "utf-8")));
        atomicWriteJson(values.out, await emitNeutralized(pairs, rewriter));
        break;
      }
      default:
        console.error(`unknown command ${command}`);
        return 1;
    }
  } catch (e) {
    console.error((e as Error).message);
    return 1;
  }
  console.log(`wrote ${values.out}`);
  return 0;
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") || process.argv[1]?.endsWith("cli.ts");
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => process.exit(code));
}
