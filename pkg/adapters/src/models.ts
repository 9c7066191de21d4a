/**
 * Model backends for the adapters.
 *
 * Production runs plug a real inference pipeline in through the factory
 * hooks (e.g. a transformers.js feature-extraction pipeline). The built-in
 * "hashed" backend is a fully deterministic stand-in so the emit scripts and
 * their outputs can be exercised offline; it is NOT the pretrained model,
 * just schema- and contract-compatible with one.
 */
import { createHash } from "node:crypto";

export interface Encoder {
  readonly dim: number;
  embed(text: string): Promise<number[]>;
}

export interface PairScorer {
  /** Similarity in [0,1]; must be symmetric. */
  score(a: string, b: string): Promise<number>;
}

export interface Rewriter {
  rewrite(leftText: string, rightText: string): Promise<string>;
}

export function tokenize(text: string): string[] {
  return text.toLowerCase().match(/[a-z0-9]+/g) ?? [];
}

function tokenIndex(token: string, dim: number): number {
  const digest = createHash("sha256").update(`bow:${token}`).digest();
  return Number(digest.readBigUInt64BE(0) % BigInt(dim));
}

/** Deterministic hashed bag-of-words encoder (unit L2 norm). */
export class HashedBowEncoder implements Encoder {
  constructor(readonly dim: number = 768) {
    if (dim < 2) throw new Error("encoder dimension must be >= 2");
  }

  async embed(text: string): Promise<number[]> {
    const vec = new Array<number>(this.dim).fill(0);
    for (const token of tokenize(text)) {
      vec[tokenIndex(token, this.dim)] += 1;
    }
    const norm = Math.sqrt(vec.reduce((acc, v) => acc + v * v, 0));
    if (norm === 0) {
      vec[0] = 1;
      return vec;
    }
    return vec.map((v) => v / norm);
  }
}

/** Cosine of encoder embeddings, clamped to [0,1]. */
export class EmbeddingPairScorer implements PairScorer {
  constructor(private readonly encoder: Encoder) {}

  async score(a: string, b: string): Promise<number> {
    const [u, v] = await Promise.all([this.encoder.embed(a), this.encoder.embed(b)]);
    const dot = u.reduce((acc, x, i) => acc + x * v[i], 0);
    return Math.min(1, Math.max(0, dot));
  }
}

/** Passthrough stand-in for the seq2seq neutralizer: keeps the left phrasing. */
export class PassthroughRewriter implements Rewriter {
  async rewrite(leftText: string, _rightText: string): Promise<string> {
    return leftText;
  }
}

export interface ModelFactories {
  encoder?: (modelId: string, dim: number) => Promise<Encoder>;
  pairScorer?: (modelId: string) => Promise<PairScorer>;
  rewriter?: (modelId: string) => Promise<Rewriter>;
}

export async function resolveEncoder(modelId: string, dim: number, factories: ModelFactories = {}): Promise<Encoder> {
  if (modelId === "hashed") return new HashedBowEncoder(dim);
  if (factories.encoder) return factories.encoder(modelId, dim);
  throw new Error(`no encoder backend for model ${modelId}`);
}

export async function resolvePairScorer(modelId: string, factories: ModelFactories = {}): Promise<PairScorer> {
  if (modelId === "hashed") return new EmbeddingPairScorer(new HashedBowEncoder(768));
  if (factories.pairScorer) return factories.pairScorer(modelId);
  throw new Error(`no pairwise scorer backend for model ${modelId}`);
}

export async function resolveRewriter(modelId: string, factories: ModelFactories = {}): Promise<Rewriter> {
  if (modelId === "hashed") return new PassthroughRewriter();
  if (factories.rewriter) return factories.rewriter(modelId);
  throw new Error(`no rewriter backend for model ${modelId}`);
}
