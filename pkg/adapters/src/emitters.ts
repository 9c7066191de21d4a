/**
 * Batch emitters: run a model over a dataset and produce score files the
 * pipeline's file-backed providers load unchanged.
 */
import { Encoder, PairScorer, Rewriter } from "./models.js";
import { PairFile, ScoreFile, Topic, scoreFileSchema } from "./schema.js";

function nodeId(articleId: string, index: number): string {
  return `${articleId}:${index}`;
}

/** One unit vector per sentence, keyed by (article id, sentence index). */
export async function emitEmbeddings(topics: Topic[], encoder: Encoder): Promise<ScoreFile> {
  const entries = [];
  for (const topic of topics) {
    for (const article of topic.articles) {
      for (let i = 0; i < article.sentences.length; i++) {
        entries.push({
          article_id: article.id,
          index: i,
          text: article.sentences[i],
          vector: await encoder.embed(article.sentences[i]),
        });
      }
    }
  }
  return scoreFileSchema.parse({ role: "embedding", entries });
}

/**
 * Temporal: within-article ordered sentence pairs (earlier first), with the
 * document-order prior (confidence grows with distance, capped at 1).
 * Coref: unordered cross-article sentence pairs within each topic.
 */
export async function emitPairwiseScores(
  topics: Topic[],
  role: "temporal" | "coref",
  scorer: PairScorer,
): Promise<ScoreFile> {
  if (role === "temporal") {
    const entries = [];
    for (const topic of topics) {
      for (const article of topic.articles) {
        for (let i = 0; i < article.sentences.length; i++) {
          for (let j = i + 1; j < article.sentences.length; j++) {
            entries.push({
              src: nodeId(article.id, i),
              dst: nodeId(article.id, j),
              relation: "before" as const,
              confidence: Math.min(1, 0.5 + 0.1 * (j - i)),
            });
          }
        }
      }
    }
    return scoreFileSchema.parse({ role: "temporal", entries });
  }

  const entries = [];
  for (const topic of topics) {
    for (let a = 0; a < topic.articles.length; a++) {
      for (let b = a + 1; b < topic.articles.length; b++) {
        const left = topic.articles[a];
        const right = topic.articles[b];
        for (let i = 0; i < left.sentences.length; i++) {
          for (let j = 0; j < right.sentences.length; j++) {
            entries.push({
              a: nodeId(left.id, i),
              b: nodeId(right.id, j),
              score: await scorer.score(left.sentences[i], right.sentences[j]),
            });
          }
        }
      }
    }
  }
  return scoreFileSchema.parse({ role: "coref", entries });
}

/** One rewritten sentence per coreferential left/right pair. */
export async function emitNeutralized(pairs: PairFile, rewriter: Rewriter): Promise<ScoreFile> {
  const entries = [];
  for (const pair of pairs.pairs) {
    entries.push({
      left_id: pair.left_id,
      right_id: pair.right_id,
      left_text: pair.left_text,
      right_text: pair.right_text,
      text: await rewriter.rewrite(pair.left_text, pair.right_text),
    });
  }
  return scoreFileSchema.parse({ role: "neutralized", entries });
}
