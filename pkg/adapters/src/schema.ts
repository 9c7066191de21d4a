/**
 * Interchange schemas shared with the graph pipeline: the JSONL dataset it
 * reads and the score files its file-backed providers consume.
 */
import { z } from "zod";

export const articleSchema = z.object({
  id: z.string().min(1),
  side: z.enum(["left", "right", "center"]),
  sentences: z.array(z.string().min(1)).min(1),
  salience: z.array(z.number().min(0).max(1)).optional(),
  embeddings: z.array(z.array(z.number())).optional(),
  svos: z
    .array(z.union([z.null(), z.object({ s: z.string(), v: z.string().min(1), o: z.string() })]))
    .optional(),
});

export const topicSchema = z.object({
  topic_id: z.string().min(1),
  articles: z.array(articleSchema).min(3),
});

export type Article = z.infer<typeof articleSchema>;
export type Topic = z.infer<typeof topicSchema>;

export const embeddingEntrySchema = z.object({
  article_id: z.string(),
  index: z.number().int().min(0),
  text: z.string(),
  vector: z.array(z.number()),
});

export const salienceEntrySchema = z.object({
  article_id: z.string(),
  index: z.number().int().min(0),
  score: z.number().min(0).max(1),
});

export const temporalEntrySchema = z.object({
  src: z.string(),
  dst: z.string(),
  relation: z.enum(["before", "after", "equal", "vague"]),
  confidence: z.number().min(0).max(1),
});

export const corefEntrySchema = z.object({
  a: z.string(),
  b: z.string(),
  score: z.number().min(0).max(1),
});

export const neutralizedEntrySchema = z.object({
  left_id: z.string(),
  right_id: z.string(),
  left_text: z.string(),
  right_text: z.string(),
  text: z.string().min(1),
});

export const scoreFileSchema = z.discriminatedUnion("role", [
  z.object({ role: z.literal("embedding"), entries: z.array(embeddingEntrySchema) }),
  z.object({ role: z.literal("salience"), entries: z.array(salienceEntrySchema) }),
  z.object({ role: z.literal("temporal"), entries: z.array(temporalEntrySchema) }),
  z.object({ role: z.literal("coref"), entries: z.array(corefEntrySchema) }),
  z.object({ role: z.literal("neutralized"), entries: z.array(neutralizedEntrySchema) }),
]);

export type ScoreFile = z.infer<typeof scoreFileSchema>;

/** Input to the neutralizer adapter: coreferential left/right sentence pairs. */
export const pairFileSchema = z.object({
  pairs: z.array(
    z.object({
      left_id: z.string(),
      right_id: z.string(),
      left_text: z.string().min(1),
      right_text: z.string().min(1),
    }),
  ),
});

export type PairFile = z.infer<typeof pairFileSchema>;
