"""Synthetic side-labeled corpora for end-to-end tests.

Each topic shares four neutral core sentences across all three sides; the
left and right articles add two side-specific sentences carrying charged
lexicon words. Topics draw their sentences from fixed template pools, so the
vocabulary is identical across topics and a correct pipeline generalizes from
train to test topics: coreferential cores merge, side-specific nodes get
pruned, and the neutral graph carries near-zero unique arousal.
"""
from evgraph.core import ArticleRecord, Side
from evgraph.dataset import TopicRecord
from evgraph.lexicon import VadLexicon

TOY_VAD_ROWS = {
    "heroic": (0.90, 0.70, 0.5),
    "glorious": (0.85, 0.75, 0.5),
    "triumphant": (0.80, 0.80, 0.5),
    "uplifting": (0.90, 0.60, 0.5),
    "outrageous": (0.10, 0.90, 0.5),
    "disaster": (0.10, 0.80, 0.5),
    "corrupt": (0.10, 0.85, 0.5),
    "slaughter": (0.05, 0.95, 0.5),
    "scandal": (0.15, 0.80, 0.5),
    "radical": (0.20, 0.70, 0.5),
}

TOY_VAD = VadLexicon.from_pairs(TOY_VAD_ROWS)

LEFT_POS_AROUSAL = TOY_VAD_ROWS["heroic"][1] + TOY_VAD_ROWS["glorious"][1]
LEFT_NEG_AROUSAL = TOY_VAD_ROWS["outrageous"][1] + TOY_VAD_ROWS["disaster"][1]
RIGHT_POS_AROUSAL = TOY_VAD_ROWS["triumphant"][1] + TOY_VAD_ROWS["uplifting"][1]
RIGHT_NEG_AROUSAL = TOY_VAD_ROWS["corrupt"][1] + TOY_VAD_ROWS["scandal"][1]

CORE_POOL = [
    "officials reviewed the measure in committee",
    "lawmakers debated the measure during the session",
    "the committee approved the measure after review",
    "the senate scheduled a vote on the measure",
    "the governor signed the measure into law",
    "the council published the updated measure text",
    "analysts summarized the measure for reporters",
    "the house postponed its hearing on the measure",
    "negotiators drafted amendments to the measure",
    "the agency issued guidance about the measure",
    "reporters covered the measure announcement today",
    "the panel collected testimony on the measure",
]

LEFT_POS_POOL = [
    "supporters hailed the heroic glorious campaign for the measure",
    "advocates celebrated the heroic glorious momentum behind the measure",
]
LEFT_NEG_POOL = [
    "opponents warned of an outrageous disaster from the measure",
    "detractors predicted an outrageous disaster following the measure",
]
RIGHT_POS_POOL = [
    "backers cheered a triumphant uplifting push behind the measure",
    "allies praised the triumphant uplifting drive for the measure",
]
RIGHT_NEG_POOL = [
    "critics condemned one corrupt scandal around the measure",
    "skeptics decried a corrupt scandal tied to the measure",
]


def core_sentences(t: int) -> list[str]:
    return [CORE_POOL[(t + i) % len(CORE_POOL)] for i in range(4)]


def left_extras(t: int) -> list[str]:
    return [LEFT_POS_POOL[t % 2], LEFT_NEG_POOL[t % 2]]


def right_extras(t: int) -> list[str]:
    return [RIGHT_POS_POOL[t % 2], RIGHT_NEG_POOL[t % 2]]


def make_topic(t: int) -> TopicRecord:
    cores = core_sentences(t)
    articles = (
        ArticleRecord(
            id=f"t{t}-left", topic_id=f"t{t}", side=Side.LEFT,
            sentences=tuple(cores + left_extras(t)),
        ),
        ArticleRecord(
            id=f"t{t}-right", topic_id=f"t{t}", side=Side.RIGHT,
            sentences=tuple(cores + right_extras(t)),
        ),
        ArticleRecord(
            id=f"t{t}-center", topic_id=f"t{t}", side=Side.CENTER,
            sentences=tuple(cores),
        ),
    )
    return TopicRecord(topic_id=f"t{t}", articles=articles)


def make_corpus(n_topics: int = 30) -> list[TopicRecord]:
    return [make_topic(t) for t in range(n_topics)]


def vad_lexicon_file(path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("token\tvalence\tarousal\tdominance\n")
        for tok, (v, a, d) in sorted(TOY_VAD_ROWS.items()):
            fh.write(f"{tok}\t{v}\t{a}\t{d}\n")
