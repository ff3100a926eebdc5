"""simplikit: lexical simplification pipeline, evaluation metrics, and
translation complexity-drift analysis for parallel simplification corpora."""

__version__ = "0.1.0"

from .corpus import (
    LexInstance,
    ParallelPair,
    PredictionRecord,
    TokenizedSentence,
    align_one_to_one,
    load_lexical_gold,
    load_parallel,
    load_predictions,
    tokenize,
)
from .driftcheck import DriftPair, Histogram, compute_drift, histogram, summarize
from .errors import DataError, ParseError, ResourceMissingError, SimplikitError
from .lexmetrics import (
    LexEvalItem,
    LexReport,
    acc_at_1,
    acc_at_k_top1,
    evaluate_lexical,
    map_at_k,
    potential_at_k,
    precision_recall_at_k,
)
from .lexres import (
    Analysis,
    CefrLexicon,
    EmbeddingTable,
    FreqLexicon,
    MorphLexicon,
    ResourceSet,
    cosine,
    lemma_forms,
    load_resources,
)
from .pipeline import (
    CandidateScore,
    PipelineConfig,
    SimplificationResult,
    generate_candidates,
    grammaticality,
    identify_complex_word,
    meaning_ranks,
    rank_candidates,
    simplify_sentence,
)
from .sentmetrics import (
    SentReport,
    bleu,
    edit_distance,
    embed_similarity_f1,
    evaluate_sentence,
    isim,
    sari,
)
