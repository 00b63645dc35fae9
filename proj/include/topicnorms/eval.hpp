#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "topicnorms/corpus.hpp"
#include "topicnorms/norms.hpp"
#include "topicnorms/topics.hpp"

namespace topicnorms {

// One linguist-assigned topic per (document, paragraph). A pronoun-valued
// topic is flagged instead of stored; such paragraphs are undecidable.
struct GoldAnnotation {
  std::string doc_id;
  int paragraph_index = 0;  // 1-based
  std::string topic;        // empty when pronoun
  bool pronoun = false;
  std::size_t line = 0;     // source line, for diagnostics
};

enum class Outcome { Correct, Error, Undecidable };

struct MetricRow {
  bool present = false;
  double mean = 0.0;
  double stdev = 0.0;  // population form
};

// The six performance rows: (1) candidates per paragraph, (2) rank of the
// assumed topic, (3) frequency of candidates, (4) occurrences of the assumed
// topic, (5) occurrences of the computed topic, (6) rank of the previous
// paragraph's topic.
struct MetricsTable {
  std::array<MetricRow, 6> rows;
};

struct TextSummary {
  std::string text_id;
  MetricsTable metrics;
  long correct = 0;
  long error = 0;
  long undecidable = 0;

  long evaluated() const { return correct + error + undecidable; }
};

struct EvalReport {
  std::vector<TextSummary> texts;
  long correct = 0;
  long error = 0;
  long undecidable = 0;
  double correct_rate_percent = 0.0;
  std::string table_text;    // human-readable, one column per text
  std::string figure1_csv;   // text,correct,error,undecidable
  std::string figure2_csv;   // text,freq_candidates,freq_assumed,freq_computed
};

std::vector<GoldAnnotation> load_gold(std::istream& in);
std::vector<GoldAnnotation> load_gold_file(const std::string& path);

// Undecidable for pronoun gold; otherwise Correct iff the gold topic is a
// member of the computed topic set.
Outcome classify(const TopicResult& result, const GoldAnnotation& gold);

// Metrics for one document. `results` must hold one TopicResult per
// paragraph; `shift` may be null for single-paragraph documents (row 6 is
// then absent). Rows with no evaluable paragraph come back absent.
MetricsTable metrics(const Document& document,
                     const std::vector<TopicResult>& results,
                     const ShiftReport* shift,
                     const std::vector<GoldAnnotation>& golds);

EvalReport summarize(const std::vector<TextSummary>& texts);

// Full pipeline over a corpus: validates the gold annotations against the
// corpus, identifies topics, classifies outcomes, and assembles the report.
EvalReport evaluate_corpus(const Corpus& corpus, const NormStore& store,
                           const InterpolationWeights& weights, double fraction,
                           const std::vector<GoldAnnotation>& golds,
                           int threads = 1);

}  // namespace topicnorms
