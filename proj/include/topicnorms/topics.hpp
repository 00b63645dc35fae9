#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "topicnorms/corpus.hpp"
#include "topicnorms/norms.hpp"

namespace topicnorms {

// PN/PV mixture for combining noun-noun and noun-verb connective strength.
// pv is always the complement of pn.
struct InterpolationWeights {
  double pn = 0.5;

  double pv() const { return 1.0 - pn; }
};

struct OccurrenceScore {
  std::string base_form;
  int cardinal = 0;
  double csnn = 0.0;
  double csnv = 0.0;
  double cs_raw = 0.0;  // pn*csnn + pv*csnv
  double cs = 0.0;      // cs_raw / paragraph maximum, in [0,1]
};

struct CandidateScore {
  std::string base_form;
  std::vector<OccurrenceScore> occurrences;  // cardinal order
  double ncs = 0.0;
  int rank = 0;
  int frequency = 0;
};

struct TopicResult {
  std::string doc_id;
  int paragraph_index = 0;  // 1-based
  std::vector<CandidateScore> candidates;  // sorted by rank
  std::vector<std::string> topic_set;      // prefix of the ranking
};

struct ShiftEntry {
  std::string prev_topic;
  int rank_in_current = 0;
  bool virtual_rank = false;  // topic absent from the current candidates
};

struct ParagraphShift {
  int paragraph_index = 0;  // the current paragraph, >= 2
  std::vector<ShiftEntry> topics;
};

struct ShiftReport {
  std::string doc_id;
  std::vector<ParagraphShift> paragraphs;  // one per paragraph after the first
};

// Summed association of one noun occurrence with every other-base noun
// occurrence (csnn) and every verb occurrence (csnv) of its paragraph.
struct OccurrenceStrengths {
  double csnn = 0.0;
  double csnv = 0.0;
};
OccurrenceStrengths score_occurrence(const Paragraph& paragraph,
                                     const Token& noun_occurrence,
                                     const NormStore& store);

double combine_cs(double csnn, double csnv, const InterpolationWeights& weights);

// Divide by the maximum; all-zero input stays all-zero.
std::vector<double> normalize_cs(const std::vector<double>& raw_scores);

// Noisy-or fold over one candidate's normalized scores in cardinal order;
// equals 1 - prod(1 - cs_i).
double merge_ncs(std::span<const double> cs_values);

TopicResult identify_topics(const Paragraph& paragraph, const NormStore& store,
                            const InterpolationWeights& weights,
                            double fraction);

// All paragraphs of a corpus; results are positionally assembled so the
// thread count never affects the output.
std::vector<TopicResult> identify_corpus(const Corpus& corpus,
                                         const NormStore& store,
                                         const InterpolationWeights& weights,
                                         double fraction, int threads = 1);

ShiftReport topic_shift(const Document& document, const NormStore& store,
                        const InterpolationWeights& weights, double fraction);

void write_topics_tsv(std::span<const TopicResult> results, std::ostream& out);
void write_shift_tsv(std::span<const ShiftReport> reports, std::ostream& out);

}  // namespace topicnorms
