#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "topicnorms/corpus.hpp"
#include "topicnorms/norms.hpp"
#include "topicnorms/topics.hpp"

namespace topicnorms {

struct WeightConfig {
  double init_pn = 0.5;
  double tolerance = 1e-6;
  int max_iterations = 200;
};

struct WeightEstimate {
  InterpolationWeights weights;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trajectory;  // pn after each iteration
};

// Deterministic split by document order: the first part receives
// ceil(num*N/(num+den)) documents, capped so the held-out part stays
// non-empty. Requires at least two documents.
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, unsigned num,
                                       unsigned den);

// Deleted-interpolation estimate of PN over held-out noun occurrences.
// Per occurrence, CSNN and CSNV are each normalized by their paragraph
// maximum; the update averages PN*csnn / (PN*csnn + PV*csnv), skipping
// occurrences with no evidence. Errors when nothing is scorable.
WeightEstimate estimate_weights(const NormStore& store, const Corpus& heldout,
                                const WeightConfig& config = WeightConfig{});

// The iteration itself, over already-normalized (csnn, csnv) evidence pairs
// in occurrence order. estimate_weights extracts the evidence and calls this.
WeightEstimate estimate_weights_from_evidence(
    const std::vector<std::pair<double, double>>& evidence,
    const WeightConfig& config = WeightConfig{});

void save_weights(const InterpolationWeights& weights, std::ostream& out);
void save_weights_file(const InterpolationWeights& weights,
                       const std::string& path);
InterpolationWeights load_weights(std::istream& in);
InterpolationWeights load_weights_file(const std::string& path);

}  // namespace topicnorms
