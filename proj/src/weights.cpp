#include "topicnorms/weights.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "topicnorms/errors.hpp"

namespace topicnorms {

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, unsigned num,
                                       unsigned den) {
  if (num == 0 || den == 0) throw InvalidArgument("split ratio must be positive");
  const std::size_t n = corpus.documents.size();
  if (n < 2) throw InvalidArgument("cannot split: need at least 2 documents");
  std::size_t train_count = (num * n + num + den - 1) / (num + den);  // ceil
  train_count = std::min(train_count, n - 1);  // keep the held-out part non-empty
  Corpus train, heldout;
  train.documents.assign(corpus.documents.begin(),
                         corpus.documents.begin() + train_count);
  heldout.documents.assign(corpus.documents.begin() + train_count,
                           corpus.documents.end());
  return {std::move(train), std::move(heldout)};
}

WeightEstimate estimate_weights_from_evidence(
    const std::vector<std::pair<double, double>>& evidence,
    const WeightConfig& config) {
  if (config.init_pn <= 0.0 || config.init_pn >= 1.0)
    throw InvalidArgument("init_pn must lie strictly between 0 and 1");
  if (config.tolerance <= 0.0) throw InvalidArgument("tolerance must be > 0");
  bool scorable = false;
  for (const auto& [csnn, csnv] : evidence)
    if (csnn > 0.0 || csnv > 0.0) scorable = true;
  if (!scorable) throw InvalidArgument("no evidence");

  WeightEstimate estimate;
  double pn = config.init_pn;
  for (int iteration = 0; iteration < config.max_iterations; ++iteration) {
    double responsibility_sum = 0.0;
    long counted = 0;
    for (const auto& [csnn, csnv] : evidence) {
      double a = pn * csnn;
      double b = (1.0 - pn) * csnv;
      if (a + b == 0.0) continue;
      responsibility_sum += a / (a + b);
      ++counted;
    }
    if (counted == 0) throw InvalidArgument("no evidence");
    double next = responsibility_sum / static_cast<double>(counted);
    estimate.trajectory.push_back(next);
    estimate.iterations = iteration + 1;
    bool done = std::fabs(next - pn) < config.tolerance;
    pn = next;
    if (done) {
      estimate.converged = true;
      break;
    }
  }
  estimate.weights.pn = pn;
  return estimate;
}

WeightEstimate estimate_weights(const NormStore& store, const Corpus& heldout,
                                const WeightConfig& config) {
  if (heldout.documents.empty()) throw InvalidArgument("held-out part is empty");

  // Evidence per noun occurrence, in (document, paragraph, cardinal) order:
  // csnn and csnv each normalized by their paragraph maximum.
  std::vector<std::pair<double, double>> evidence;
  for (const auto& doc : heldout.documents) {
    for (const auto& paragraph : doc.paragraphs) {
      std::vector<OccurrenceStrengths> strengths;
      for (const auto& sentence : paragraph.sentences)
        for (const auto& token : sentence.tokens)
          if (token.is_noun())
            strengths.push_back(score_occurrence(paragraph, token, store));
      if (strengths.empty()) continue;
      double max_nn = 0.0, max_nv = 0.0;
      for (const auto& s : strengths) {
        max_nn = std::max(max_nn, s.csnn);
        max_nv = std::max(max_nv, s.csnv);
      }
      for (const auto& s : strengths)
        evidence.emplace_back(max_nn > 0.0 ? s.csnn / max_nn : 0.0,
                              max_nv > 0.0 ? s.csnv / max_nv : 0.0);
    }
  }
  return estimate_weights_from_evidence(evidence, config);
}

void save_weights(const InterpolationWeights& weights, std::ostream& out) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", weights.pn);
  out << "PN " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.6f", weights.pv());
  out << "PV " << buf << "\n";
  if (!out) throw IoError("weights write failed");
}

void save_weights_file(const InterpolationWeights& weights,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write weights '" + path + "'");
  save_weights(weights, out);
}

InterpolationWeights load_weights(std::istream& in) {
  std::string label;
  double pn = 0.0, pv = 0.0;
  if (!(in >> label) || label != "PN" || !(in >> pn))
    throw ParseError("expected 'PN <value>'", 1);
  if (!(in >> label) || label != "PV" || !(in >> pv))
    throw ParseError("expected 'PV <value>'", 2);
  if (pn < 0.0 || pn > 1.0) throw ParseError("PN outside [0,1]", 1);
  if (std::fabs(pn + pv - 1.0) > 1e-6)
    throw ParseError("PN and PV must sum to 1", 2);
  return InterpolationWeights{pn};
}

InterpolationWeights load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open weights '" + path + "'");
  return load_weights(in);
}

}  // namespace topicnorms
