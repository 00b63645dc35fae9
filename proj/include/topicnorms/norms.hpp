#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "topicnorms/corpus.hpp"

namespace topicnorms {

// Word-importance table for one kind: value = max(0, ln((P-O)/O) + c) where
// O is the word's document frequency. Words screened to zero stay in the
// table as explicit zeros but never generate pair entries.
struct IdfTable {
  WordKind kind = WordKind::Noun;
  int document_count = 0;
  double threshold = 0.0;
  std::map<std::string, double> values;

  double value_of(const std::string& base) const {
    auto it = values.find(base);
    return it == values.end() ? 0.0 : it->second;
  }
};

using PairKey = std::pair<std::string, std::string>;
using PairMap = std::map<PairKey, double>;

// Trained association norms. ann keys are stored with the two nouns in
// lexicographic order and looked up symmetrically; anv keys are (noun, verb).
// Zero-strength pairs are omitted.
struct NormStore {
  IdfTable idf_noun;
  IdfTable idf_verb;
  PairMap ann;
  PairMap anv;
  int document_count = 0;
  double c_noun = 0.0;
  double c_verb = 0.0;
  std::uint64_t fingerprint = 0;

  double lookup_ann(const std::string& noun_a, const std::string& noun_b) const;
  double lookup_anv(const std::string& noun, const std::string& verb) const;
};

inline constexpr double kDefaultNounThreshold = 0.77;
inline constexpr double kDefaultVerbThreshold = 2.46;

// max(0, ln((P - O)/O) + c); the reset rule maps negative logs to zero.
double idf_value(int document_count, int document_frequency, double threshold);

IdfTable compute_idf(const Corpus& corpus, WordKind kind, double threshold);

// |C(x) - C(y)| for two distinct token occurrences of the same paragraph.
double token_distance(const Token& x, const Token& y);

// IDF(a) * IDF(b) / d. Callers pass only distinct-base pairs for noun-noun;
// same-base pairs are excluded upstream and contribute zero.
double occurrence_strength(double idf_a, double idf_b, double distance);

NormStore train(const Corpus& corpus, double c_noun = kDefaultNounThreshold,
                double c_verb = kDefaultVerbThreshold, int threads = 1);

// Training with caller-supplied IDF tables; the seam train() is built on.
NormStore train_with_idf(const Corpus& corpus, IdfTable idf_noun,
                         IdfTable idf_verb, int threads = 1);

void save_store(const NormStore& store, std::ostream& out);
void save_store_file(const NormStore& store, const std::string& path);
NormStore load_store(std::istream& in);
NormStore load_store_file(const std::string& path);

}  // namespace topicnorms
