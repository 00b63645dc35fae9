#pragma once

#include <sstream>
#include <string>

#include "topicnorms/corpus.hpp"
#include "topicnorms/norms.hpp"

namespace testing {

inline topicnorms::Corpus parse(const std::string& text,
                                const topicnorms::LemmaMap* lemmas = nullptr) {
  std::istringstream in(text);
  return topicnorms::parse_corpus(in, topicnorms::TagPolicy{}, lemmas);
}

inline std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

// A store holding only explicit pair values, for hand-computed scoring
// fixtures. ann keys are canonicalized here.
inline topicnorms::NormStore make_store(
    const std::vector<std::tuple<std::string, std::string, double>>& ann,
    const std::vector<std::tuple<std::string, std::string, double>>& anv) {
  topicnorms::NormStore store;
  store.document_count = 1;
  for (const auto& [a, b, value] : ann) {
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    store.ann[key] = value;
  }
  for (const auto& [noun, verb, value] : anv) store.anv[{noun, verb}] = value;
  return store;
}

inline const topicnorms::Paragraph& first_paragraph(
    const topicnorms::Corpus& corpus) {
  return corpus.documents.front().paragraphs.front();
}

inline const topicnorms::Token& noun_at(const topicnorms::Paragraph& paragraph,
                                        int cardinal) {
  for (const auto& sentence : paragraph.sentences)
    for (const auto& token : sentence.tokens)
      if (token.cardinal == cardinal) return token;
  throw std::runtime_error("no token with that cardinal");
}

}  // namespace testing
