#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace topicnorms {

enum class WordKind { Noun, Verb, Other };

// A tagged token. Nouns and verbs carry a paragraph-local cardinal number
// (1-based, continuous across sentence boundaries); for every other token
// cardinal is 0 and base_form is empty.
struct Token {
  std::string surface;
  std::string tag;
  WordKind kind = WordKind::Other;
  std::string base_form;
  int cardinal = 0;

  bool is_noun() const { return kind == WordKind::Noun; }
  bool is_verb() const { return kind == WordKind::Verb; }
  bool has_cardinal() const { return cardinal > 0; }
};

struct Sentence {
  std::vector<Token> tokens;
};

struct Paragraph {
  std::vector<Sentence> sentences;
  int distinct_nouns = 0;  // distinct noun base forms (m)
  int distinct_verbs = 0;  // distinct verb base forms (n)
};

struct Document {
  std::string id;
  std::vector<Paragraph> paragraphs;
};

struct Corpus {
  std::vector<Document> documents;
};

struct CorpusStats {
  long documents = 0;
  long paragraphs = 0;
  long sentences = 0;
  long distinct_nouns = 0;
  long distinct_verbs = 0;
  long long nn_pairs = 0;  // paragraph-level noun-noun pair instances
  long long vn_pairs = 0;  // sentence-level verb-noun pair instances
};

// Which tags count as nouns/verbs. Defaults follow the LOB tag set: any tag
// starting with N is a noun and any starting with V is a verb, except the
// exact tags NC, NNU and NNUS, and ditto tags (tag ends in a digit).
struct TagPolicy {
  std::vector<std::string> noun_prefixes{"N"};
  std::vector<std::string> verb_prefixes{"V"};
  std::set<std::string> excluded_tags{"NC", "NNU", "NNUS"};
  bool exclude_ditto = true;
};

// Optional surface -> lemma overrides, consulted before the suffix rules.
// File format: TSV lines `surface<TAB>kind<TAB>lemma` with kind N or V.
class LemmaMap {
 public:
  void insert(std::string_view surface, WordKind kind, std::string_view lemma);
  const std::string* find(std::string_view surface, WordKind kind) const;
  std::size_t size() const { return entries_.size(); }

  static LemmaMap load(std::istream& in);
  static LemmaMap load_file(const std::string& path);

 private:
  std::unordered_map<std::string, std::string> entries_;  // "N\x1f<surface>" keyed
};

WordKind classify_token(std::string_view tag, const TagPolicy& policy);

// Deterministic lemma for a noun or verb surface form: lemma-map lookup on the
// lowercased surface first, suffix-rule stemming otherwise.
std::string base_form(std::string_view surface, WordKind kind,
                      const LemmaMap* lemmas = nullptr);

Corpus parse_corpus(std::istream& in, const TagPolicy& policy = TagPolicy{},
                    const LemmaMap* lemmas = nullptr);
Corpus parse_corpus_file(const std::string& path,
                         const TagPolicy& policy = TagPolicy{},
                         const LemmaMap* lemmas = nullptr);

// Canonical debug dump in the corpus file format; parse(write(parse(x)))
// equals parse(x) on well-formed input.
void write_corpus(const Corpus& corpus, std::ostream& out);

CorpusStats corpus_stats(const Corpus& corpus);

// FNV-1a over the canonical dump; stored in norm files to tie a store to the
// corpus it was trained on.
std::uint64_t corpus_fingerprint(const Corpus& corpus);

}  // namespace topicnorms
