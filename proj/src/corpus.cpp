#include "topicnorms/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "topicnorms/errors.hpp"

namespace topicnorms {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string lemma_key(std::string_view surface, WordKind kind) {
  std::string key(kind == WordKind::Noun ? "N" : "V");
  key += '\x1f';
  key += surface;
  return key;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool sibilant_before_es(std::string_view s) {
  // "-es" strips only after s, x, z, ch, sh.
  if (s.size() < 3) return false;
  char c = s[s.size() - 3];
  if (c == 's' || c == 'x' || c == 'z') return true;
  if (s.size() >= 4 && (c == 'h')) {
    char b = s[s.size() - 4];
    return b == 'c' || b == 's';
  }
  return false;
}

bool undoublable(char c) {
  // CVC doubling letters; l, s, f, z keep their double ("fall", "pass").
  switch (c) {
    case 'b': case 'd': case 'g': case 'k':
    case 'm': case 'n': case 'p': case 'r': case 't':
      return true;
    default:
      return false;
  }
}

std::string undouble(std::string stem) {
  if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
      undoublable(stem.back())) {
    stem.pop_back();
  }
  return stem;
}

std::string stem_noun(std::string w) {
  if (ends_with(w, "ies") && w.size() > 4)
    return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "es") && w.size() > 3 && sibilant_before_es(w))
    return w.substr(0, w.size() - 2);
  if (ends_with(w, "s") && w.size() > 1 && !ends_with(w, "ss"))
    return w.substr(0, w.size() - 1);
  return w;
}

std::string stem_verb(std::string w) {
  if (ends_with(w, "ing") && w.size() > 4)
    return undouble(w.substr(0, w.size() - 3));
  if (ends_with(w, "ed") && w.size() > 3)
    return undouble(w.substr(0, w.size() - 2));
  if (ends_with(w, "ies") && w.size() > 4)
    return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "es") && w.size() > 3)
    return w.substr(0, w.size() - 2);
  if (ends_with(w, "s") && w.size() > 1 && !ends_with(w, "ss"))
    return w.substr(0, w.size() - 1);
  return w;
}

// Assign cardinals 1..K over the paragraph's noun and verb tokens, continuous
// across sentence boundaries, and recompute the distinct base form counts.
void finalize_paragraph(Paragraph& paragraph) {
  int next = 1;
  std::set<std::string> nouns, verbs;
  for (auto& sentence : paragraph.sentences) {
    for (auto& token : sentence.tokens) {
      if (token.kind == WordKind::Other) continue;
      token.cardinal = next++;
      (token.is_noun() ? nouns : verbs).insert(token.base_form);
    }
  }
  paragraph.distinct_nouns = static_cast<int>(nouns.size());
  paragraph.distinct_verbs = static_cast<int>(verbs.size());
}

}  // namespace

void LemmaMap::insert(std::string_view surface, WordKind kind,
                      std::string_view lemma) {
  entries_[lemma_key(to_lower(surface), kind)] = to_lower(lemma);
}

const std::string* LemmaMap::find(std::string_view surface,
                                  WordKind kind) const {
  auto it = entries_.find(lemma_key(surface, kind));
  return it == entries_.end() ? nullptr : &it->second;
}

LemmaMap LemmaMap::load(std::istream& in) {
  LemmaMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw ParseError("lemma entry needs surface<TAB>kind<TAB>lemma", line_no);
    std::string surface = line.substr(0, t1);
    std::string kind_str = line.substr(t1 + 1, t2 - t1 - 1);
    std::string lemma = line.substr(t2 + 1);
    if (surface.empty() || lemma.empty())
      throw ParseError("empty surface or lemma", line_no);
    WordKind kind;
    if (kind_str == "N")
      kind = WordKind::Noun;
    else if (kind_str == "V")
      kind = WordKind::Verb;
    else
      throw ParseError("lemma kind must be N or V, got '" + kind_str + "'",
                       line_no);
    if (map.find(to_lower(surface), kind))
      throw ParseError("duplicate lemma entry for '" + surface + "'", line_no);
    map.insert(surface, kind, lemma);
  }
  return map;
}

LemmaMap LemmaMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lemma map '" + path + "'");
  return load(in);
}

WordKind classify_token(std::string_view tag, const TagPolicy& policy) {
  if (tag.empty()) return WordKind::Other;
  if (policy.excluded_tags.count(std::string(tag))) return WordKind::Other;
  if (policy.exclude_ditto && std::isdigit(static_cast<unsigned char>(tag.back())))
    return WordKind::Other;
  for (const auto& prefix : policy.noun_prefixes)
    if (tag.substr(0, prefix.size()) == prefix) return WordKind::Noun;
  for (const auto& prefix : policy.verb_prefixes)
    if (tag.substr(0, prefix.size()) == prefix) return WordKind::Verb;
  return WordKind::Other;
}

std::string base_form(std::string_view surface, WordKind kind,
                      const LemmaMap* lemmas) {
  if (kind == WordKind::Other)
    throw InvalidArgument("base_form requires a noun or verb");
  std::string lowered = to_lower(surface);
  if (lemmas) {
    if (const std::string* lemma = lemmas->find(lowered, kind)) return *lemma;
  }
  return kind == WordKind::Noun ? stem_noun(std::move(lowered))
                                : stem_verb(std::move(lowered));
}

Corpus parse_corpus(std::istream& in, const TagPolicy& policy,
                    const LemmaMap* lemmas) {
  Corpus corpus;
  std::set<std::string> seen_ids;
  Document* doc = nullptr;
  Paragraph current;
  std::string line;
  std::size_t line_no = 0;

  auto close_paragraph = [&] {
    if (!current.sentences.empty()) {
      finalize_paragraph(current);
      doc->paragraphs.push_back(std::move(current));
      current = Paragraph{};
    }
  };
  auto close_document = [&] {
    if (!doc) return;
    close_paragraph();
    if (doc->paragraphs.empty())
      throw ParseError("empty document '" + doc->id + "' (no sentences)",
                       line_no);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("#DOC", 0) == 0 &&
        (line.size() == 4 || line[4] == ' ' || line[4] == '\t')) {
      close_document();
      std::string id = line.size() > 4 ? line.substr(5) : "";
      while (!id.empty() && (id.front() == ' ' || id.front() == '\t'))
        id.erase(0, 1);
      while (!id.empty() && (id.back() == ' ' || id.back() == '\t'))
        id.pop_back();
      if (id.empty()) throw ParseError("#DOC header without an id", line_no);
      if (!seen_ids.insert(id).second)
        throw ParseError("duplicate document id '" + id + "'", line_no);
      corpus.documents.push_back(Document{id, {}});
      doc = &corpus.documents.back();
      continue;
    }
    if (is_blank(line)) {
      if (doc) close_paragraph();
      continue;
    }
    if (!doc) throw ParseError("token data before any #DOC header", line_no);

    Sentence sentence;
    std::istringstream fields(line);
    std::string word;
    while (fields >> word) {
      auto sep = word.rfind('_');
      if (sep == std::string::npos || sep == 0 || sep + 1 == word.size())
        throw ParseError("malformed token '" + word + "' (expected surface_TAG)",
                         line_no);
      Token token;
      token.surface = word.substr(0, sep);
      token.tag = word.substr(sep + 1);
      token.kind = classify_token(token.tag, policy);
      if (token.kind != WordKind::Other)
        token.base_form = base_form(token.surface, token.kind, lemmas);
      sentence.tokens.push_back(std::move(token));
    }
    current.sentences.push_back(std::move(sentence));
  }

  close_document();
  if (corpus.documents.empty()) throw ParseError("no documents");
  return corpus;
}

Corpus parse_corpus_file(const std::string& path, const TagPolicy& policy,
                         const LemmaMap* lemmas) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus '" + path + "'");
  return parse_corpus(in, policy, lemmas);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents) {
    out << "#DOC " << doc.id << "\n";
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
      if (p) out << "\n";
      for (const auto& sentence : doc.paragraphs[p].sentences) {
        for (std::size_t t = 0; t < sentence.tokens.size(); ++t) {
          if (t) out << ' ';
          out << sentence.tokens[t].surface << '_' << sentence.tokens[t].tag;
        }
        out << "\n";
      }
    }
  }
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  std::set<std::string> nouns, verbs;
  stats.documents = static_cast<long>(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    stats.paragraphs += static_cast<long>(doc.paragraphs.size());
    for (const auto& paragraph : doc.paragraphs) {
      stats.sentences += static_cast<long>(paragraph.sentences.size());
      std::vector<const Token*> paragraph_nouns;
      for (const auto& sentence : paragraph.sentences) {
        long noun_count = 0, verb_count = 0;
        for (const auto& token : sentence.tokens) {
          if (token.is_noun()) {
            ++noun_count;
            nouns.insert(token.base_form);
            paragraph_nouns.push_back(&token);
          } else if (token.is_verb()) {
            ++verb_count;
            verbs.insert(token.base_form);
          }
        }
        stats.vn_pairs += noun_count * verb_count;
      }
      for (std::size_t i = 0; i < paragraph_nouns.size(); ++i)
        for (std::size_t k = i + 1; k < paragraph_nouns.size(); ++k)
          if (paragraph_nouns[i]->base_form != paragraph_nouns[k]->base_form)
            ++stats.nn_pairs;
    }
  }
  stats.distinct_nouns = static_cast<long>(nouns.size());
  stats.distinct_verbs = static_cast<long>(verbs.size());
  return stats;
}

std::uint64_t corpus_fingerprint(const Corpus& corpus) {
  std::ostringstream dump;
  write_corpus(corpus, dump);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : dump.str()) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace topicnorms
