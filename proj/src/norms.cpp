#include "topicnorms/norms.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "topicnorms/errors.hpp"

namespace topicnorms {

namespace {

constexpr const char* kStoreMagic = "#TOPICNORMS v1";

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", value);
  return buf;
}

// Noun-noun contributions accumulate over unordered noun pairs of a
// paragraph; noun-verb contributions over noun x verb pairs of a sentence.
// Occurrences are visited in cardinal order so the summation order is fixed.
void accumulate_document(const Document& doc, const IdfTable& idf_noun,
                         const IdfTable& idf_verb, PairMap& ann, PairMap& anv) {
  for (const auto& paragraph : doc.paragraphs) {
    std::vector<const Token*> nouns;
    for (const auto& sentence : paragraph.sentences) {
      std::vector<const Token*> sentence_nouns, sentence_verbs;
      for (const auto& token : sentence.tokens) {
        if (token.is_noun()) {
          nouns.push_back(&token);
          sentence_nouns.push_back(&token);
        } else if (token.is_verb()) {
          sentence_verbs.push_back(&token);
        }
      }
      for (const Token* n : sentence_nouns) {
        double idf_n = idf_noun.value_of(n->base_form);
        for (const Token* v : sentence_verbs) {
          double s = occurrence_strength(idf_n, idf_verb.value_of(v->base_form),
                                         token_distance(*n, *v));
          if (s != 0.0) anv[{n->base_form, v->base_form}] += s;
        }
      }
    }
    for (std::size_t i = 0; i < nouns.size(); ++i) {
      double idf_i = idf_noun.value_of(nouns[i]->base_form);
      for (std::size_t k = i + 1; k < nouns.size(); ++k) {
        if (nouns[i]->base_form == nouns[k]->base_form) continue;
        double s = occurrence_strength(idf_i,
                                       idf_noun.value_of(nouns[k]->base_form),
                                       token_distance(*nouns[i], *nouns[k]));
        if (s == 0.0) continue;
        PairKey key = nouns[i]->base_form < nouns[k]->base_form
                          ? PairKey{nouns[i]->base_form, nouns[k]->base_form}
                          : PairKey{nouns[k]->base_form, nouns[i]->base_form};
        ann[key] += s;
      }
    }
  }
}

void expect_line(std::istream& in, std::size_t& line_no, const char* want,
                 std::string& rest) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("truncated store", line_no);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string_view view(line);
  std::string_view prefix(want);
  if (view.substr(0, prefix.size()) != prefix)
    throw ParseError("expected '" + std::string(want) + "'", line_no);
  rest = std::string(view.substr(prefix.size()));
  if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
}

double parse_real(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double value;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + text + "'", line_no);
  }
  if (used != text.size())
    throw ParseError("bad number '" + text + "'", line_no);
  return value;
}

}  // namespace

double NormStore::lookup_ann(const std::string& noun_a,
                             const std::string& noun_b) const {
  const PairKey key = noun_a < noun_b ? PairKey{noun_a, noun_b}
                                      : PairKey{noun_b, noun_a};
  auto it = ann.find(key);
  return it == ann.end() ? 0.0 : it->second;
}

double NormStore::lookup_anv(const std::string& noun,
                             const std::string& verb) const {
  auto it = anv.find({noun, verb});
  return it == anv.end() ? 0.0 : it->second;
}

double idf_value(int document_count, int document_frequency, double threshold) {
  if (document_frequency <= 0 || document_frequency > document_count)
    throw InvalidArgument("document frequency out of range");
  if (document_frequency == document_count) return 0.0;  // ln(0) -> reset
  double raw = std::log(static_cast<double>(document_count - document_frequency) /
                        document_frequency) +
               threshold;
  return raw > 0.0 ? raw : 0.0;
}

IdfTable compute_idf(const Corpus& corpus, WordKind kind, double threshold) {
  if (corpus.documents.empty()) throw InvalidArgument("no documents");
  if (threshold < 0.0) throw InvalidArgument("threshold must be >= 0");
  std::map<std::string, int> doc_frequency;
  for (const auto& doc : corpus.documents) {
    std::set<std::string> present;
    for (const auto& paragraph : doc.paragraphs)
      for (const auto& sentence : paragraph.sentences)
        for (const auto& token : sentence.tokens)
          if (token.kind == kind) present.insert(token.base_form);
    for (const auto& base : present) ++doc_frequency[base];
  }
  IdfTable table;
  table.kind = kind;
  table.document_count = static_cast<int>(corpus.documents.size());
  table.threshold = threshold;
  for (const auto& [base, freq] : doc_frequency)
    table.values[base] = idf_value(table.document_count, freq, threshold);
  return table;
}

double token_distance(const Token& x, const Token& y) {
  if (!x.has_cardinal() || !y.has_cardinal())
    throw InvalidArgument("token without a cardinal number");
  if (x.cardinal == y.cardinal) throw InvalidArgument("zero distance");
  return std::abs(x.cardinal - y.cardinal);
}

double occurrence_strength(double idf_a, double idf_b, double distance) {
  if (distance < 1.0) throw InvalidArgument("distance must be >= 1");
  return idf_a * idf_b / distance;
}

NormStore train_with_idf(const Corpus& corpus, IdfTable idf_noun,
                         IdfTable idf_verb, int threads) {
  if (corpus.documents.empty()) throw InvalidArgument("no documents");
  const std::size_t doc_count = corpus.documents.size();

  // Per-document partial maps folded in document order. The grouping of
  // floating-point additions is then independent of the thread count.
  std::vector<PairMap> partial_ann(doc_count), partial_anv(doc_count);
  auto work = [&](std::size_t d) {
    accumulate_document(corpus.documents[d], idf_noun, idf_verb,
                        partial_ann[d], partial_anv[d]);
  };
  if (threads <= 1) {
    for (std::size_t d = 0; d < doc_count; ++d) work(d);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(threads), doc_count);
    for (std::size_t w = 0; w < worker_count; ++w)
      pool.emplace_back([&] {
        for (std::size_t d = next.fetch_add(1); d < doc_count;
             d = next.fetch_add(1))
          work(d);
      });
    for (auto& t : pool) t.join();
  }

  NormStore store;
  store.document_count = static_cast<int>(doc_count);
  store.c_noun = idf_noun.threshold;
  store.c_verb = idf_verb.threshold;
  store.idf_noun = std::move(idf_noun);
  store.idf_verb = std::move(idf_verb);
  store.fingerprint = corpus_fingerprint(corpus);
  for (std::size_t d = 0; d < doc_count; ++d) {
    for (const auto& [key, value] : partial_ann[d]) store.ann[key] += value;
    for (const auto& [key, value] : partial_anv[d]) store.anv[key] += value;
  }
  std::erase_if(store.ann, [](const auto& kv) { return kv.second == 0.0; });
  std::erase_if(store.anv, [](const auto& kv) { return kv.second == 0.0; });
  return store;
}

NormStore train(const Corpus& corpus, double c_noun, double c_verb,
                int threads) {
  return train_with_idf(corpus, compute_idf(corpus, WordKind::Noun, c_noun),
                        compute_idf(corpus, WordKind::Verb, c_verb), threads);
}

void save_store(const NormStore& store, std::ostream& out) {
  char fp[32];
  std::snprintf(fp, sizeof(fp), "%016llx",
                static_cast<unsigned long long>(store.fingerprint));
  out << kStoreMagic << "\n";
  out << "#P " << store.document_count << "\n";
  out << "#CNOUN " << format_real(store.c_noun) << "\n";
  out << "#CVERB " << format_real(store.c_verb) << "\n";
  out << "#FINGERPRINT " << fp << "\n";
  out << "#IDF_NOUN\n";
  for (const auto& [base, value] : store.idf_noun.values)
    out << base << '\t' << format_real(value) << "\n";
  out << "#IDF_VERB\n";
  for (const auto& [base, value] : store.idf_verb.values)
    out << base << '\t' << format_real(value) << "\n";
  out << "#ANN\n";
  for (const auto& [key, value] : store.ann)
    out << key.first << '\t' << key.second << '\t' << format_real(value) << "\n";
  out << "#ANV\n";
  for (const auto& [key, value] : store.anv)
    out << key.first << '\t' << key.second << '\t' << format_real(value) << "\n";
  if (!out) throw IoError("store write failed");
}

void save_store_file(const NormStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write store '" + path + "'");
  save_store(store, out);
}

NormStore load_store(std::istream& in) {
  NormStore store;
  std::size_t line_no = 0;
  std::string rest;

  expect_line(in, line_no, kStoreMagic, rest);
  if (!rest.empty()) throw ParseError("unsupported store version", line_no);
  expect_line(in, line_no, "#P", rest);
  store.document_count = static_cast<int>(parse_real(rest, line_no));
  if (store.document_count <= 0) throw ParseError("bad document count", line_no);
  expect_line(in, line_no, "#CNOUN", rest);
  store.c_noun = parse_real(rest, line_no);
  expect_line(in, line_no, "#CVERB", rest);
  store.c_verb = parse_real(rest, line_no);
  expect_line(in, line_no, "#FINGERPRINT", rest);
  {
    std::size_t used = 0;
    try {
      store.fingerprint = std::stoull(rest, &used, 16);
    } catch (const std::exception&) {
      throw ParseError("bad fingerprint", line_no);
    }
    if (used != rest.size()) throw ParseError("bad fingerprint", line_no);
  }
  expect_line(in, line_no, "#IDF_NOUN", rest);
  if (!rest.empty()) throw ParseError("unexpected text after #IDF_NOUN", line_no);

  store.idf_noun.kind = WordKind::Noun;
  store.idf_verb.kind = WordKind::Verb;
  store.idf_noun.document_count = store.idf_verb.document_count =
      store.document_count;
  store.idf_noun.threshold = store.c_noun;
  store.idf_verb.threshold = store.c_verb;

  enum Section { IdfNoun, IdfVerb, Ann, Anv } section = IdfNoun;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "#IDF_VERB") { section = IdfVerb; continue; }
    if (line == "#ANN") {
      if (section != IdfVerb) throw ParseError("sections out of order", line_no);
      section = Ann;
      continue;
    }
    if (line == "#ANV") {
      if (section != Ann) throw ParseError("sections out of order", line_no);
      section = Anv;
      continue;
    }
    if (line.front() == '#')
      throw ParseError("unknown section '" + line + "'", line_no);

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab = line.find('\t'); tab != std::string::npos;
         tab = line.find('\t', start)) {
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));

    if (section == IdfNoun || section == IdfVerb) {
      if (fields.size() != 2)
        throw ParseError("expected word<TAB>value", line_no);
      double value = parse_real(fields[1], line_no);
      if (value < 0.0) throw ParseError("negative IDF value", line_no);
      auto& table = section == IdfNoun ? store.idf_noun : store.idf_verb;
      if (!table.values.emplace(fields[0], value).second)
        throw ParseError("duplicate IDF entry '" + fields[0] + "'", line_no);
    } else {
      if (fields.size() != 3)
        throw ParseError("expected wordA<TAB>wordB<TAB>value", line_no);
      double value = parse_real(fields[2], line_no);
      if (value < 0.0) throw ParseError("negative norm value", line_no);
      if (value == 0.0) throw ParseError("zero-strength pair must be omitted", line_no);
      auto& map = section == Ann ? store.ann : store.anv;
      PairKey key{fields[0], fields[1]};
      if (section == Ann && !(key.first < key.second))
        throw ParseError("noun pair not in canonical order", line_no);
      if (!map.emplace(std::move(key), value).second)
        throw ParseError("duplicate pair entry", line_no);
    }
  }
  if (section != Anv) throw ParseError("truncated store", line_no);
  return store;
}

NormStore load_store_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open store '" + path + "'");
  return load_store(in);
}

}  // namespace topicnorms
