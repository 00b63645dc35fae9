#include "topicnorms.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "topicnorms/corpus.hpp"
#include "topicnorms/errors.hpp"
#include "topicnorms/eval.hpp"
#include "topicnorms/norms.hpp"
#include "topicnorms/topics.hpp"
#include "topicnorms/weights.hpp"

using namespace topicnorms;

extern "C" {

struct tn_corpus {
  Corpus rep;
};

struct tn_store {
  NormStore rep;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

tn_status fail(tn_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
tn_status guarded(Fn&& body) {
  try {
    body();
    return TN_OK;
  } catch (const IoError& e) {
    return fail(TN_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(TN_ERR_INVALID, e.what());
  }
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.data(), text.size() + 1);
  return out;
}

InterpolationWeights unwrap(const tn_weights* weights) {
  if (!weights) throw InvalidArgument("weights handle is null");
  if (weights->pn < 0.0 || weights->pn > 1.0)
    throw InvalidArgument("pn outside [0,1]");
  return InterpolationWeights{weights->pn};
}

Corpus parse_with_lemmas(std::istream& in, const char* lemma_path) {
  if (lemma_path && *lemma_path) {
    LemmaMap lemmas = LemmaMap::load_file(lemma_path);
    return parse_corpus(in, TagPolicy{}, &lemmas);
  }
  return parse_corpus(in);
}

}  // namespace

extern "C" {

const char* tn_version(void) { return "1.0.0"; }

const char* tn_last_error(void) { return g_last_error.c_str(); }

tn_status tn_corpus_parse_file(const char* path, const char* lemma_path,
                               tn_corpus** out) {
  return guarded([&] {
    if (!path || !out) throw InvalidArgument("null argument");
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open corpus '") + path + "'");
    *out = new tn_corpus{parse_with_lemmas(in, lemma_path)};
  });
}

tn_status tn_corpus_parse_buffer(const char* data, size_t size,
                                 const char* lemma_path, tn_corpus** out) {
  return guarded([&] {
    if (!data || !out) throw InvalidArgument("null argument");
    std::istringstream in(std::string(data, size));
    *out = new tn_corpus{parse_with_lemmas(in, lemma_path)};
  });
}

void tn_corpus_free(tn_corpus* corpus) { delete corpus; }

tn_status tn_corpus_get_stats(const tn_corpus* corpus, tn_corpus_stats* out) {
  return guarded([&] {
    if (!corpus || !out) throw InvalidArgument("null argument");
    CorpusStats stats = corpus_stats(corpus->rep);
    out->documents = stats.documents;
    out->paragraphs = stats.paragraphs;
    out->sentences = stats.sentences;
    out->distinct_nouns = stats.distinct_nouns;
    out->distinct_verbs = stats.distinct_verbs;
    out->nn_pairs = stats.nn_pairs;
    out->vn_pairs = stats.vn_pairs;
  });
}

tn_status tn_corpus_split(const tn_corpus* corpus, unsigned train_share,
                          unsigned heldout_share, tn_corpus** train_out,
                          tn_corpus** heldout_out) {
  return guarded([&] {
    if (!corpus || !train_out || !heldout_out)
      throw InvalidArgument("null argument");
    auto [train, heldout] = split_corpus(corpus->rep, train_share, heldout_share);
    *train_out = new tn_corpus{std::move(train)};
    *heldout_out = new tn_corpus{std::move(heldout)};
  });
}

tn_status tn_train(const tn_corpus* corpus, double c_noun, double c_verb,
                   int threads, tn_store** out) {
  return guarded([&] {
    if (!corpus || !out) throw InvalidArgument("null argument");
    *out = new tn_store{train(corpus->rep, c_noun, c_verb, threads)};
  });
}

tn_status tn_store_save(const tn_store* store, const char* path) {
  return guarded([&] {
    if (!store || !path) throw InvalidArgument("null argument");
    save_store_file(store->rep, path);
  });
}

tn_status tn_store_load(const char* path, tn_store** out) {
  return guarded([&] {
    if (!path || !out) throw InvalidArgument("null argument");
    *out = new tn_store{load_store_file(path)};
  });
}

void tn_store_free(tn_store* store) { delete store; }

double tn_lookup_ann(const tn_store* store, const char* noun_a,
                     const char* noun_b) {
  if (!store || !noun_a || !noun_b) return 0.0;
  return store->rep.lookup_ann(noun_a, noun_b);
}

double tn_lookup_anv(const tn_store* store, const char* noun,
                     const char* verb) {
  if (!store || !noun || !verb) return 0.0;
  return store->rep.lookup_anv(noun, verb);
}

tn_status tn_estimate_weights(const tn_store* store, const tn_corpus* heldout,
                              double init_pn, double tolerance,
                              int max_iterations, tn_weights* out) {
  return guarded([&] {
    if (!store || !heldout || !out) throw InvalidArgument("null argument");
    WeightConfig config;
    config.init_pn = init_pn;
    config.tolerance = tolerance;
    config.max_iterations = max_iterations;
    WeightEstimate estimate = estimate_weights(store->rep, heldout->rep, config);
    out->pn = estimate.weights.pn;
    out->pv = estimate.weights.pv();
    out->iterations = estimate.iterations;
    out->converged = estimate.converged ? 1 : 0;
  });
}

tn_status tn_weights_save(const tn_weights* weights, const char* path) {
  return guarded([&] {
    if (!weights || !path) throw InvalidArgument("null argument");
    save_weights_file(unwrap(weights), path);
  });
}

tn_status tn_weights_load(const char* path, tn_weights* out) {
  return guarded([&] {
    if (!path || !out) throw InvalidArgument("null argument");
    InterpolationWeights weights = load_weights_file(path);
    out->pn = weights.pn;
    out->pv = weights.pv();
    out->iterations = 0;
    out->converged = 1;
  });
}

tn_status tn_identify(const tn_corpus* corpus, const tn_store* store,
                      const tn_weights* weights, double fraction, int threads,
                      char** tsv_out) {
  return guarded([&] {
    if (!corpus || !store || !tsv_out) throw InvalidArgument("null argument");
    auto results = identify_corpus(corpus->rep, store->rep, unwrap(weights),
                                   fraction, threads);
    std::ostringstream out;
    write_topics_tsv(results, out);
    *tsv_out = copy_string(out.str());
  });
}

tn_status tn_shift(const tn_corpus* corpus, const tn_store* store,
                   const tn_weights* weights, double fraction,
                   char** tsv_out) {
  return guarded([&] {
    if (!corpus || !store || !tsv_out) throw InvalidArgument("null argument");
    InterpolationWeights w = unwrap(weights);
    std::vector<ShiftReport> reports;
    for (const auto& doc : corpus->rep.documents)
      if (doc.paragraphs.size() >= 2)
        reports.push_back(topic_shift(doc, store->rep, w, fraction));
    if (reports.empty()) throw InvalidArgument("nothing to compare");
    std::ostringstream out;
    write_shift_tsv(reports, out);
    *tsv_out = copy_string(out.str());
  });
}

tn_status tn_evaluate(const tn_corpus* corpus, const tn_store* store,
                      const tn_weights* weights, const char* gold_path,
                      double fraction, int threads, char** report_out,
                      char** figure1_csv_out, char** figure2_csv_out) {
  return guarded([&] {
    if (!corpus || !store || !gold_path || !report_out || !figure1_csv_out ||
        !figure2_csv_out)
      throw InvalidArgument("null argument");
    auto golds = load_gold_file(gold_path);
    EvalReport report = evaluate_corpus(corpus->rep, store->rep,
                                        unwrap(weights), fraction, golds,
                                        threads);
    *report_out = copy_string(report.table_text);
    *figure1_csv_out = copy_string(report.figure1_csv);
    *figure2_csv_out = copy_string(report.figure2_csv);
  });
}

void tn_string_free(char* s) { delete[] s; }

}  // extern "C"
