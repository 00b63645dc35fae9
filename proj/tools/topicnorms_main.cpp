// Command-line front end over the shared library's C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "topicnorms.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

int report_failure(tn_status status) {
  std::cerr << "error: " << tn_last_error() << "\n";
  return status == TN_ERR_IO ? kExitIo : kExitInvalid;
}

struct CorpusHandle {
  tn_corpus* ptr = nullptr;
  ~CorpusHandle() { tn_corpus_free(ptr); }
};

struct StoreHandle {
  tn_store* ptr = nullptr;
  ~StoreHandle() { tn_store_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { tn_string_free(ptr); }
};

bool parse_ratio(const std::string& text, unsigned& num, unsigned& den) {
  auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    std::size_t used_a = 0, used_b = 0;
    int a = std::stoi(text.substr(0, colon), &used_a);
    int b = std::stoi(text.substr(colon + 1), &used_b);
    if (used_a != colon || used_b != text.size() - colon - 1) return false;
    if (a <= 0 || b <= 0) return false;
    num = static_cast<unsigned>(a);
    den = static_cast<unsigned>(b);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void print_stats(const tn_corpus_stats& stats) {
  std::printf("Statistics\n");
  std::printf("  Documents  %ld\n", stats.documents);
  std::printf("  Paragraphs %ld\n", stats.paragraphs);
  std::printf("  Sentences  %ld\n", stats.sentences);
  std::printf("  Nouns      %ld\n", stats.distinct_nouns);
  std::printf("  Verbs      %ld\n", stats.distinct_verbs);
  std::printf("  N-N Pairs  %lld\n", stats.nn_pairs);
  std::printf("  V-N Pairs  %lld\n", stats.vn_pairs);
}

int write_output(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitIo;
  }
  out << text;
  return out ? kExitOk : kExitIo;
}

const char* lemma_arg(const std::string& lemmas) {
  return lemmas.empty() ? nullptr : lemmas.c_str();
}

int run_train(const std::string& corpus_path, const std::string& store_path,
              const std::string& lemmas, double c_noun, double c_verb,
              const std::string& split, double tolerance, int threads) {
  unsigned num = 3, den = 1;
  if (!parse_ratio(split, num, den)) {
    std::cerr << "error: bad --split '" << split << "' (expected N:M)\n";
    return kExitInvalid;
  }

  CorpusHandle corpus;
  tn_status status =
      tn_corpus_parse_file(corpus_path.c_str(), lemma_arg(lemmas), &corpus.ptr);
  if (status != TN_OK) return report_failure(status);

  tn_corpus_stats stats;
  if ((status = tn_corpus_get_stats(corpus.ptr, &stats)) != TN_OK)
    return report_failure(status);
  print_stats(stats);

  StoreHandle store;
  if ((status = tn_train(corpus.ptr, c_noun, c_verb, threads, &store.ptr)) !=
      TN_OK)
    return report_failure(status);

  // Weights come from deleted interpolation: norms retrained on the first
  // part of the split, PN estimated against the held-out remainder.
  CorpusHandle train_part, heldout_part;
  if ((status = tn_corpus_split(corpus.ptr, num, den, &train_part.ptr,
                                &heldout_part.ptr)) != TN_OK)
    return report_failure(status);
  StoreHandle part_store;
  if ((status = tn_train(train_part.ptr, c_noun, c_verb, threads,
                         &part_store.ptr)) != TN_OK)
    return report_failure(status);
  tn_weights weights;
  if ((status = tn_estimate_weights(part_store.ptr, heldout_part.ptr, 0.5,
                                    tolerance, 200, &weights)) != TN_OK)
    return report_failure(status);
  if (!weights.converged)
    std::cerr << "warning: weight estimation did not converge within "
              << weights.iterations << " iterations\n";

  if ((status = tn_store_save(store.ptr, store_path.c_str())) != TN_OK)
    return report_failure(status);
  std::string weights_path = store_path + ".weights";
  if ((status = tn_weights_save(&weights, weights_path.c_str())) != TN_OK)
    return report_failure(status);
  std::printf("PN %.6f PV %.6f (%d iterations%s)\n", weights.pn, weights.pv,
              weights.iterations, weights.converged ? "" : ", not converged");
  return kExitOk;
}

int load_inputs(const std::string& corpus_path, const std::string& store_path,
                const std::string& weights_path, const std::string& lemmas,
                CorpusHandle& corpus, StoreHandle& store, tn_weights& weights) {
  tn_status status =
      tn_corpus_parse_file(corpus_path.c_str(), lemma_arg(lemmas), &corpus.ptr);
  if (status != TN_OK) return report_failure(status);
  if ((status = tn_store_load(store_path.c_str(), &store.ptr)) != TN_OK)
    return report_failure(status);
  if ((status = tn_weights_load(weights_path.c_str(), &weights)) != TN_OK)
    return report_failure(status);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-weighted word-association norms for topic "
               "identification in tagged corpora"};
  app.require_subcommand(1);

  std::string corpus_path, store_path, weights_path, gold_path, out_path;
  std::string lemmas, split = "3:1";
  double c_noun = 0.77, c_verb = 2.46, fraction = 0.2, tolerance = 1e-6;
  int threads = 1;

  auto* train = app.add_subcommand("train", "Train norms and weights");
  train->add_option("corpus", corpus_path, "tagged corpus file")->required();
  train->add_option("store", store_path, "output norm store")->required();
  train->add_option("--cnoun", c_noun, "noun IDF threshold");
  train->add_option("--cverb", c_verb, "verb IDF threshold");
  train->add_option("--split", split, "train:heldout ratio for weights");
  train->add_option("--tolerance", tolerance, "PN convergence tolerance");
  train->add_option("--lemmas", lemmas, "lemma map TSV");
  train->add_option("--threads", threads, "worker threads");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("corpus", corpus_path, "tagged corpus file")->required();
    cmd->add_option("store", store_path, "norm store")->required();
    cmd->add_option("weights", weights_path, "weights file")->required();
    cmd->add_option("--fraction", fraction, "topic-set fraction");
    cmd->add_option("--lemmas", lemmas, "lemma map TSV");
    cmd->add_option("--out", out_path, "write output here instead of stdout");
  };

  auto* identify = app.add_subcommand("identify", "Rank topic candidates");
  add_common(identify);
  identify->add_option("--threads", threads, "worker threads");

  auto* evaluate =
      app.add_subcommand("evaluate", "Score against gold annotations");
  add_common(evaluate);
  evaluate->add_option("gold", gold_path, "gold annotation TSV")->required();
  evaluate->add_option("--threads", threads, "worker threads");

  auto* shift = app.add_subcommand("shift", "Rank previous topics per paragraph");
  add_common(shift);

  auto* stats_cmd = app.add_subcommand("stats", "Print corpus statistics");
  stats_cmd->add_option("corpus", corpus_path, "tagged corpus file")->required();
  stats_cmd->add_option("--lemmas", lemmas, "lemma map TSV");

  CLI11_PARSE(app, argc, argv);

  if (train->parsed())
    return run_train(corpus_path, store_path, lemmas, c_noun, c_verb, split,
                     tolerance, threads);

  if (stats_cmd->parsed()) {
    CorpusHandle corpus;
    tn_status status = tn_corpus_parse_file(corpus_path.c_str(),
                                            lemma_arg(lemmas), &corpus.ptr);
    if (status != TN_OK) return report_failure(status);
    tn_corpus_stats stats;
    if ((status = tn_corpus_get_stats(corpus.ptr, &stats)) != TN_OK)
      return report_failure(status);
    print_stats(stats);
    return kExitOk;
  }

  CorpusHandle corpus;
  StoreHandle store;
  tn_weights weights;
  int rc = load_inputs(corpus_path, store_path, weights_path, lemmas, corpus,
                       store, weights);
  if (rc != kExitOk) return rc;

  if (identify->parsed()) {
    OwnedString tsv;
    tn_status status = tn_identify(corpus.ptr, store.ptr, &weights, fraction,
                                   threads, &tsv.ptr);
    if (status != TN_OK) return report_failure(status);
    return write_output(tsv.ptr, out_path);
  }

  if (shift->parsed()) {
    OwnedString tsv;
    tn_status status =
        tn_shift(corpus.ptr, store.ptr, &weights, fraction, &tsv.ptr);
    if (status != TN_OK) return report_failure(status);
    return write_output(tsv.ptr, out_path);
  }

  // evaluate
  OwnedString report, figure1, figure2;
  tn_status status =
      tn_evaluate(corpus.ptr, store.ptr, &weights, gold_path.c_str(), fraction,
                  threads, &report.ptr, &figure1.ptr, &figure2.ptr);
  if (status != TN_OK) return report_failure(status);

  // Figure CSVs land next to --out when given, in the working directory
  // otherwise.
  std::filesystem::path dir =
      out_path.empty() ? std::filesystem::path(".")
                       : std::filesystem::path(out_path).parent_path();
  if (dir.empty()) dir = ".";
  int figure_rc = write_output(figure1.ptr, (dir / "figure1.csv").string());
  if (figure_rc != kExitOk) return figure_rc;
  figure_rc = write_output(figure2.ptr, (dir / "figure2.csv").string());
  if (figure_rc != kExitOk) return figure_rc;
  return write_output(report.ptr, out_path);
}
