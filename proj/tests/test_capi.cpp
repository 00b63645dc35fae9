// Exercises the shared-library surface through the C header alone.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <fstream>
#include <string>

#include "topicnorms.h"

namespace {

const char kCorpus[] =
    "#DOC c1\n"
    "dogs_NNS chase_VB cats_NNS\n"
    "\n"
    "a_AT dog_NN runs_VBZ\n"
    "#DOC c2\n"
    "birds_NNS sleep_VB\n"
    "#DOC c3\n"
    "birds_NNS fly_VB\n"
    "#DOC c4\n"
    "cats_NNS dogs_NNS\n";

struct ParsedCorpus {
  tn_corpus* ptr = nullptr;
  ParsedCorpus() {
    REQUIRE(tn_corpus_parse_buffer(kCorpus, sizeof(kCorpus) - 1, nullptr,
                                   &ptr) == TN_OK);
  }
  ~ParsedCorpus() { tn_corpus_free(ptr); }
};

std::string temp_path(const char* name) {
  return std::string("capi_") + name;
}

}  // namespace

TEST_CASE("corpus parsing and stats") {
  ParsedCorpus corpus;
  tn_corpus_stats stats;
  REQUIRE(tn_corpus_get_stats(corpus.ptr, &stats) == TN_OK);
  CHECK(stats.documents == 4);
  CHECK(stats.paragraphs == 5);
  CHECK(stats.distinct_nouns == 3);
  CHECK(stats.distinct_verbs == 4);

  tn_corpus* bad = nullptr;
  const char malformed[] = "#DOC x\nword\n";
  CHECK(tn_corpus_parse_buffer(malformed, sizeof(malformed) - 1, nullptr,
                               &bad) == TN_ERR_INVALID);
  CHECK(std::strlen(tn_last_error()) > 0);
  CHECK(tn_corpus_parse_file("does-not-exist.corpus", nullptr, &bad) ==
        TN_ERR_IO);
  CHECK(tn_corpus_parse_buffer(nullptr, 0, nullptr, &bad) == TN_ERR_INVALID);
}

TEST_CASE("training, persistence and lookups") {
  ParsedCorpus corpus;
  tn_store* store = nullptr;
  REQUIRE(tn_train(corpus.ptr, 0.77, 2.46, 2, &store) == TN_OK);

  double ab = tn_lookup_ann(store, "cat", "dog");
  CHECK(ab > 0.0);
  CHECK(tn_lookup_ann(store, "dog", "cat") == ab);
  CHECK(tn_lookup_ann(store, "dog", "unseen") == 0.0);
  CHECK(tn_lookup_anv(store, "dog", "chase") > 0.0);

  std::string path = temp_path("store.norms");
  REQUIRE(tn_store_save(store, path.c_str()) == TN_OK);
  tn_store* loaded = nullptr;
  REQUIRE(tn_store_load(path.c_str(), &loaded) == TN_OK);
  CHECK(tn_lookup_ann(loaded, "cat", "dog") == ab);
  tn_store_free(loaded);
  tn_store_free(store);

  tn_store* missing = nullptr;
  CHECK(tn_store_load("does-not-exist.norms", &missing) == TN_ERR_IO);
}

TEST_CASE("weights estimation through the C surface") {
  ParsedCorpus corpus;
  tn_corpus* train_part = nullptr;
  tn_corpus* heldout = nullptr;
  CHECK(tn_corpus_split(corpus.ptr, 0, 1, &train_part, &heldout) ==
        TN_ERR_INVALID);
  REQUIRE(tn_corpus_split(corpus.ptr, 3, 1, &train_part, &heldout) == TN_OK);

  tn_store* store = nullptr;
  REQUIRE(tn_train(train_part, 0.77, 2.46, 1, &store) == TN_OK);
  tn_weights weights;
  REQUIRE(tn_estimate_weights(store, heldout, 0.5, 1e-6, 200, &weights) ==
          TN_OK);
  CHECK(weights.pn + weights.pv == 1.0);
  CHECK(weights.converged == 1);
  // heldout c4 has nouns only, so all the evidence is noun-noun
  CHECK(weights.pn == doctest::Approx(1.0));

  std::string path = temp_path("weights");
  REQUIRE(tn_weights_save(&weights, path.c_str()) == TN_OK);
  tn_weights loaded;
  REQUIRE(tn_weights_load(path.c_str(), &loaded) == TN_OK);
  CHECK(loaded.pn == doctest::Approx(weights.pn));

  tn_store_free(store);
  tn_corpus_free(train_part);
  tn_corpus_free(heldout);
}

TEST_CASE("identification, shift and evaluation strings") {
  ParsedCorpus corpus;
  tn_store* store = nullptr;
  REQUIRE(tn_train(corpus.ptr, 0.77, 2.46, 1, &store) == TN_OK);
  tn_weights weights{0.675844, 0.324156, 0, 1};

  char* tsv = nullptr;
  REQUIRE(tn_identify(corpus.ptr, store, &weights, 0.2, 1, &tsv) == TN_OK);
  std::string identify_out(tsv);
  tn_string_free(tsv);
  CHECK(identify_out.find("c1\t1\t1\t") != std::string::npos);

  char* shift_tsv = nullptr;
  REQUIRE(tn_shift(corpus.ptr, store, &weights, 0.2, &shift_tsv) == TN_OK);
  std::string shift_out(shift_tsv);
  tn_string_free(shift_tsv);
  CHECK(shift_out.find("c1\t2\t") != std::string::npos);

  std::string gold_path = temp_path("gold.tsv");
  {
    std::ofstream gold(gold_path);
    gold << "c1\t1\tdog\nc2\t1\t?PRONOUN\n";
  }
  char* report = nullptr;
  char* figure1 = nullptr;
  char* figure2 = nullptr;
  REQUIRE(tn_evaluate(corpus.ptr, store, &weights, gold_path.c_str(), 0.2, 1,
                      &report, &figure1, &figure2) == TN_OK);
  CHECK(std::string(report).find("Correct rate:") != std::string::npos);
  CHECK(std::string(figure1).find("c1,") != std::string::npos);
  tn_string_free(report);
  tn_string_free(figure1);
  tn_string_free(figure2);

  SUBCASE("invalid weights are rejected") {
    tn_weights bad{1.5, -0.5, 0, 1};
    char* out = nullptr;
    CHECK(tn_identify(corpus.ptr, store, &bad, 0.2, 1, &out) ==
          TN_ERR_INVALID);
  }

  tn_store_free(store);
}

TEST_CASE("null arguments are invalid, not fatal") {
  CHECK(tn_corpus_parse_file(nullptr, nullptr, nullptr) == TN_ERR_INVALID);
  CHECK(tn_train(nullptr, 0.77, 2.46, 1, nullptr) == TN_ERR_INVALID);
  CHECK(tn_store_save(nullptr, "x") == TN_ERR_INVALID);
  CHECK(tn_lookup_ann(nullptr, "a", "b") == 0.0);
  tn_corpus_free(nullptr);
  tn_store_free(nullptr);
  tn_string_free(nullptr);
  CHECK(std::string(tn_version()) == "1.0.0");
}
