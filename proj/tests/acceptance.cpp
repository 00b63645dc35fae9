// Acceptance suite. Runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Usage:
//   acceptance <path-to-topicnorms-cli> <fixtures-dir>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracle.hpp"
#include "topicnorms/corpus.hpp"
#include "topicnorms/eval.hpp"
#include "topicnorms/norms.hpp"
#include "topicnorms/topics.hpp"
#include "topicnorms/weights.hpp"

namespace fs = std::filesystem;
using namespace topicnorms;

namespace {

std::string g_cli;
fs::path g_fixtures;
fs::path g_work;
int g_failed_criteria = 0;

struct Criterion {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
};

void report(int number, const std::string& name, const Criterion& criterion) {
  if (criterion.ok) {
    std::cout << "PASS criterion " << number << ": " << name << "\n";
  } else {
    ++g_failed_criteria;
    std::cout << "FAIL criterion " << number << ": " << name << " ["
              << criterion.detail << "]\n";
  }
}

bool close_rel(double a, double b, double tolerance) {
  double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return std::fabs(a - b) <= tolerance * scale;
}

Corpus load_fixture(const std::string& name) {
  return parse_corpus_file((g_fixtures / name).string());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_cli(const std::string& args) {
  std::string command = g_cli + " " + args + " > /dev/null 2> /dev/null";
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::vector<std::string> kTrainingFixtures = {
    "gospel.corpus", "mixed.corpus", "dense.corpus"};
const std::vector<std::string> kAllFixtures = {
    "gospel.corpus", "mixed.corpus", "dense.corpus", "score.corpus",
    "czero.corpus"};

// 1. train output matches the brute-force enumeration to 1e-9, under 1 s.
void criterion_1() {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  for (const auto& name : kTrainingFixtures) {
    Corpus corpus = load_fixture(name);
    c.require(corpus.documents.size() <= 5, name + ": fixture too large");
    for (const auto& doc : corpus.documents) {
      long tokens = 0;
      for (const auto& p : doc.paragraphs)
        for (const auto& s : p.sentences) tokens += s.tokens.size();
      c.require(tokens <= 50, name + ": document over 50 tokens");
    }

    NormStore store = train(corpus);
    oracle::Norms expected = oracle::train(corpus, 0.77, 2.46);
    c.require(store.ann.size() == expected.ann.size(),
              name + ": ann key sets differ");
    c.require(store.anv.size() == expected.anv.size(),
              name + ": anv key sets differ");
    for (const auto& [key, value] : expected.ann)
      c.require(close_rel(store.lookup_ann(key.first, key.second), value, 1e-9),
                name + ": ann value off for " + key.first + "/" + key.second);
    for (const auto& [key, value] : expected.anv)
      c.require(close_rel(store.lookup_anv(key.first, key.second), value, 1e-9),
                name + ": anv value off for " + key.first + "/" + key.second);
    auto idf_n = oracle::idf(corpus, WordKind::Noun, 0.77);
    for (const auto& [base, value] : idf_n)
      c.require(close_rel(store.idf_noun.value_of(base), value, 1e-9),
                name + ": noun idf off for " + base);
    auto idf_v = oracle::idf(corpus, WordKind::Verb, 2.46);
    for (const auto& [base, value] : idf_v)
      c.require(close_rel(store.idf_verb.value_of(base), value, 1e-9),
                name + ": verb idf off for " + base);
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  c.require(elapsed < std::chrono::seconds(1), "took 1 s or longer");
  report(1, "training matches brute-force enumeration (3 fixtures, 1e-9, <1s)",
         c);
}

// 2. identify scores match the exhaustive recomputation to 1e-9, under 1 s.
void criterion_2() {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  InterpolationWeights weights{0.675844};
  for (const auto& name : kAllFixtures) {
    if (name == "czero.corpus") continue;  // no verbs in the held-out doc
    Corpus corpus = load_fixture(name);
    NormStore store = train(corpus);
    for (const auto& doc : corpus.documents) {
      for (const auto& paragraph : doc.paragraphs) {
        c.require(paragraph.distinct_nouns <= 6, name + ": >6 nouns");
        c.require(paragraph.distinct_verbs <= 4, name + ": >4 verbs");
        TopicResult got = identify_topics(paragraph, store, weights, 0.2);
        oracle::ParagraphExpectation want =
            oracle::score(paragraph, store, weights.pn, 0.2);

        std::size_t occurrence_count = 0;
        for (const auto& candidate : got.candidates)
          occurrence_count += candidate.occurrences.size();
        c.require(occurrence_count == want.occurrences.size(),
                  name + ": occurrence counts differ");
        for (const auto& candidate : got.candidates) {
          for (const auto& occurrence : candidate.occurrences) {
            const oracle::OccurrenceExpectation* match = nullptr;
            for (const auto& e : want.occurrences)
              if (e.cardinal == occurrence.cardinal) match = &e;
            c.require(match != nullptr, name + ": missing occurrence");
            if (!match) continue;
            c.require(close_rel(occurrence.csnn, match->csnn, 1e-9),
                      name + ": csnn off");
            c.require(close_rel(occurrence.csnv, match->csnv, 1e-9),
                      name + ": csnv off");
            c.require(close_rel(occurrence.cs, match->cs, 1e-9),
                      name + ": cs off");
          }
        }
        c.require(got.candidates.size() == want.candidates.size(),
                  name + ": candidate counts differ");
        for (std::size_t i = 0; i < got.candidates.size(); ++i) {
          c.require(got.candidates[i].base_form == want.candidates[i].base,
                    name + ": ranking differs");
          c.require(
              close_rel(got.candidates[i].ncs, want.candidates[i].ncs, 1e-9),
              name + ": ncs off");
        }
        c.require(got.topic_set == want.topic_set, name + ": topic set differs");
      }
    }
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  c.require(elapsed < std::chrono::seconds(1), "took 1 s or longer");
  report(2, "scoring matches exhaustive recomputation (1e-9, <1s)", c);
}

// 3. merge_ncs equals 1 - prod(1 - cs) to 1e-12 on 1000 random lists, is
// monotone under appends, and stays in [0,1].
void criterion_3() {
  Criterion c;
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> length(1, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> values(length(rng));
    for (auto& v : values) v = unit(rng);
    double merged = merge_ncs(values);
    double survival = 1.0;
    for (double v : values) survival *= 1.0 - v;
    c.require(std::fabs(merged - (1.0 - survival)) <= 1e-12,
              "closed form mismatch");
    c.require(merged >= 0.0 && merged <= 1.0, "outside [0,1]");
    values.push_back(unit(rng));
    c.require(merge_ncs(values) >= merged, "append decreased the merge");
  }
  report(3, "NCS recursion equals closed form (1000 lists, 1e-12)", c);
}

// 4. scaling every norm by 7.3 leaves all rank permutations identical.
void criterion_4() {
  Criterion c;
  for (const auto& name : kAllFixtures) {
    Corpus corpus = load_fixture(name);
    NormStore store = train(corpus);
    NormStore scaled = store;
    for (auto& [key, value] : scaled.ann) value *= 7.3;
    for (auto& [key, value] : scaled.anv) value *= 7.3;
    for (const auto& doc : corpus.documents) {
      for (const auto& paragraph : doc.paragraphs) {
        TopicResult a = identify_topics(paragraph, store, {0.675844}, 0.2);
        TopicResult b = identify_topics(paragraph, scaled, {0.675844}, 0.2);
        c.require(a.candidates.size() == b.candidates.size(),
                  name + ": candidate counts differ");
        for (std::size_t i = 0; i < a.candidates.size(); ++i)
          c.require(a.candidates[i].base_form == b.candidates[i].base_form,
                    name + ": permutation changed");
      }
    }
  }
  report(4, "candidate ranking is invariant under scaling norms by 7.3", c);
}

// 5. weight estimation: pn+pv stays exactly 1, the no-verb-evidence fixture
// converges to 1 within 1e-6 in at most 200 iterations, and symmetric
// evidence stays at 0.5.
void criterion_5() {
  Criterion c;

  Corpus czero = load_fixture("czero.corpus");
  auto [train_part, heldout] = split_corpus(czero, 3, 1);
  WeightEstimate estimate = estimate_weights(train(train_part), heldout);
  c.require(estimate.converged, "czero did not converge");
  c.require(estimate.iterations <= 200, "more than 200 iterations");
  c.require(std::fabs(estimate.weights.pn - 1.0) < 1e-6,
            "pn did not reach 1");
  for (double pn : estimate.trajectory) {
    InterpolationWeights w{pn};
    c.require(w.pn + w.pv() == 1.0, "pn + pv drifted from 1");
    c.require(pn >= 0.0 && pn <= 1.0, "pn left [0,1]");
  }

  // symmetric fixture: per-paragraph normalization maps every occurrence to
  // csnn' = csnv' = 1, so the update has its fixed point at the start
  Corpus symmetric_heldout = [] {
    std::istringstream in("#DOC h\na_NN v_VB b_NN w_VB\n");
    return parse_corpus(in);
  }();
  NormStore symmetric_store;
  symmetric_store.document_count = 1;
  symmetric_store.ann[{"a", "b"}] = 4.0;
  symmetric_store.anv[{"a", "v"}] = 1.0;
  symmetric_store.anv[{"a", "w"}] = 3.0;
  symmetric_store.anv[{"b", "v"}] = 1.0;
  symmetric_store.anv[{"b", "w"}] = 1.0;
  WeightEstimate fixed = estimate_weights(symmetric_store, symmetric_heldout);
  c.require(fixed.converged, "symmetric fixture did not converge");
  c.require(fixed.weights.pn == 0.5, "pn moved away from 0.5");
  for (double pn : fixed.trajectory)
    c.require(pn == 0.5, "trajectory left 0.5");

  report(5, "weight estimation (pn+pv=1; no-verb fixture -> 1; symmetric stays 0.5)",
         c);
}

// 6. byte-identical outputs across runs and across thread counts.
void criterion_6() {
  Criterion c;

  for (const auto& name : kAllFixtures) {
    Corpus corpus = load_fixture(name);
    std::ostringstream a, b, rerun;
    save_store(train(corpus, 0.77, 2.46, 1), a);
    save_store(train(corpus, 0.77, 2.46, 8), b);
    save_store(train(corpus, 0.77, 2.46, 1), rerun);
    c.require(a.str() == b.str(), name + ": store differs across threads");
    c.require(a.str() == rerun.str(), name + ": store differs across runs");
  }

  // through the CLI, on the fixtures large enough to split
  for (const std::string name : {"gospel.corpus", "mixed.corpus",
                                 "czero.corpus"}) {
    fs::path corpus = g_fixtures / name;
    fs::path store1 = g_work / (name + ".t1.norms");
    fs::path store8 = g_work / (name + ".t8.norms");
    bool ok1 = run_cli("train " + corpus.string() + " " + store1.string() +
                       " --threads 1") == 0;
    bool ok8 = run_cli("train " + corpus.string() + " " + store8.string() +
                       " --threads 8") == 0;
    c.require(ok1 && ok8, name + ": cli train failed");
    c.require(slurp(store1) == slurp(store8),
              name + ": cli store differs across threads");
    c.require(slurp(store1.string() + ".weights") ==
                  slurp(store8.string() + ".weights"),
              name + ": cli weights differ across threads");
  }

  fs::path store = g_work / "gospel.corpus.t1.norms";
  fs::path report1 = g_work / "report1.txt";
  fs::path report2 = g_work / "report2.txt";
  std::string common = "evaluate " + (g_fixtures / "gospel.corpus").string() +
                       " " + store.string() + " " + store.string() +
                       ".weights " + (g_fixtures / "gospel.gold").string() +
                       " --lemmas " + (g_fixtures / "lemmas.tsv").string();
  bool e1 = run_cli(common + " --threads 1 --out " + report1.string()) == 0;
  std::error_code rename_error;
  fs::rename(g_work / "figure1.csv", g_work / "figure1.a.csv", rename_error);
  fs::rename(g_work / "figure2.csv", g_work / "figure2.a.csv", rename_error);
  bool e2 = run_cli(common + " --threads 8 --out " + report2.string()) == 0;
  c.require(e1 && e2, "cli evaluate failed");
  c.require(slurp(report1) == slurp(report2),
            "evaluate reports differ across threads");
  c.require(slurp(g_work / "figure1.a.csv") == slurp(g_work / "figure1.csv"),
            "figure1.csv differs across runs");
  c.require(slurp(g_work / "figure2.a.csv") == slurp(g_work / "figure2.csv"),
            "figure2.csv differs across runs");

  report(6, "train/evaluate outputs byte-identical across runs and threads", c);
}

// 7. the six metric rows on the hand-built two-paragraph fixture.
void criterion_7() {
  Criterion c;
  std::istringstream text(
      "#DOC e01\n"
      "alpha_NN beta_NN gamma_NN alpha_NN run_VB\n"
      "\n"
      "alpha_NN delta_NN eps_NN zeta_NN eta_NN\n");
  Corpus corpus = parse_corpus(text);
  NormStore store;
  store.document_count = 1;
  store.ann[{"alpha", "beta"}] = 8.0;
  store.ann[{"alpha", "gamma"}] = 4.0;
  store.ann[{"beta", "gamma"}] = 2.0;
  store.ann[{"alpha", "delta"}] = 6.0;
  store.anv[{"alpha", "run"}] = 10.0;
  InterpolationWeights weights{0.5};

  const Document& doc = corpus.documents[0];
  std::vector<TopicResult> results;
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    TopicResult result = identify_topics(doc.paragraphs[p], store, weights, 0.2);
    result.doc_id = "e01";
    result.paragraph_index = static_cast<int>(p) + 1;
    results.push_back(std::move(result));
  }
  ShiftReport shift = topic_shift(doc, store, weights, 0.2);

  std::vector<GoldAnnotation> golds(2);
  golds[0].doc_id = "e01";
  golds[0].paragraph_index = 1;
  golds[0].topic = "alpha";
  golds[1].doc_id = "e01";
  golds[1].paragraph_index = 2;
  golds[1].topic = "delta";

  MetricsTable table = metrics(doc, results, &shift, golds);
  const double expected[6][2] = {
      {4.0, 1.0},          // candidates per paragraph: 3 and 5
      {1.5, 0.5},          // assumed-topic ranks: 1 and 2
      {1.125, 1.0 / 6.0},  // 9 tokens / 8 candidates; ratios 4/3 and 1
      {1.5, 0.5},          // assumed-topic occurrences: 2 and 1
      {1.5, 0.5},          // computed-topic (alpha) occurrences: 2 and 1
      {1.0, 0.0},          // previous topic alpha holds rank 1
  };
  for (int r = 0; r < 6; ++r) {
    c.require(table.rows[r].present, "row absent");
    c.require(std::fabs(table.rows[r].mean - expected[r][0]) <= 1e-12,
              "row " + std::to_string(r + 1) + " mean off");
    c.require(std::fabs(table.rows[r].stdev - expected[r][1]) <= 1e-12,
              "row " + std::to_string(r + 1) + " std off");
  }
  c.require(classify(results[0], golds[0]) == Outcome::Correct,
            "first paragraph should be correct");
  c.require(classify(results[1], golds[1]) == Outcome::Error,
            "second paragraph should be an error");
  report(7, "six metric rows match hand-computed values exactly", c);
}

// 8. report formatting: 61.07% for 80 of 131, and the mocked D01 column.
void criterion_8() {
  Criterion c;
  TextSummary d01;
  d01.text_id = "D01";
  d01.correct = 12;
  d01.error = 6;
  d01.undecidable = 0;
  d01.metrics.rows[0] = {true, 21.59, 9.96};
  d01.metrics.rows[1] = {true, 4.56, 5.98};
  TextSummary remainder;
  remainder.text_id = "rest";
  remainder.correct = 68;
  remainder.error = 25;
  remainder.undecidable = 20;

  EvalReport report_both = summarize({d01, remainder});
  c.require(report_both.correct == 80 &&
                report_both.correct + report_both.error +
                        report_both.undecidable == 131,
            "mocked counts do not add up");
  c.require(report_both.table_text.find("61.07%") != std::string::npos,
            "rate not printed as 61.07%");
  c.require(report_both.table_text.find("(80 of 131 paragraphs)") !=
                std::string::npos,
            "80 of 131 missing");

  EvalReport report_d01 = summarize({d01});
  std::istringstream lines(report_d01.table_text);
  std::string line, plus_row, minus_row, question_row;
  while (std::getline(lines, line)) {
    if (line.rfind("(+)", 0) == 0) plus_row = line;
    if (line.rfind("(-)", 0) == 0) minus_row = line;
    if (line.rfind("(?)", 0) == 0) question_row = line;
  }
  auto cell = [](const std::string& row) {
    std::istringstream fields(row);
    std::string label, value;
    fields >> label >> value;
    return value;
  };
  c.require(cell(plus_row) == "12", "(+) is not 12");
  c.require(cell(minus_row) == "6", "(-) is not 6");
  c.require(cell(question_row) == "0", "(?) is not 0");
  c.require(report_d01.table_text.find("(21.59, 9.96)") != std::string::npos,
            "row 1 cell missing");
  c.require(report_d01.table_text.find("(4.56, 5.98)") != std::string::npos,
            "row 2 cell missing");
  c.require(report_d01.figure1_csv.find("D01,12,6,0") != std::string::npos,
            "figure1 row missing");
  report(8, "report prints 61.07% for 80/131 and the D01 column as 12/6/0", c);
}

// 9. save -> load -> save is byte-identical on every fixture store.
void criterion_9() {
  Criterion c;
  std::vector<NormStore> stores;
  for (const auto& name : kAllFixtures) stores.push_back(train(load_fixture(name)));
  NormStore empty;
  empty.document_count = 1;
  stores.push_back(empty);
  NormStore single;
  single.document_count = 1;
  single.ann[{"a", "b"}] = 4.0;
  single.idf_noun.values["a"] = 2.0;
  single.idf_noun.values["b"] = 4.0;
  stores.push_back(single);

  for (std::size_t i = 0; i < stores.size(); ++i) {
    std::ostringstream first;
    save_store(stores[i], first);
    std::istringstream back(first.str());
    NormStore loaded = load_store(back);
    std::ostringstream second;
    save_store(loaded, second);
    c.require(first.str() == second.str(),
              "store " + std::to_string(i) + " not byte-identical");
  }
  report(9, "store save/load/save round-trip is byte-identical", c);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli> <fixtures-dir>\n";
    return 2;
  }
  g_cli = fs::absolute(argv[1]).string();
  g_fixtures = fs::absolute(argv[2]);
  g_work = fs::temp_directory_path() / "topicnorms-acceptance";
  fs::remove_all(g_work);
  fs::create_directories(g_work);
  fs::current_path(g_work);

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();

  if (g_failed_criteria == 0) {
    std::cout << "acceptance: all 9 criteria passed\n";
    return 0;
  }
  std::cerr << "acceptance: " << g_failed_criteria << " criterion(s) failed\n";
  return 1;
}
