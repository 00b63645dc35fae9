#include "topicnorms/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "topicnorms/errors.hpp"

namespace topicnorms {

namespace {

constexpr const char* kPronounMarker = "?PRONOUN";

MetricRow row_from_samples(const std::vector<double>& samples) {
  MetricRow row;
  if (samples.empty()) return row;
  row.present = true;
  double sum = 0.0;
  for (double s : samples) sum += s;
  row.mean = sum / static_cast<double>(samples.size());
  double var = 0.0;
  for (double s : samples) var += (s - row.mean) * (s - row.mean);
  row.stdev = std::sqrt(var / static_cast<double>(samples.size()));
  return row;
}

long count_noun_tokens(const Paragraph& paragraph) {
  long count = 0;
  for (const auto& sentence : paragraph.sentences)
    for (const auto& token : sentence.tokens)
      if (token.is_noun()) ++count;
  return count;
}

long count_base_occurrences(const Paragraph& paragraph,
                            const std::string& base) {
  long count = 0;
  for (const auto& sentence : paragraph.sentences)
    for (const auto& token : sentence.tokens)
      if (token.is_noun() && token.base_form == base) ++count;
  return count;
}

std::string format_cell(const MetricRow& row) {
  if (!row.present) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.2f, %.2f)", row.mean, row.stdev);
  return buf;
}

std::string to_lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::vector<GoldAnnotation> load_gold(std::istream& in) {
  std::vector<GoldAnnotation> golds;
  std::set<std::pair<std::string, int>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw ParseError("gold entry needs doc<TAB>paragraph<TAB>topic", line_no);
    GoldAnnotation gold;
    gold.doc_id = line.substr(0, t1);
    gold.line = line_no;
    std::string index_str = line.substr(t1 + 1, t2 - t1 - 1);
    std::string topic = line.substr(t2 + 1);
    try {
      std::size_t used = 0;
      gold.paragraph_index = std::stoi(index_str, &used);
      if (used != index_str.size()) throw std::invalid_argument(index_str);
    } catch (const std::exception&) {
      throw ParseError("bad paragraph index '" + index_str + "'", line_no);
    }
    if (gold.doc_id.empty() || gold.paragraph_index < 1 || topic.empty())
      throw ParseError("bad gold entry", line_no);
    if (topic == kPronounMarker)
      gold.pronoun = true;
    else
      gold.topic = to_lower_copy(topic);
    if (!seen.insert({gold.doc_id, gold.paragraph_index}).second)
      throw ParseError("duplicate annotation for " + gold.doc_id + " paragraph " +
                           std::to_string(gold.paragraph_index),
                       line_no);
    golds.push_back(std::move(gold));
  }
  return golds;
}

std::vector<GoldAnnotation> load_gold_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gold file '" + path + "'");
  return load_gold(in);
}

Outcome classify(const TopicResult& result, const GoldAnnotation& gold) {
  if (result.doc_id != gold.doc_id ||
      result.paragraph_index != gold.paragraph_index)
    throw InvalidArgument("result and gold refer to different paragraphs");
  if (gold.pronoun) return Outcome::Undecidable;
  bool member = std::find(result.topic_set.begin(), result.topic_set.end(),
                          gold.topic) != result.topic_set.end();
  return member ? Outcome::Correct : Outcome::Error;
}

MetricsTable metrics(const Document& document,
                     const std::vector<TopicResult>& results,
                     const ShiftReport* shift,
                     const std::vector<GoldAnnotation>& golds) {
  if (results.size() != document.paragraphs.size())
    throw InvalidArgument("one result per paragraph required");
  std::map<int, const GoldAnnotation*> gold_by_index;
  for (const auto& gold : golds) {
    if (gold.doc_id != document.id)
      throw InvalidArgument("gold for a different document");
    gold_by_index[gold.paragraph_index] = &gold;
  }

  std::vector<double> candidates_per_paragraph;   // row 1
  std::vector<double> assumed_topic_ranks;        // row 2
  std::vector<double> frequency_ratios;           // row 3 (per paragraph)
  std::vector<double> assumed_occurrences;        // row 4
  std::vector<double> computed_occurrences;       // row 5
  std::vector<double> previous_topic_ranks;       // row 6
  long total_noun_tokens = 0, total_candidates = 0;

  for (const auto& [index, gold] : gold_by_index) {
    const Paragraph& paragraph = document.paragraphs[index - 1];
    const TopicResult& result = results[index - 1];
    long m = static_cast<long>(result.candidates.size());
    long tokens = count_noun_tokens(paragraph);
    candidates_per_paragraph.push_back(static_cast<double>(m));
    total_noun_tokens += tokens;
    total_candidates += m;
    if (m > 0) {
      frequency_ratios.push_back(static_cast<double>(tokens) /
                                 static_cast<double>(m));
      computed_occurrences.push_back(
          static_cast<double>(result.candidates.front().frequency));
    }
    if (!gold->pronoun) {
      assumed_occurrences.push_back(static_cast<double>(
          count_base_occurrences(paragraph, gold->topic)));
      auto it = std::find_if(
          result.candidates.begin(), result.candidates.end(),
          [&](const CandidateScore& c) { return c.base_form == gold->topic; });
      if (it != result.candidates.end())
        assumed_topic_ranks.push_back(static_cast<double>(it->rank));
    }
  }

  if (shift) {
    for (const auto& paragraph : shift->paragraphs)
      if (!paragraph.topics.empty())
        previous_topic_ranks.push_back(
            static_cast<double>(paragraph.topics.front().rank_in_current));
  }

  MetricsTable table;
  table.rows[0] = row_from_samples(candidates_per_paragraph);
  table.rows[1] = row_from_samples(assumed_topic_ranks);
  table.rows[2] = row_from_samples(frequency_ratios);
  if (table.rows[2].present && total_candidates > 0)
    table.rows[2].mean = static_cast<double>(total_noun_tokens) /
                         static_cast<double>(total_candidates);
  table.rows[3] = row_from_samples(assumed_occurrences);
  table.rows[4] = row_from_samples(computed_occurrences);
  table.rows[5] = row_from_samples(previous_topic_ranks);
  return table;
}

EvalReport summarize(const std::vector<TextSummary>& texts) {
  EvalReport report;
  report.texts = texts;
  for (const auto& text : texts) {
    report.correct += text.correct;
    report.error += text.error;
    report.undecidable += text.undecidable;
  }
  long total = report.correct + report.error + report.undecidable;
  report.correct_rate_percent =
      total > 0 ? 100.0 * static_cast<double>(report.correct) /
                      static_cast<double>(total)
                : 0.0;

  // One column per text: rows (1)-(6), then the (+)/(-)/(?) counts.
  static const char* kLabels[] = {"(1)", "(2)", "(3)", "(4)", "(5)",
                                  "(6)", "(+)", "(-)", "(?)"};
  std::vector<std::vector<std::string>> cells(9);
  std::vector<std::string> headers;
  for (const auto& text : texts) {
    headers.push_back(text.text_id);
    for (int r = 0; r < 6; ++r)
      cells[r].push_back(format_cell(text.metrics.rows[r]));
    cells[6].push_back(std::to_string(text.correct));
    cells[7].push_back(std::to_string(text.error));
    cells[8].push_back(std::to_string(text.undecidable));
  }
  std::vector<std::size_t> widths(texts.size());
  for (std::size_t c = 0; c < texts.size(); ++c) {
    widths[c] = headers[c].size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream table;
  table << "Experimental Results (mean, std)\n";
  table << "    ";
  for (std::size_t c = 0; c < headers.size(); ++c) {
    table << "  ";
    table << std::string(widths[c] - headers[c].size(), ' ') << headers[c];
  }
  table << "\n";
  for (int r = 0; r < 9; ++r) {
    table << kLabels[r] << ' ';
    for (std::size_t c = 0; c < texts.size(); ++c) {
      table << "  ";
      table << std::string(widths[c] - cells[r][c].size(), ' ') << cells[r][c];
    }
    table << "\n";
  }
  char rate[64];
  std::snprintf(rate, sizeof(rate), "%.2f", report.correct_rate_percent);
  table << "Correct rate: " << rate << "% (" << report.correct << " of "
        << total << " paragraphs)\n";
  report.table_text = table.str();

  std::ostringstream figure1;
  figure1 << "text,correct,error,undecidable\n";
  for (const auto& text : texts)
    figure1 << text.text_id << ',' << text.correct << ',' << text.error << ','
            << text.undecidable << "\n";
  report.figure1_csv = figure1.str();

  std::ostringstream figure2;
  figure2 << "text,freq_candidates,freq_assumed,freq_computed\n";
  char value[32];
  for (const auto& text : texts) {
    figure2 << text.text_id;
    for (int r : {2, 3, 4}) {
      figure2 << ',';
      if (text.metrics.rows[r].present) {
        std::snprintf(value, sizeof(value), "%.6f", text.metrics.rows[r].mean);
        figure2 << value;
      }
    }
    figure2 << "\n";
  }
  report.figure2_csv = figure2.str();
  return report;
}

EvalReport evaluate_corpus(const Corpus& corpus, const NormStore& store,
                           const InterpolationWeights& weights, double fraction,
                           const std::vector<GoldAnnotation>& golds,
                           int threads) {
  std::map<std::string, const Document*> documents;
  for (const auto& doc : corpus.documents) documents[doc.id] = &doc;
  std::map<std::string, std::vector<GoldAnnotation>> golds_by_doc;
  for (const auto& gold : golds) {
    auto it = documents.find(gold.doc_id);
    if (it == documents.end())
      throw ParseError("gold references unknown document '" + gold.doc_id + "'",
                       gold.line);
    if (gold.paragraph_index >
        static_cast<int>(it->second->paragraphs.size()))
      throw ParseError("gold references missing paragraph " +
                           std::to_string(gold.paragraph_index) + " of '" +
                           gold.doc_id + "'",
                       gold.line);
    golds_by_doc[gold.doc_id].push_back(gold);
  }

  std::vector<const Document*> annotated;
  for (const auto& doc : corpus.documents)
    if (golds_by_doc.count(doc.id)) annotated.push_back(&doc);

  auto evaluate_document = [&](const Document& doc) {
    const auto& doc_golds = golds_by_doc.at(doc.id);
    std::vector<TopicResult> results;
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
      TopicResult result =
          identify_topics(doc.paragraphs[p], store, weights, fraction);
      result.doc_id = doc.id;
      result.paragraph_index = static_cast<int>(p) + 1;
      results.push_back(std::move(result));
    }
    std::optional<ShiftReport> shift;
    if (doc.paragraphs.size() >= 2)
      shift = topic_shift(doc, store, weights, fraction);

    TextSummary summary;
    summary.text_id = doc.id;
    summary.metrics = metrics(doc, results, shift ? &*shift : nullptr, doc_golds);
    for (const auto& gold : doc_golds) {
      switch (classify(results[gold.paragraph_index - 1], gold)) {
        case Outcome::Correct: ++summary.correct; break;
        case Outcome::Error: ++summary.error; break;
        case Outcome::Undecidable: ++summary.undecidable; break;
      }
    }
    return summary;
  };

  // Per-document summaries are assembled positionally, so the thread count
  // never changes the report.
  std::vector<TextSummary> texts(annotated.size());
  if (threads <= 1 || annotated.size() < 2) {
    for (std::size_t i = 0; i < annotated.size(); ++i)
      texts[i] = evaluate_document(*annotated[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t worker_count = std::min<std::size_t>(
        static_cast<std::size_t>(threads), annotated.size());
    for (std::size_t w = 0; w < worker_count; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < annotated.size();
             i = next.fetch_add(1))
          texts[i] = evaluate_document(*annotated[i]);
      });
    for (auto& t : pool) t.join();
  }
  return summarize(texts);
}

}  // namespace topicnorms
