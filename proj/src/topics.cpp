#include "topicnorms/topics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include "topicnorms/errors.hpp"

namespace topicnorms {

namespace {

std::vector<const Token*> cardinal_tokens(const Paragraph& paragraph) {
  std::vector<const Token*> tokens;
  for (const auto& sentence : paragraph.sentences)
    for (const auto& token : sentence.tokens)
      if (token.has_cardinal()) tokens.push_back(&token);
  return tokens;
}

bool ranks_before(const CandidateScore& x, const CandidateScore& y) {
  if (x.ncs != y.ncs) return x.ncs > y.ncs;
  if (x.frequency != y.frequency) return x.frequency > y.frequency;
  int xc = x.occurrences.front().cardinal;
  int yc = y.occurrences.front().cardinal;
  if (xc != yc) return xc < yc;
  return x.base_form < y.base_form;
}

// Mean |C(x)-C(y)| over all token pairs of the paragraph; stands in for the
// unknown position of a topic that does not occur in the paragraph.
double mean_pair_distance(const std::vector<const Token*>& tokens) {
  if (tokens.size() < 2) return 1.0;
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    for (std::size_t k = i + 1; k < tokens.size(); ++k) {
      total += token_distance(*tokens[i], *tokens[k]);
      ++count;
    }
  return total / static_cast<double>(count);
}

}  // namespace

OccurrenceStrengths score_occurrence(const Paragraph& paragraph,
                                     const Token& noun_occurrence,
                                     const NormStore& store) {
  if (!noun_occurrence.is_noun())
    throw InvalidArgument("occurrence to score must be a noun");
  bool found = false;
  for (const auto& sentence : paragraph.sentences)
    for (const auto& token : sentence.tokens)
      if (&token == &noun_occurrence) found = true;
  if (!found) throw InvalidArgument("occurrence not in paragraph");

  OccurrenceStrengths result;
  for (const auto& sentence : paragraph.sentences) {
    for (const auto& token : sentence.tokens) {
      if (&token == &noun_occurrence) continue;
      if (token.is_noun()) {
        if (token.base_form == noun_occurrence.base_form) continue;
        result.csnn +=
            store.lookup_ann(noun_occurrence.base_form, token.base_form) /
            token_distance(noun_occurrence, token);
      } else if (token.is_verb()) {
        result.csnv +=
            store.lookup_anv(noun_occurrence.base_form, token.base_form) /
            token_distance(noun_occurrence, token);
      }
    }
  }
  return result;
}

double combine_cs(double csnn, double csnv,
                  const InterpolationWeights& weights) {
  if (csnn < 0.0 || csnv < 0.0)
    throw InvalidArgument("connective strengths must be >= 0");
  return weights.pn * csnn + weights.pv() * csnv;
}

std::vector<double> normalize_cs(const std::vector<double>& raw_scores) {
  double max = 0.0;
  for (double raw : raw_scores) {
    if (raw < 0.0) throw InvalidArgument("raw score must be >= 0");
    max = std::max(max, raw);
  }
  std::vector<double> out;
  out.reserve(raw_scores.size());
  for (double raw : raw_scores) out.push_back(max > 0.0 ? raw / max : 0.0);
  return out;
}

double merge_ncs(std::span<const double> cs_values) {
  if (cs_values.empty()) throw InvalidArgument("no scores to merge");
  double ncs = 0.0;
  bool first = true;
  for (double cs : cs_values) {
    if (cs < 0.0 || cs > 1.0)
      throw InvalidArgument("normalized score outside [0,1]");
    ncs = first ? cs : ncs + (1.0 - ncs) * cs;
    first = false;
  }
  return ncs;
}

TopicResult identify_topics(const Paragraph& paragraph, const NormStore& store,
                            const InterpolationWeights& weights,
                            double fraction) {
  if (fraction <= 0.0 || fraction > 1.0)
    throw InvalidArgument("fraction must be in (0,1]");

  TopicResult result;
  std::vector<const Token*> nouns;
  for (const auto& sentence : paragraph.sentences)
    for (const auto& token : sentence.tokens)
      if (token.is_noun()) nouns.push_back(&token);
  if (nouns.empty()) return result;

  std::vector<OccurrenceScore> scores;
  std::vector<double> raw;
  scores.reserve(nouns.size());
  for (const Token* noun : nouns) {
    OccurrenceStrengths s = score_occurrence(paragraph, *noun, store);
    OccurrenceScore occurrence;
    occurrence.base_form = noun->base_form;
    occurrence.cardinal = noun->cardinal;
    occurrence.csnn = s.csnn;
    occurrence.csnv = s.csnv;
    occurrence.cs_raw = combine_cs(s.csnn, s.csnv, weights);
    raw.push_back(occurrence.cs_raw);
    scores.push_back(std::move(occurrence));
  }
  std::vector<double> normalized = normalize_cs(raw);
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i].cs = normalized[i];

  std::map<std::string, CandidateScore> by_base;
  for (auto& occurrence : scores) {
    CandidateScore& candidate = by_base[occurrence.base_form];
    candidate.base_form = occurrence.base_form;
    candidate.occurrences.push_back(occurrence);
  }
  for (auto& [base, candidate] : by_base) {
    std::vector<double> cs_values;
    for (const auto& occurrence : candidate.occurrences)
      cs_values.push_back(occurrence.cs);
    candidate.ncs = merge_ncs(cs_values);
    candidate.frequency = static_cast<int>(candidate.occurrences.size());
    result.candidates.push_back(std::move(candidate));
  }
  std::sort(result.candidates.begin(), result.candidates.end(), ranks_before);
  for (std::size_t i = 0; i < result.candidates.size(); ++i)
    result.candidates[i].rank = static_cast<int>(i) + 1;

  auto set_size = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(result.candidates.size())));
  set_size = std::clamp<std::size_t>(set_size, 1, result.candidates.size());
  for (std::size_t i = 0; i < set_size; ++i)
    result.topic_set.push_back(result.candidates[i].base_form);
  return result;
}

std::vector<TopicResult> identify_corpus(const Corpus& corpus,
                                         const NormStore& store,
                                         const InterpolationWeights& weights,
                                         double fraction, int threads) {
  struct Slot {
    const Document* doc;
    const Paragraph* paragraph;
    int index;
  };
  std::vector<Slot> slots;
  for (const auto& doc : corpus.documents)
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p)
      slots.push_back({&doc, &doc.paragraphs[p], static_cast<int>(p) + 1});

  std::vector<TopicResult> results(slots.size());
  auto work = [&](std::size_t i) {
    results[i] = identify_topics(*slots[i].paragraph, store, weights, fraction);
    results[i].doc_id = slots[i].doc->id;
    results[i].paragraph_index = slots[i].index;
  };
  if (threads <= 1 || slots.size() < 2) {
    for (std::size_t i = 0; i < slots.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(threads), slots.size());
    for (std::size_t w = 0; w < worker_count; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < slots.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (auto& t : pool) t.join();
  }
  return results;
}

ShiftReport topic_shift(const Document& document, const NormStore& store,
                        const InterpolationWeights& weights, double fraction) {
  if (document.paragraphs.size() < 2)
    throw InvalidArgument("nothing to compare");

  ShiftReport report;
  report.doc_id = document.id;
  TopicResult previous =
      identify_topics(document.paragraphs[0], store, weights, fraction);
  for (std::size_t p = 1; p < document.paragraphs.size(); ++p) {
    const Paragraph& paragraph = document.paragraphs[p];
    TopicResult current = identify_topics(paragraph, store, weights, fraction);

    ParagraphShift shift;
    shift.paragraph_index = static_cast<int>(p) + 1;
    std::vector<const Token*> tokens = cardinal_tokens(paragraph);
    double mean_distance = mean_pair_distance(tokens);
    double normalizer = 0.0;
    for (const auto& candidate : current.candidates)
      for (const auto& occurrence : candidate.occurrences)
        normalizer = std::max(normalizer, occurrence.cs_raw);

    for (const auto& topic : previous.topic_set) {
      ShiftEntry entry;
      entry.prev_topic = topic;
      auto it = std::find_if(
          current.candidates.begin(), current.candidates.end(),
          [&](const CandidateScore& c) { return c.base_form == topic; });
      if (it != current.candidates.end()) {
        entry.rank_in_current = it->rank;
      } else {
        entry.virtual_rank = true;
        double csnn = 0.0, csnv = 0.0;
        for (const Token* token : tokens) {
          if (token->is_noun() && token->base_form != topic)
            csnn += store.lookup_ann(topic, token->base_form) / mean_distance;
          else if (token->is_verb())
            csnv += store.lookup_anv(topic, token->base_form) / mean_distance;
        }
        double raw = combine_cs(csnn, csnv, weights);
        double ncs = normalizer > 0.0 ? raw / normalizer : 0.0;
        int beaten_by = 0;
        for (const auto& candidate : current.candidates)
          if (candidate.ncs >= ncs) ++beaten_by;
        entry.rank_in_current = beaten_by + 1;
      }
      shift.topics.push_back(std::move(entry));
    }
    report.paragraphs.push_back(std::move(shift));
    previous = std::move(current);
  }
  return report;
}

void write_topics_tsv(std::span<const TopicResult> results, std::ostream& out) {
  char ncs[32];
  for (const auto& result : results) {
    std::size_t set_size = result.topic_set.size();
    for (const auto& candidate : result.candidates) {
      std::snprintf(ncs, sizeof(ncs), "%.9f", candidate.ncs);
      out << result.doc_id << '\t' << result.paragraph_index << '\t'
          << candidate.rank << '\t' << candidate.base_form << '\t' << ncs
          << '\t' << candidate.frequency << '\t'
          << (static_cast<std::size_t>(candidate.rank) <= set_size ? 1 : 0)
          << "\n";
    }
  }
}

void write_shift_tsv(std::span<const ShiftReport> reports, std::ostream& out) {
  for (const auto& report : reports)
    for (const auto& paragraph : report.paragraphs)
      for (const auto& entry : paragraph.topics)
        out << report.doc_id << '\t' << paragraph.paragraph_index << '\t'
            << entry.prev_topic << '\t' << entry.rank_in_current << '\t'
            << (entry.virtual_rank ? 1 : 0) << "\n";
}

}  // namespace topicnorms
