#include "kgtext/eval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "kgtext/corpus/lexicon.hpp"
#include "kgtext/kg/store.hpp"
#include "kgtext/util/text.hpp"

namespace kgtext::eval {

namespace {

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && text::is_ascii_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !text::is_ascii_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> normalized_tokens(std::string_view answer) {
  std::string s;
  s.reserve(answer.size());
  for (char c : answer) {
    if (!is_ascii_punct(c)) s.push_back(text::ascii_lower(c));
  }
  std::vector<std::string> out;
  for (auto& tok : split_ws(s)) {
    if (tok != "a" && tok != "an" && tok != "the") out.push_back(std::move(tok));
  }
  return out;
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

std::string normalize(std::string_view answer) {
  std::string out;
  for (const auto& tok : normalized_tokens(answer)) {
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

double f1(std::string_view prediction, std::string_view gold) {
  const auto p = normalized_tokens(prediction);
  const auto g = normalized_tokens(gold);
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& t : g) ++counts[t];
  std::size_t common = 0;
  for (const auto& t : p) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

int exact(std::string_view prediction, std::string_view gold) {
  return normalize(prediction) == normalize(gold) ? 1 : 0;
}

Predictor predictor_for(const Extractor& extractor) {
  return [&extractor](const TrainingExample&, const ExtractionRequest& req, const SlotQuery& q) {
    return extractor.extract(req, q);
  };
}

Predictor gold_predictor() {
  return [](const TrainingExample& ex, const ExtractionRequest& req, const SlotQuery& q) {
    const TripleStore store({ex.triple});
    const Term& answer = ex.setting == Setting::kSP ? ex.triple.o : ex.triple.s;
    std::map<std::string, std::string> labels;
    if (answer.is_iri()) labels.emplace(answer.value(), ex.answer);
    const Lexicon lexicon(std::move(labels));
    return extract_gold(req, store, lexicon, q.pattern);
  };
}

EvalRecord evaluate(const StoredDataset& stored, const std::string& extractor_id,
                    const Predictor& predict, std::size_t threads) {
  const PredicateDataset& ds = stored.dataset;
  if (stored.test_indices.empty() && !ds.examples.empty()) {
    throw DatasetError("dataset " + stored.file + " has no test split");
  }
  for (std::size_t i : stored.test_indices) {
    if (i >= ds.examples.size()) throw DatasetError("test index out of range in " + stored.file);
  }

  EvalRecord rec;
  rec.predicate = ds.predicate;
  rec.predicate_label = ds.predicate_label;
  rec.setting = ds.setting;
  rec.extractor_id = extractor_id;
  rec.examples.resize(stored.test_indices.size());

  auto score_one = [&](std::size_t k) {
    const TrainingExample& ex = ds.examples[stored.test_indices[k]];
    ExtractionRequest req;
    req.question = ex.question;
    req.documents.push_back({ex.doc_iri, ex.text});
    SlotQuery q;
    q.setting = ex.setting;
    q.predicate_label = ds.predicate_label.value_or("");
    q.pattern = ex.setting == Setting::kSP
                    ? TriplePattern(ex.triple.s, ex.triple.p, Term::variable("o"))
                    : TriplePattern(Term::variable("s"), ex.triple.p, ex.triple.o);
    const auto spans = predict(ex, req, q);
    ExampleScore& out = rec.examples[k];
    out.question = ex.question;
    out.gold = ex.answer;
    out.prediction = spans.empty() ? std::string() : spans.front().text;
    out.f1 = f1(out.prediction, out.gold);
    out.exact = exact(out.prediction, out.gold);
  };

  const std::size_t n = rec.examples.size();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t k = 0; k < n; ++k) score_one(k);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < n; k += threads) score_one(k);
      });
    }
  }

  for (const auto& e : rec.examples) {
    rec.mean_f1 += e.f1;
    rec.mean_exact += e.exact;
  }
  if (n > 0) {
    rec.mean_f1 /= static_cast<double>(n);
    rec.mean_exact /= static_cast<double>(n);
  }
  return rec;
}

Summary summarize(std::vector<double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  s.min = values.front();
  s.max = values.back();
  s.q25 = quantile(values, 0.25);
  s.q50 = quantile(values, 0.50);
  s.q75 = quantile(values, 0.75);
  return s;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json summary_json(const Summary& s) {
  ordered_json j;
  j["count"] = s.count;
  j["mean"] = s.mean;
  j["std"] = s.std ? ordered_json(*s.std) : ordered_json(nullptr);
  j["min"] = s.min;
  j["25%"] = s.q25;
  j["50%"] = s.q50;
  j["75%"] = s.q75;
  j["max"] = s.max;
  return j;
}

ordered_json summaries(const std::vector<const EvalRecord*>& recs) {
  std::vector<double> f, e;
  for (const auto* r : recs) {
    f.push_back(r->mean_f1);
    e.push_back(r->mean_exact);
  }
  return {{"f1", summary_json(summarize(f))}, {"exact", summary_json(summarize(e))}};
}

}  // namespace

std::string report_json(const std::vector<EvalRecord>& records, bool include_examples) {
  ordered_json root;
  ordered_json recs = ordered_json::array();
  std::vector<const EvalRecord*> all, sp, po;
  for (const auto& r : records) {
    ordered_json j;
    j["predicate"] = r.predicate.value();
    j["predicate_label"] = r.predicate_label ? ordered_json(*r.predicate_label) : ordered_json(nullptr);
    j["setting"] = std::string(to_string(r.setting));
    j["extractor"] = r.extractor_id;
    j["count"] = r.count();
    j["mean_f1"] = r.mean_f1;
    j["mean_exact"] = r.mean_exact;
    if (include_examples) {
      ordered_json ex = ordered_json::array();
      for (const auto& e : r.examples) {
        ex.push_back({{"question", e.question},
                      {"prediction", e.prediction},
                      {"gold", e.gold},
                      {"f1", e.f1},
                      {"exact", e.exact}});
      }
      j["examples"] = std::move(ex);
    }
    recs.push_back(std::move(j));
    all.push_back(&r);
    (r.setting == Setting::kSP ? sp : po).push_back(&r);
  }
  root["records"] = std::move(recs);
  root["summary"] = {{"all", summaries(all)}, {"SP", summaries(sp)}, {"PO", summaries(po)}};
  return root.dump(2);
}

}  // namespace kgtext::eval
