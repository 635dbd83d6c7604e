#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgtext/datagen/dataset_io.hpp"
#include "kgtext/extractors/extractor.hpp"

namespace kgtext::eval {

/// Lowercase, drop ASCII punctuation, drop the articles a/an/the, collapse
/// whitespace.
std::string normalize(std::string_view answer);

/// Token-multiset overlap F1 of the normalized answers. Both empty gives 1,
/// one empty gives 0.
double f1(std::string_view prediction, std::string_view gold);

/// 1 iff the normalized answers are equal.
int exact(std::string_view prediction, std::string_view gold);

struct ExampleScore {
  std::string question;
  std::string prediction;
  std::string gold;
  double f1 = 0.0;
  int exact = 0;
};

struct EvalRecord {
  Term predicate;
  std::optional<std::string> predicate_label;
  Setting setting = Setting::kSP;
  std::string extractor_id;
  std::vector<ExampleScore> examples;
  double mean_f1 = 0.0;
  double mean_exact = 0.0;

  std::size_t count() const { return examples.size(); }
};

/// Produces the ranked spans for one test example.
using Predictor = std::function<std::vector<AnswerSpan>(
    const TrainingExample&, const ExtractionRequest&, const SlotQuery&)>;

Predictor predictor_for(const Extractor& extractor);

/// The oracle: each example answered from a store holding just its own
/// triple, so the top span is always the gold answer.
Predictor gold_predictor();

/// Runs `predict` on every test example with the example's stored text as
/// the only document and scores the top span (empty when none). Throws
/// DatasetError when the split is unusable.
EvalRecord evaluate(const StoredDataset& stored, const std::string& extractor_id,
                    const Predictor& predict, std::size_t threads = 1);

/// count, mean, sample std, min, quartiles (linear interpolation), max.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  std::optional<double> std;  ///< none for fewer than two values
  double min = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

Summary summarize(std::vector<double> values);

/// Report JSON: per-dataset records with every example, plus F1 and exact
/// summaries over the per-dataset means, per setting and overall.
std::string report_json(const std::vector<EvalRecord>& records, bool include_examples = true);

}  // namespace kgtext::eval
