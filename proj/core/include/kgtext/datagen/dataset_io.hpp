#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kgtext/datagen/datagen.hpp"

namespace kgtext {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Name of the metadata file written next to the per-dataset JSONL files.
inline constexpr std::string_view kDatasetMetadataFile = "metadata.json";

/// A dataset read back from disk, with its split.
struct StoredDataset {
  PredicateDataset dataset;
  std::string file;
  std::uint64_t split_seed = 0;
  std::vector<std::size_t> test_indices;

  std::vector<const TrainingExample*> test_examples() const;
};

/// Deterministic file name for a (predicate, setting) dataset.
std::string dataset_file_name(const Term& predicate, Setting setting);

/// Per-dataset split seed derived from the configured seed.
std::uint64_t dataset_seed(std::uint64_t base, const Term& predicate, Setting setting);

std::string example_to_json(const TrainingExample& ex);
TrainingExample example_from_json(std::string_view line);

/// Writes one JSONL file per included dataset plus metadata.json (config
/// echo, per-stage stats for every predicate, split seeds and test indices).
void write_datasets(const std::filesystem::path& dir, const ExtractionReport& report,
                    const ExtractionConfig& cfg);

/// Reads every dataset listed in metadata.json. Throws DatasetError when the
/// metadata or a dataset's split is missing or inconsistent.
std::vector<StoredDataset> load_datasets(const std::filesystem::path& dir);

}  // namespace kgtext
