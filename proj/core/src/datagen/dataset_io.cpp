#include "kgtext/datagen/dataset_io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace kgtext {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ordered_json term_json(const Term& t) {
  return ordered_json{{"type", std::string(to_string(t.kind()))}, {"value", t.value()}};
}

Term term_from(const json& j) {
  const auto type = j.at("type").get<std::string>();
  auto value = j.at("value").get<std::string>();
  if (type == "iri") return Term::iri(std::move(value));
  if (type == "literal") return Term::literal(std::move(value));
  throw DatasetError("unexpected term type '" + type + "'");
}

std::string_view selection_name(SettingSelection s) {
  switch (s) {
    case SettingSelection::kSP: return "sp";
    case SettingSelection::kPO: return "po";
    case SettingSelection::kBoth: return "both";
  }
  return "both";
}

ordered_json stats_json(const CleaningStats& s) {
  return ordered_json{{"raw", s.raw},
                      {"no_document", s.no_document},
                      {"no_label", s.no_label},
                      {"answer_absent", s.answer_absent},
                      {"kept", s.kept},
                      {"type_pairs_used", s.type_pairs_used}};
}

CleaningStats stats_from(const json& j) {
  CleaningStats s;
  s.raw = j.at("raw").get<std::size_t>();
  s.no_document = j.at("no_document").get<std::size_t>();
  s.no_label = j.at("no_label").get<std::size_t>();
  s.answer_absent = j.at("answer_absent").get<std::size_t>();
  s.kept = j.at("kept").get<std::size_t>();
  s.type_pairs_used = j.value("type_pairs_used", std::size_t{0});
  return s;
}

}  // namespace

std::vector<const TrainingExample*> StoredDataset::test_examples() const {
  std::vector<const TrainingExample*> out;
  out.reserve(test_indices.size());
  for (std::size_t i : test_indices) out.push_back(&dataset.examples.at(i));
  return out;
}

std::string dataset_file_name(const Term& predicate, Setting setting) {
  const std::string& iri = predicate.value();
  std::string_view tail = iri;
  if (auto cut = tail.find_last_of("/#"); cut != std::string_view::npos && cut + 1 < tail.size()) {
    tail = tail.substr(cut + 1);
  }
  std::string slug;
  for (char c : tail) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_';
    slug.push_back(keep ? c : '_');
    if (slug.size() == 48) break;
  }
  char hash[17];
  std::snprintf(hash, sizeof hash, "%08llx",
                static_cast<unsigned long long>(fnv1a(iri) & 0xffffffffULL));
  return slug + "-" + hash + (setting == Setting::kSP ? ".sp.jsonl" : ".po.jsonl");
}

std::uint64_t dataset_seed(std::uint64_t base, const Term& predicate, Setting setting) {
  return base ^ fnv1a(predicate.value() + "|" + std::string(to_string(setting)));
}

std::string example_to_json(const TrainingExample& ex) {
  ordered_json j;
  j["triple"] = {{"s", term_json(ex.triple.s)}, {"p", term_json(ex.triple.p)},
                 {"o", term_json(ex.triple.o)}};
  j["setting"] = std::string(to_string(ex.setting));
  j["question"] = ex.question;
  j["answer"] = ex.answer;
  j["doc_iri"] = ex.doc_iri;
  j["text"] = ex.text;
  j["anchor"] = {{"start", ex.anchor.start}, {"end", ex.anchor.end}};
  j["type_pair"] = {ex.type_pair.first.value(), ex.type_pair.second.value()};
  return j.dump();
}

TrainingExample example_from_json(std::string_view line) {
  try {
    const json j = json::parse(line);
    TrainingExample ex;
    const auto& t = j.at("triple");
    ex.triple = Triple(term_from(t.at("s")), term_from(t.at("p")), term_from(t.at("o")));
    ex.setting = parse_setting(j.at("setting").get<std::string>());
    ex.question = j.at("question").get<std::string>();
    ex.answer = j.at("answer").get<std::string>();
    ex.doc_iri = j.at("doc_iri").get<std::string>();
    ex.text = j.at("text").get<std::string>();
    ex.anchor.start = j.at("anchor").at("start").get<std::size_t>();
    ex.anchor.end = j.at("anchor").at("end").get<std::size_t>();
    const auto& tp = j.at("type_pair");
    ex.type_pair = {Term::iri(tp.at(0).get<std::string>()), Term::iri(tp.at(1).get<std::string>())};
    if (ex.anchor.start >= ex.anchor.end || ex.anchor.end > ex.text.size()) {
      throw DatasetError("anchor out of range");
    }
    return ex;
  } catch (const json::exception& e) {
    throw DatasetError(std::string("bad example: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DatasetError(std::string("bad example: ") + e.what());
  }
}

void write_datasets(const std::filesystem::path& dir, const ExtractionReport& report,
                    const ExtractionConfig& cfg) {
  std::filesystem::create_directories(dir);
  ordered_json meta;
  meta["format"] = "kgtext-datasets";
  meta["version"] = 1;
  ordered_json config;
  config["max_type_pairings"] = cfg.max_type_pairings;
  config["max_examples"] = cfg.max_examples;
  config["min_examples_after_cleaning"] = cfg.min_examples_after_cleaning;
  config["window_chars"] = cfg.window_chars ? ordered_json(*cfg.window_chars) : ordered_json();
  config["setting"] = std::string(selection_name(cfg.setting));
  config["split_seed"] = cfg.split_seed;
  meta["config"] = config;

  ordered_json datasets = ordered_json::array();
  for (const PredicateDataset& ds : report.datasets) {
    const std::string file = dataset_file_name(ds.predicate, ds.setting);
    std::ofstream out(dir / file, std::ios::binary | std::ios::trunc);
    if (!out) throw DatasetError("cannot write " + (dir / file).string());
    for (const TrainingExample& ex : ds.examples) out << example_to_json(ex) << '\n';
    const std::uint64_t seed = dataset_seed(cfg.split_seed, ds.predicate, ds.setting);
    ordered_json entry;
    entry["predicate"] = ds.predicate.value();
    entry["predicate_label"] = ds.predicate_label ? ordered_json(*ds.predicate_label) : ordered_json();
    entry["setting"] = std::string(to_string(ds.setting));
    entry["file"] = file;
    entry["examples"] = ds.examples.size();
    entry["split"] = {{"seed", seed},
                      {"train_fraction", "2/3"},
                      {"test_indices", test_split(ds.examples.size(), seed)}};
    datasets.push_back(std::move(entry));
  }
  meta["datasets"] = std::move(datasets);

  ordered_json stats = ordered_json::array();
  for (const auto& e : report.stats) {
    ordered_json entry = stats_json(e.stats);
    entry["predicate"] = e.predicate.value();
    entry["setting"] = std::string(to_string(e.setting));
    entry["included"] = e.included;
    stats.push_back(std::move(entry));
  }
  meta["stats"] = std::move(stats);

  std::ofstream out(dir / kDatasetMetadataFile, std::ios::binary | std::ios::trunc);
  if (!out) throw DatasetError("cannot write metadata in " + dir.string());
  out << meta.dump(2) << '\n';
}

std::vector<StoredDataset> load_datasets(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / kDatasetMetadataFile, std::ios::binary);
  if (!meta_in) throw DatasetError("missing " + (dir / kDatasetMetadataFile).string());
  json meta;
  try {
    meta = json::parse(meta_in);
  } catch (const json::exception& e) {
    throw DatasetError(std::string("bad metadata: ") + e.what());
  }

  std::vector<StoredDataset> out;
  for (const auto& entry : meta.value("datasets", json::array())) {
    StoredDataset sd;
    try {
      sd.file = entry.at("file").get<std::string>();
      sd.dataset.predicate = Term::iri(entry.at("predicate").get<std::string>());
      sd.dataset.setting = parse_setting(entry.at("setting").get<std::string>());
      if (entry.contains("predicate_label") && entry["predicate_label"].is_string()) {
        sd.dataset.predicate_label = entry["predicate_label"].get<std::string>();
      }
      if (!entry.contains("split") || !entry["split"].contains("test_indices")) {
        throw DatasetError("dataset " + sd.file + " has no split metadata");
      }
      sd.split_seed = entry["split"].at("seed").get<std::uint64_t>();
      sd.test_indices = entry["split"]["test_indices"].get<std::vector<std::size_t>>();
    } catch (const json::exception& e) {
      throw DatasetError("bad metadata entry: " + std::string(e.what()));
    }

    std::ifstream in(dir / sd.file, std::ios::binary);
    if (!in) throw DatasetError("missing dataset file " + sd.file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) sd.dataset.examples.push_back(example_from_json(line));
    }
    for (std::size_t i : sd.test_indices) {
      if (i >= sd.dataset.examples.size()) {
        throw DatasetError("test index out of range in " + sd.file);
      }
    }
    sd.dataset.stats.kept = sd.dataset.examples.size();
    for (const auto& st : meta.value("stats", json::array())) {
      if (st.value("predicate", "") == sd.dataset.predicate.value() &&
          st.value("setting", "") == to_string(sd.dataset.setting)) {
        try {
          sd.dataset.stats = stats_from(st);
        } catch (const json::exception& e) {
          throw DatasetError("bad stats entry: " + std::string(e.what()));
        }
      }
    }
    out.push_back(std::move(sd));
  }
  return out;
}

}  // namespace kgtext
