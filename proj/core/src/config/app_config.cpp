#include "kgtext/config/app_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace kgtext {

using ordered_json = nlohmann::ordered_json;

namespace {

void reject_unknown(const ordered_json& j, std::string_view section,
                    const std::set<std::string, std::less<>>& known) {
  if (!j.is_object()) throw ConfigError(std::string(section) + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!known.contains(k)) throw ConfigError("unknown key '" + k + "' in " + std::string(section));
  }
}

template <typename T>
void read(const ordered_json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string_view to_string(DumpFormat f) { return f == DumpFormat::kTsv ? "tsv" : "ntriples"; }

DumpFormat parse_dump_format(std::string_view s) {
  if (s == "ntriples" || s == "nt") return DumpFormat::kNTriples;
  if (s == "tsv") return DumpFormat::kTsv;
  throw ConfigError("unknown dump format: " + std::string(s));
}

void AppConfig::validate() const {
  try {
    executor.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (server.port < 0 || server.port > 65535) throw ConfigError("server.port out of range");
  if (server.page_size == 0) throw ConfigError("server.page_size must be >= 1");
  if (server.bind.empty()) throw ConfigError("server.bind is empty");
}

void AppConfig::check_paths() const {
  auto need = [](const std::string& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string("paths.") + what + " is not set");
    if (!std::filesystem::exists(p)) throw ConfigError(std::string("paths.") + what + " not found: " + p);
  };
  auto maybe = [](const std::string& p, const char* what) {
    if (!p.empty() && !std::filesystem::exists(p)) {
      throw ConfigError(std::string("paths.") + what + " not found: " + p);
    }
  };
  need(paths.store, "store");
  need(paths.corpus, "corpus");
  maybe(paths.registry, "registry");
  maybe(paths.lexicon, "lexicon");
}

void AppConfig::resolve_paths(const std::filesystem::path& base) {
  for (std::string* p : {&paths.store, &paths.corpus, &paths.index, &paths.registry, &paths.lexicon}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).lexically_normal().string();
  }
}

bool operator==(const AppConfig& a, const AppConfig& b) {
  return a.paths == b.paths && a.executor.candidate_docs == b.executor.candidate_docs &&
         a.executor.max_answers == b.executor.max_answers &&
         a.executor.score_cutoff == b.executor.score_cutoff &&
         a.executor.parallel_documents == b.executor.parallel_documents && a.server == b.server &&
         a.ingest.format == b.ingest.format &&
         a.ingest.schema.type_predicate == b.ingest.schema.type_predicate &&
         a.ingest.schema.label_predicate == b.ingest.schema.label_predicate;
}

std::string to_json(const AppConfig& cfg) {
  ordered_json j;
  j["paths"] = {{"store", cfg.paths.store},
                {"corpus", cfg.paths.corpus},
                {"index", cfg.paths.index},
                {"registry", cfg.paths.registry},
                {"lexicon", cfg.paths.lexicon}};
  j["executor"] = {{"candidate_docs", cfg.executor.candidate_docs},
                   {"max_answers", cfg.executor.max_answers},
                   {"score_cutoff", cfg.executor.score_cutoff},
                   {"parallel_documents", cfg.executor.parallel_documents}};
  j["server"] = {{"bind", cfg.server.bind},
                 {"port", cfg.server.port},
                 {"page_size", cfg.server.page_size}};
  j["ingest"] = {{"format", std::string(to_string(cfg.ingest.format))},
                 {"type_predicate", cfg.ingest.schema.type_predicate},
                 {"label_predicate", cfg.ingest.schema.label_predicate}};
  return j.dump(2);
}

AppConfig app_config_from_json(std::string_view text) {
  AppConfig cfg;
  try {
    const auto j = ordered_json::parse(text);
    reject_unknown(j, "config", {"paths", "executor", "server", "ingest"});
    if (j.contains("paths")) {
      const auto& p = j["paths"];
      reject_unknown(p, "paths", {"store", "corpus", "index", "registry", "lexicon"});
      read(p, "store", cfg.paths.store);
      read(p, "corpus", cfg.paths.corpus);
      read(p, "index", cfg.paths.index);
      read(p, "registry", cfg.paths.registry);
      read(p, "lexicon", cfg.paths.lexicon);
    }
    if (j.contains("executor")) {
      const auto& e = j["executor"];
      reject_unknown(e, "executor",
                     {"candidate_docs", "max_answers", "score_cutoff", "parallel_documents"});
      read(e, "candidate_docs", cfg.executor.candidate_docs);
      read(e, "max_answers", cfg.executor.max_answers);
      read(e, "score_cutoff", cfg.executor.score_cutoff);
      read(e, "parallel_documents", cfg.executor.parallel_documents);
    }
    if (j.contains("server")) {
      const auto& s = j["server"];
      reject_unknown(s, "server", {"bind", "port", "page_size"});
      read(s, "bind", cfg.server.bind);
      read(s, "port", cfg.server.port);
      read(s, "page_size", cfg.server.page_size);
    }
    if (j.contains("ingest")) {
      const auto& i = j["ingest"];
      reject_unknown(i, "ingest", {"format", "type_predicate", "label_predicate"});
      if (i.contains("format")) cfg.ingest.format = parse_dump_format(i["format"].get<std::string>());
      read(i, "type_predicate", cfg.ingest.schema.type_predicate);
      read(i, "label_predicate", cfg.ingest.schema.label_predicate);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

AppConfig load_app_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  AppConfig cfg = app_config_from_json(buf.str());
  cfg.resolve_paths(path.parent_path());
  return cfg;
}

}  // namespace kgtext
