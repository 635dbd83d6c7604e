#include "commands.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "kgtext/config/app_config.hpp"
#include "kgtext/config/stack.hpp"
#include "kgtext/datagen/datagen.hpp"
#include "kgtext/datagen/dataset_io.hpp"
#include "kgtext/eval/eval.hpp"
#include "kgtext/extractors/remote.hpp"
#include "kgtext/sparql/planner.hpp"
#include "kgtext/sparql/query.hpp"
#include "kgtext/tpf/server.hpp"

namespace kgtext::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

AppConfig resolve_config(const InputFlags& f) {
  AppConfig cfg;
  if (!f.config.empty()) cfg = load_app_config(f.config);
  if (!f.store.empty()) cfg.paths.store = f.store;
  if (!f.corpus.empty()) cfg.paths.corpus = f.corpus;
  if (!f.index.empty()) cfg.paths.index = f.index;
  if (!f.registry.empty()) cfg.paths.registry = f.registry;
  if (!f.lexicon.empty()) cfg.paths.lexicon = f.lexicon;
  if (!f.format.empty()) cfg.ingest.format = parse_dump_format(f.format);
  return cfg;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
}

IngestResult load_store(const AppConfig& cfg) {
  require(cfg.paths.store, "--store");
  auto res = ingest_file(cfg.paths.store, cfg.ingest);
  for (const auto& w : res.stats.warnings) spdlog::warn("{}", w);
  spdlog::info("store: {} triples from {} lines ({} skipped)", res.store.size(), res.stats.lines,
               res.stats.skipped());
  return res;
}

Lexicon load_lexicon(const AppConfig& cfg, const TripleStore& store) {
  if (cfg.paths.lexicon.empty()) return Lexicon::from_store(store);
  return Lexicon::from_tsv(fs::path(cfg.paths.lexicon), &store);
}

ordered_json term_json(const Term& t) {
  return {{"type", t.is_literal() ? "literal" : "iri"}, {"value", t.value()}};
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

SettingSelection parse_selection(const std::string& s) {
  if (s == "sp" || s == "SP") return SettingSelection::kSP;
  if (s == "po" || s == "PO") return SettingSelection::kPO;
  if (s == "both") return SettingSelection::kBoth;
  throw ConfigError("--setting must be sp, po or both");
}

std::string read_query_text(const std::string& arg) {
  std::error_code ec;
  if (arg.find('{') == std::string::npos && fs::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

}  // namespace

int run_ingest(const IngestOptions& o) {
  const AppConfig cfg = resolve_config(o.in);
  const auto res = load_store(cfg);
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + o.out);
    write_ntriples(out, res.store);
  }
  ordered_json j{{"lines", res.stats.lines},
                 {"triples", res.stats.triples},
                 {"distinct_triples", res.store.size()},
                 {"skipped_blank_node", res.stats.skipped_blank_node},
                 {"skipped_malformed", res.stats.skipped_malformed},
                 {"warnings", res.stats.warnings}};
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int run_build_index(const BuildIndexOptions& o) {
  const AppConfig cfg = resolve_config(o.in);
  require(cfg.paths.corpus, "--corpus");
  const std::string out = o.out.empty() ? cfg.paths.index : o.out;
  require(out, "--out");
  const Corpus corpus = load_corpus_jsonl(fs::path(cfg.paths.corpus));
  const SearchIndex index(corpus, {o.k1, o.b});
  index.save(fs::path(out));
  spdlog::info("indexed {} documents into {}", index.document_count(), out);
  std::cout << ordered_json{{"documents", index.document_count()},
                            {"average_length", index.average_length()},
                            {"index", out}}
                   .dump(2)
            << '\n';
  return kOk;
}

int run_datagen(const DatagenOptions& o) {
  const AppConfig cfg = resolve_config(o.in);
  require(o.out, "--out");
  require(cfg.paths.corpus, "--corpus");
  ExtractionConfig ec;
  ec.setting = parse_selection(o.setting);
  ec.window_chars = o.window;
  ec.split_seed = o.seed;
  ec.threads = o.threads;
  ec.max_type_pairings = o.max_type_pairings;
  ec.max_examples = o.max_examples;
  ec.min_examples_after_cleaning = o.min_examples;
  ec.validate();

  const auto ingested = load_store(cfg);
  const Corpus corpus = load_corpus_jsonl(fs::path(cfg.paths.corpus));
  const Lexicon lexicon = load_lexicon(cfg, ingested.store);
  const auto report = extract_all(ingested.store, corpus, lexicon, ec);
  write_datasets(o.out, report, ec);

  ordered_json datasets = ordered_json::array();
  for (const auto& ds : report.datasets) {
    datasets.push_back({{"predicate", ds.predicate.value()},
                        {"setting", std::string(to_string(ds.setting))},
                        {"examples", ds.examples.size()},
                        {"file", dataset_file_name(ds.predicate, ds.setting)}});
  }
  std::size_t excluded = 0;
  for (const auto& e : report.stats) excluded += e.included ? 0 : 1;
  spdlog::info("{} datasets written to {}, {} (predicate, setting) pairs below threshold",
               report.datasets.size(), o.out, excluded);
  std::cout << ordered_json{{"datasets", datasets}, {"excluded", excluded}}.dump(2) << '\n';
  return kOk;
}

int run_serve(const ServeOptions& o) {
  AppConfig cfg = resolve_config(o.in);
  if (o.bind) cfg.server.bind = *o.bind;
  if (o.port) cfg.server.port = *o.port;
  if (o.page_size) cfg.server.page_size = *o.page_size;
  const auto stack = ServingStack::open(cfg);
  spdlog::info("loaded {} triples, {} documents, {} labels, {} registered extractors",
               stack->store.size(), stack->corpus.size(), stack->lexicon.size(),
               stack->registry.descriptors().size());

  // Block termination signals before any thread starts so that only the
  // sigwait below sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  TpfServer server(*stack->service, ServerInfo{"kgtext", KGTEXT_VERSION, stack->corpus.size(),
                                               stack->lexicon.size()});
  const int port = server.bind(cfg.server.bind, cfg.server.port);
  server.start();
  std::cout << "listening on http://" << cfg.server.bind << ':' << port << std::endl;
  spdlog::info("serving fragments on http://{}:{}/fragment", cfg.server.bind, port);

  int sig = 0;
  sigwait(&signals, &sig);
  spdlog::info("signal {} received, shutting down", sig);
  server.stop();
  return kOk;
}

int run_query(const QueryOptions& o) {
  if (o.json && o.tsv) throw ConfigError("--json and --tsv are exclusive");
  if (o.sparql.empty() == o.pattern.empty()) throw ConfigError("give exactly one of --sparql and --pattern");
  const sparql::SelectQuery q = sparql::parse_select(
      o.pattern.empty() ? read_query_text(o.sparql) : "SELECT * WHERE { " + o.pattern + " }");

  sparql::SolutionTable table;
  if (!o.endpoint.empty()) {
    sparql::HttpFragmentSource source(o.endpoint);
    table = sparql::plan_and_execute(q, source);
  } else {
    const AppConfig cfg = resolve_config(o.in);
    const auto stack = ServingStack::open(cfg);
    sparql::LocalFragmentSource source(*stack->service);
    table = sparql::plan_and_execute(q, source);
  }
  for (const auto& w : table.warnings) spdlog::warn("{}", w);
  spdlog::info("{} rows, {} requests, {} extra pages, {} bindings substituted", table.rows.size(),
               table.stats.requests, table.stats.pages_fetched, table.stats.bindings_substituted);

  if (o.json) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
      ordered_json b = ordered_json::object();
      for (const auto& c : table.columns) b[c] = term_json(*r.binding.get(c));
      rows.push_back({{"binding", b}, {"score", r.score}});
    }
    std::cout << ordered_json{{"columns", table.columns},
                              {"rows", rows},
                              {"warnings", table.warnings},
                              {"stats",
                               {{"requests", table.stats.requests},
                                {"pages_fetched", table.stats.pages_fetched},
                                {"bindings_substituted", table.stats.bindings_substituted}}}}
                     .dump(2)
              << '\n';
    return kOk;
  }
  for (const auto& c : table.columns) std::cout << '?' << c << '\t';
  std::cout << "score\n";
  for (const auto& r : table.rows) {
    for (const auto& c : table.columns) std::cout << r.binding.get(c)->to_string() << '\t';
    std::cout << std::setprecision(6) << r.score << '\n';
  }
  return kOk;
}

int run_eval(const EvalOptions& o) {
  require(o.datasets, "--datasets");
  const auto datasets = load_datasets(o.datasets);
  if (datasets.empty()) spdlog::warn("no datasets in {}", o.datasets);

  std::unique_ptr<Extractor> owned;
  eval::Predictor predict;
  std::string id = o.extractor;
  if (o.extractor == "gold") {
    predict = eval::gold_predictor();
  } else if (o.extractor == "baseline") {
    owned = std::make_unique<BaselineExtractor>();
    predict = eval::predictor_for(*owned);
  } else if (o.extractor.starts_with("remote:")) {
    id = "remote";
    owned = std::make_unique<RemoteExtractor>(id, Endpoint::parse(o.extractor.substr(7)));
    predict = eval::predictor_for(*owned);
  } else {
    throw ConfigError("--extractor must be baseline, gold or remote:URL");
  }

  std::vector<eval::EvalRecord> records;
  for (const auto& sd : datasets) {
    records.push_back(eval::evaluate(sd, id, predict, o.threads));
    const auto& r = records.back();
    spdlog::info("{} {}: n={} f1={:.4f} exact={:.4f}", r.predicate.value(), to_string(r.setting),
                 r.count(), r.mean_f1, r.mean_exact);
  }
  const std::string report = eval::report_json(records);
  if (!o.report.empty()) write_file(o.report, report + "\n");
  if (o.json) {
    std::cout << report << '\n';
  } else {
    std::cout << "predicate\tsetting\tcount\tmean_f1\tmean_exact\n";
    for (const auto& r : records) {
      std::cout << r.predicate.value() << '\t' << to_string(r.setting) << '\t' << r.count() << '\t'
                << std::setprecision(6) << r.mean_f1 << '\t' << r.mean_exact << '\n';
    }
  }
  return kOk;
}

int run_stats(const StatsOptions& o) {
  const AppConfig cfg = resolve_config(o.in);
  const auto ingested = load_store(cfg);
  const TripleStore& store = ingested.store;
  const Lexicon lexicon = load_lexicon(cfg, store);

  ordered_json preds = ordered_json::object();
  std::set<Term> subjects;
  for (const auto& t : store.triples()) subjects.insert(t.s);
  for (const auto& p : store.predicates()) preds[p.value()] = store.with_predicate(p).size();

  ordered_json j{{"triples", store.size()},
                 {"subjects", subjects.size()},
                 {"predicates", preds},
                 {"labels", lexicon.size()}};
  if (!cfg.paths.corpus.empty()) {
    const Corpus corpus = load_corpus_jsonl(fs::path(cfg.paths.corpus));
    std::size_t covered = 0;
    for (const auto& s : subjects) covered += corpus.find(s.value()) ? 1 : 0;
    j["documents"] = corpus.size();
    j["subjects_with_document"] = covered;
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

}  // namespace kgtext::cli
