#include <exception>
#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace kgtext::cli;

void add_inputs(CLI::App* cmd, InputFlags& f, bool with_corpus = true) {
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  cmd->add_option("--store", f.store, "Triple dump (N-Triples or TSV)");
  cmd->add_option("--format", f.format, "Dump format: ntriples or tsv");
  cmd->add_option("--lexicon", f.lexicon, "IRI<TAB>label file (default: labels from the store)");
  if (with_corpus) cmd->add_option("--corpus", f.corpus, "Documents as JSONL");
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_st("kgtext");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Triple pattern fragments answered from text"};
  app.set_version_flag("--version", KGTEXT_VERSION);
  app.require_subcommand(1);
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Only log errors");

  IngestOptions ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Parse a dump and report statistics");
  add_inputs(c_ingest, ingest.in, false);
  c_ingest->add_option("--out", ingest.out, "Write the cleaned store as N-Triples");

  BuildIndexOptions build;
  auto* c_build = app.add_subcommand("build-index", "Build the BM25 search index");
  c_build->add_option("--config", build.in.config, "JSON config file");
  c_build->add_option("--corpus", build.in.corpus, "Documents as JSONL");
  c_build->add_option("--out", build.out, "Index file (default: paths.index)");
  c_build->add_option("--k1", build.k1, "BM25 k1")->capture_default_str();
  c_build->add_option("--b", build.b, "BM25 b")->capture_default_str();

  DatagenOptions gen;
  auto* c_gen = app.add_subcommand("datagen", "Generate distant-supervision datasets");
  add_inputs(c_gen, gen.in);
  c_gen->add_option("--out", gen.out, "Output directory")->required();
  c_gen->add_option("--setting", gen.setting, "sp, po or both")->capture_default_str();
  c_gen->add_option("--window", gen.window, "Window size in characters around the answer");
  c_gen->add_option("--seed", gen.seed, "Split seed")->capture_default_str();
  c_gen->add_option("--threads", gen.threads, "Worker threads")->capture_default_str();
  c_gen->add_option("--max-type-pairings", gen.max_type_pairings)->capture_default_str();
  c_gen->add_option("--max-examples", gen.max_examples)->capture_default_str();
  c_gen->add_option("--min-examples", gen.min_examples)->capture_default_str();

  ServeOptions serve;
  auto* c_serve = app.add_subcommand("serve", "Serve triple pattern fragments over HTTP");
  add_inputs(c_serve, serve.in);
  c_serve->add_option("--index", serve.in.index, "Search index file");
  c_serve->add_option("--registry", serve.in.registry, "Extractor registry JSON");
  c_serve->add_option("--bind", serve.bind, "Address to bind");
  c_serve->add_option("--port", serve.port, "Port; 0 picks a free one");
  c_serve->add_option("--page-size", serve.page_size, "Triples per fragment page");

  QueryOptions query;
  auto* c_query = app.add_subcommand("query", "Run a SPARQL SELECT over a fragment endpoint");
  c_query->add_option("--sparql", query.sparql, "Query text or file");
  c_query->add_option("--pattern", query.pattern, "One triple pattern, e.g. '<s> <p> ?o'");
  c_query->add_option("--endpoint", query.endpoint, "Fragment server base URL");
  add_inputs(c_query, query.in);
  c_query->add_option("--index", query.in.index, "Search index file");
  c_query->add_option("--registry", query.in.registry, "Extractor registry JSON");
  c_query->add_flag("--json", query.json, "JSON output");
  c_query->add_flag("--tsv", query.tsv, "TSV output (default)");

  EvalOptions ev;
  auto* c_eval = app.add_subcommand("eval", "Score an extractor on dataset test splits");
  c_eval->add_option("--datasets", ev.datasets, "Directory written by datagen")->required();
  c_eval->add_option("--extractor", ev.extractor, "baseline, gold or remote:URL")
      ->capture_default_str();
  c_eval->add_option("--report", ev.report, "Write the JSON report here");
  c_eval->add_option("--threads", ev.threads, "Worker threads")->capture_default_str();
  c_eval->add_flag("--json", ev.json, "Print the JSON report instead of a table");

  StatsOptions stats;
  auto* c_stats = app.add_subcommand("stats", "Summarize a store and corpus");
  add_inputs(c_stats, stats.in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);
  if (quiet) spdlog::set_level(spdlog::level::err);

  try {
    if (c_ingest->parsed()) return run_ingest(ingest);
    if (c_build->parsed()) return run_build_index(build);
    if (c_gen->parsed()) return run_datagen(gen);
    if (c_serve->parsed()) return run_serve(serve);
    if (c_query->parsed()) return run_query(query);
    if (c_eval->parsed()) return run_eval(ev);
    if (c_stats->parsed()) return run_stats(stats);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kRuntime;
  }
  return kUsage;
}
