#include "graphcomm/cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "graphcomm/analytics/report.hpp"
#include "graphcomm/api/http_server.hpp"
#include "graphcomm/api/query_service.hpp"
#include "graphcomm/error.hpp"
#include "graphcomm/ingest/derive.hpp"
#include "graphcomm/ingest/pipeline.hpp"
#include "graphcomm/lpa/label_propagation.hpp"
#include "graphcomm/traversal/traversal.hpp"

namespace graphcomm::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kManifest = "manifest.json";

void print(std::ostream& out, const Json& value) { out << api::to_body(value) << '\n'; }

std::size_t default_workers() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

GraphStore load_store(const fs::path& dir) {
  if (!fs::exists(dir / kManifest)) {
    throw Error(ErrorCode::kNotFound, "no store at " + dir.string());
  }
  return GraphStore::load(dir);
}

// ---- ingest -----------------------------------------------------------------

struct IngestArgs {
  fs::path input;
  fs::path store;
  std::size_t chunk_lines = ingest::kDefaultChunkLines;
  std::string emit_jsonl;
  bool force = false;
  bool keep_chunks = false;
  std::string unknown_entities = "pass";
};

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  if (!fs::is_regular_file(a.input)) {
    throw Error(ErrorCode::kNotFound, "cannot read input " + a.input.string());
  }
  if (fs::exists(a.store)) {
    const bool is_store = fs::exists(a.store / kManifest);
    const bool empty_dir = fs::is_directory(a.store) && fs::is_empty(a.store);
    if (!empty_dir) {
      if (!a.force) {
        throw Error(ErrorCode::kAlreadyExists,
                    a.store.string() + " already exists; pass --force to replace it");
      }
      if (!is_store) {
        throw Error(ErrorCode::kAlreadyExists,
                    a.store.string() + " is not a store; refusing to replace it");
      }
      fs::remove_all(a.store);
    }
  }

  GraphStore store;
  ingest::ensure_schema(store);
  ingest::IngestOptions options;
  options.chunk_lines = a.chunk_lines;
  options.work_dir = a.store / ".work";
  options.keep_chunks = a.keep_chunks;
  if (!a.emit_jsonl.empty()) options.emit_jsonl = fs::path(a.emit_jsonl);
  options.unknown_entities = a.unknown_entities == "reject" ? ingest::UnknownEntityPolicy::kReject
                                                            : ingest::UnknownEntityPolicy::kPassThrough;
  const auto report = ingest::ingest_file(a.input, store, options);
  store.save(a.store);
  err << "saved " << store.vertex_count() << " vertices, " << store.edge_count()
      << " edges to " << a.store.string() << '\n';
  print(out, report.to_json());
  return kExitOk;
}

// ---- detect -----------------------------------------------------------------

struct DetectArgs {
  fs::path store;
  std::string graph = std::string(ingest::kDefaultGraphName);
  std::size_t max_gss = 100;
  std::string result_field = std::string(kDefaultCommunityField);
  std::string tie_break = "min_id";
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;
  bool progress = false;
  std::string table;
};

int cmd_detect(const DetectArgs& a, std::ostream& out, std::ostream& err) {
  lpa::LpaParams params;
  params.max_gss = a.max_gss;
  params.result_field = a.result_field;
  params.tie_break = lpa::parse_tie_break(a.tie_break);
  params.rng_seed = a.seed;
  params.workers = a.workers == 0 ? default_workers() : a.workers;
  if (params.tie_break == lpa::TieBreak::kRandom && !params.rng_seed) {
    throw UsageError("--tie-break random needs --seed");
  }
  if (!a.result_field.empty() && a.result_field.front() == '_') {
    throw UsageError("--result-field must not start with '_'");
  }
  if (a.progress) {
    params.on_status = [&err](const lpa::PregelStatus& s) {
      err << api::to_body({{"step", s.step},
                           {"active", s.active_count},
                           {"messages", s.messages},
                           {"converged", s.converged}})
          << '\n';
    };
  }

  GraphStore store = load_store(a.store);
  if (!store.has_graph(a.graph)) throw Error(ErrorCode::kNotFound, "unknown graph '" + a.graph + "'");
  const auto partition = lpa::detect_communities(store, a.graph, params);
  lpa::annotate_graph(store, a.graph, partition, a.result_field);
  store.save(a.store);

  const auto rows = lpa::partition_stats(partition, store);
  if (!a.table.empty()) {
    std::ofstream table(a.table, std::ios::binary | std::ios::trunc);
    table << lpa::format_partition_table(rows);
    if (!table) throw Error(ErrorCode::kIo, "cannot write " + a.table);
  }
  Json per_type = Json::array();
  for (const auto& row : rows) {
    per_type.push_back(
        {{"type", row.type}, {"vertices", row.vertices}, {"communities", row.communities}});
  }
  print(out, {{"graph", a.graph},
              {"vertices", partition.size()},
              {"supersteps_run", partition.supersteps_run()},
              {"converged", partition.converged()},
              {"community_count", partition.community_count()},
              {"tie_break", a.tie_break},
              {"per_type_table", std::move(per_type)}});
  return kExitOk;
}

// ---- stats ------------------------------------------------------------------

struct StatsArgs {
  fs::path store;
  std::string graph = std::string(ingest::kDefaultGraphName);
  std::string result_field = std::string(kDefaultCommunityField);
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const GraphStore store = load_store(a.store);
  print(out, analytics::graph_statistics(store, a.graph, a.result_field));
  return kExitOk;
}

// ---- query ------------------------------------------------------------------

struct QueryArgs {
  fs::path store;
  std::string start;
  long long min_depth = 1;
  long long max_depth = 2;
  std::string direction = "ANY";
  std::string graph = std::string(ingest::kDefaultGraphName);
  std::optional<CommunityId> community;
  std::string result_field = std::string(kDefaultCommunityField);
  std::size_t cap = traversal::kDefaultVertexCap;
  bool distance_mode = false;
};

int cmd_query(const QueryArgs& a, std::ostream& out, std::ostream& err) {
  if (a.min_depth < 1) throw UsageError("--min must be 1 or greater");
  if (a.max_depth < a.min_depth) throw UsageError("--max must be greater than or equal to --min");
  if (a.cap < 1) throw UsageError("--cap must be at least 1");

  const GraphStore store = load_store(a.store);
  traversal::TraversalSpec spec;
  spec.start = a.start;
  spec.min_depth = static_cast<std::size_t>(a.min_depth);
  spec.max_depth = static_cast<std::size_t>(a.max_depth);
  spec.direction = parse_direction(a.direction);
  spec.graph = a.graph;
  spec.community_filter = a.community;
  spec.community_field = a.result_field;
  spec.vertex_cap = a.cap;
  spec.max_expansions = api::ServiceOptions{}.max_expansions;
  spec.distance_mode = a.distance_mode;
  const auto result = traversal::traverse(store, spec);
  if (result.truncated) {
    err << "result truncated at " << a.cap << " vertices or the expansion budget\n";
  }
  print(out, api::slim_graph(result, a.result_field));
  return kExitOk;
}

// ---- serve ------------------------------------------------------------------

int cmd_serve(const api::ServeConfig& config, std::ostream& err) {
  api::serve(config, err);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bibliographic collaboration graph: ingest, community detection, analytics, queries",
               "graphcomm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const auto store_option = [](CLI::App* cmd, fs::path& target) {
    cmd->add_option("--store", target, "Store directory")->required()->envname(kStoreEnv);
  };
  const auto graph_option = [](CLI::App* cmd, std::string& target) {
    cmd->add_option("--graph", target, "Named graph")->capture_default_str();
  };

  IngestArgs ingest_args;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse bibliographic XML into a new store");
  ingest_cmd->add_option("--input", ingest_args.input, "XML dump")->required();
  store_option(ingest_cmd, ingest_args.store);
  ingest_cmd->add_option("--chunk-lines", ingest_args.chunk_lines, "Lines per chunk")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--emit-jsonl", ingest_args.emit_jsonl,
                         "Also write parsed entries as JSON lines to this file");
  ingest_cmd->add_flag("--force", ingest_args.force, "Replace an existing store");
  ingest_cmd->add_flag("--keep-chunks", ingest_args.keep_chunks,
                       "Keep the repaired file and chunks under <store>/.work");
  ingest_cmd->add_option("--unknown-entities", ingest_args.unknown_entities,
                         "Undeclared entity references: pass or reject")
      ->capture_default_str()
      ->check(CLI::IsMember({"pass", "reject"}));

  DetectArgs detect_args;
  auto* detect_cmd = app.add_subcommand("detect", "Run label propagation and annotate vertices");
  store_option(detect_cmd, detect_args.store);
  graph_option(detect_cmd, detect_args.graph);
  detect_cmd->add_option("--max-gss", detect_args.max_gss, "Superstep limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  detect_cmd->add_option("--result-field", detect_args.result_field, "Vertex attribute to write")
      ->capture_default_str();
  detect_cmd->add_option("--tie-break", detect_args.tie_break, "min_id or random")
      ->capture_default_str()
      ->check(CLI::IsMember({"min_id", "random"}));
  detect_cmd->add_option("--seed", detect_args.seed, "Seed for random tie-breaking");
  detect_cmd->add_option("--workers", detect_args.workers, "Worker threads (0: all cores)")
      ->capture_default_str();
  detect_cmd->add_flag("--progress", detect_args.progress,
                       "Emit one JSON status line per superstep on stderr");
  detect_cmd->add_option("--table", detect_args.table,
                         "Also write the per-type table (tab separated) to this file");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Graph metrics and modularity of the partition");
  store_option(stats_cmd, stats_args.store);
  graph_option(stats_cmd, stats_args.graph);
  stats_cmd->add_option("--result-field", stats_args.result_field, "Community attribute")
      ->capture_default_str();

  QueryArgs query_args;
  auto* query_cmd = app.add_subcommand("query", "Depth-bounded neighborhood as SlimGraph JSON");
  store_option(query_cmd, query_args.store);
  query_cmd->add_option("--start", query_args.start, "Start vertex handle")->required();
  query_cmd->add_option("--min", query_args.min_depth, "Minimum depth")->capture_default_str();
  query_cmd->add_option("--max", query_args.max_depth, "Maximum depth")->capture_default_str();
  query_cmd->add_option("--direction", query_args.direction, "ANY, OUTBOUND or INBOUND")
      ->capture_default_str()
      ->transform(CLI::IsMember({"ANY", "OUTBOUND", "INBOUND"}, CLI::ignore_case));
  graph_option(query_cmd, query_args.graph);
  query_cmd->add_option("--community", query_args.community,
                        "Only follow vertices of this community");
  query_cmd->add_option("--result-field", query_args.result_field, "Community attribute")
      ->capture_default_str();
  query_cmd->add_option("--cap", query_args.cap, "Maximum non-start vertices")
      ->capture_default_str();
  query_cmd->add_flag("--distance-mode", query_args.distance_mode,
                      "Select vertices by shortest distance instead of path length");

  api::ServeConfig serve_config;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP query service");
  store_option(serve_cmd, serve_config.store_path);
  serve_cmd->add_option("--port", serve_config.port, "Listen port")
      ->capture_default_str()
      ->envname(kPortEnv)
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", serve_config.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--graph", serve_config.service.graph_name, "Named graph");
  serve_cmd->add_option("--suggestion-limit", serve_config.service.suggestion_limit,
                        "Maximum suggestions per request")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  serve_cmd->add_option("--vertex-cap", serve_config.service.vertex_cap,
                        "Maximum non-start vertices per graph response")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest_args, out, err);
    if (*detect_cmd) return cmd_detect(detect_args, out, err);
    if (*stats_cmd) return cmd_stats(stats_args, out);
    if (*query_cmd) return cmd_query(query_args, out, err);
    if (*serve_cmd) return cmd_serve(serve_config, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace graphcomm::cli
