#include <csignal>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "graphcomm/cli/cli.hpp"
#include "graphcomm/lpa/label_propagation.hpp"
#include "httplib.h"
#include "support/fixture_files.hpp"
#include "support/graph_fixtures.hpp"
#include "support/slim_schema.hpp"

using namespace graphcomm;
using graphcomm::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture() { return graphcomm::testing::fixture_path("dblp_extract.xml").string(); }

fs::path saved_store(const std::string& name, const graphcomm::testing::EdgeList& g) {
  const fs::path dir = graphcomm::testing::scratch_dir(name) / "store";
  graphcomm::testing::make_store(g).save(dir);
  return dir;
}

}  // namespace

TEST_CASE("ingest") {
  const fs::path root = graphcomm::testing::scratch_dir("cli_ingest");
  const std::string store = (root / "store").string();

  Run r = run({"ingest", "--input", fixture(), "--store", store});
  REQUIRE(r.code == 0);
  Json report = r.json();
  CHECK(report["publications"] == 4);
  CHECK(report["authors"] == 1);
  CHECK(report["schools"] == 1);
  CHECK(report["edges"] == 2);
  CHECK(fs::exists(root / "store" / "manifest.json"));
  CHECK_FALSE(fs::exists(root / "store" / ".work"));

  // An existing store is only replaced with --force.
  r = run({"ingest", "--input", fixture(), "--store", store});
  CHECK(r.code == 1);
  CHECK(r.err.find("--force") != std::string::npos);
  r = run({"ingest", "--input", fixture(), "--store", store, "--force", "--emit-jsonl",
           (root / "entries.jsonl").string(), "--keep-chunks", "--chunk-lines", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.json() == report);  // same counts on a rerun
  std::ifstream jsonl(root / "entries.jsonl");
  int lines = 0;
  for (std::string line; std::getline(jsonl, line);) {
    CHECK(Json::parse(line).is_object());
    ++lines;
  }
  CHECK(lines == 4);
  CHECK(fs::exists(root / "store" / ".work"));

  // Empty input: all-zero report.
  const fs::path empty = root / "empty.xml";
  std::ofstream(empty).close();
  r = run({"ingest", "--input", empty.string(), "--store", (root / "empty_store").string()});
  REQUIRE(r.code == 0);
  CHECK(r.json()["publications"] == 0);
  CHECK(r.json()["edges"] == 0);

  // Missing input names the path and leaves no store behind.
  r = run({"ingest", "--input", (root / "missing.xml").string(), "--store",
           (root / "other").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing.xml") != std::string::npos);
  CHECK_FALSE(fs::exists(root / "other"));

  CHECK(run({"ingest", "--input", fixture(), "--store", store, "--force", "--chunk-lines", "0"})
            .code == 2);
  CHECK(run({"ingest", "--store", store}).code == 2);
  CHECK(run({"ingest", "--input", fixture(), "--store", store, "--force", "--unknown-entities",
             "maybe"})
            .code == 2);
}

TEST_CASE("detect") {
  const fs::path store = saved_store("cli_detect", graphcomm::testing::barbell());
  Run r = run({"detect", "--store", store.string(), "--graph", "g", "--workers", "2",
               "--progress", "--table", (store.parent_path() / "table.tsv").string()});
  REQUIRE(r.code == 0);
  Json summary = r.json();
  CHECK(summary["community_count"] == 2);
  CHECK(summary["converged"] == true);
  CHECK(summary["supersteps_run"].get<int>() <= 10);
  CHECK(summary["per_type_table"].back()["type"] == "all types");

  // One status line per superstep on stderr.
  std::istringstream progress(r.err);
  int steps = 0;
  for (std::string line; std::getline(progress, line);) {
    const Json s = Json::parse(line);
    CHECK(s["step"] == ++steps);
  }
  CHECK(steps == summary["supersteps_run"]);

  // Annotation persisted; the written table parses back.
  const GraphStore loaded = GraphStore::load(store);
  CHECK(loaded.vertex("v/0").community() == CommunityId{0});
  CHECK(loaded.vertex("v/9").community() == CommunityId{5});
  const auto rows = lpa::parse_partition_table(
      graphcomm::testing::read_file(store.parent_path() / "table.tsv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == lpa::PartitionRow{"v", 10, 2});

  r = run({"detect", "--store", store.string(), "--graph", "g", "--max-gss", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["converged"] == false);
  CHECK(r.json()["supersteps_run"] == 1);

  CHECK(run({"detect", "--store", store.string(), "--graph", "missing"}).code == 1);
  CHECK(run({"detect", "--store", store.string(), "--graph", "g", "--tie-break", "random"}).code ==
        2);
  CHECK(run({"detect", "--store", store.string(), "--graph", "g", "--tie-break", "random",
             "--seed", "9"})
            .code == 0);
  CHECK(run({"detect", "--store", (store.parent_path() / "nothing").string(), "--graph", "g"})
            .code == 1);
  CHECK(run({"detect", "--store", store.string(), "--graph", "g", "--max-gss", "0"}).code == 2);
}

TEST_CASE("stats") {
  const fs::path store = saved_store("cli_stats", graphcomm::testing::two_triangles());
  {
    GraphStore s = GraphStore::load(store);
    for (int v = 0; v < 6; ++v) {
      s.set_vertex_attribute(graphcomm::testing::vh(v), "community", v < 3 ? 0 : 3);
    }
    s.save(store);
  }
  Run r = run({"stats", "--store", store.string(), "--graph", "g"});
  REQUIRE(r.code == 0);
  const Json stats = r.json();
  CHECK(stats["triangles"] == 2);
  CHECK(stats["modularity_M"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(stats["modularity_Q"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(stats["wcc_count"] == 2);

  // A store ingested from an empty file reports zeros.
  const fs::path root = graphcomm::testing::scratch_dir("cli_stats_empty");
  std::ofstream(root / "empty.xml").close();
  REQUIRE(run({"ingest", "--input", (root / "empty.xml").string(), "--store",
               (root / "store").string()})
              .code == 0);
  r = run({"stats", "--store", (root / "store").string()});
  REQUIRE(r.code == 0);
  CHECK(r.json()["vertices"] == 0);
  CHECK(r.json()["edges"] == 0);
  CHECK(r.json()["triangles"] == 0);
  CHECK(r.json()["wcc_count"] == 0);
  CHECK(r.json()["modularity_M"].is_null());
}

TEST_CASE("query") {
  const fs::path root = graphcomm::testing::scratch_dir("cli_query");
  const std::string store = (root / "store").string();
  REQUIRE(run({"ingest", "--input", fixture(), "--store", store}).code == 0);
  REQUIRE(run({"detect", "--store", store}).code == 0);
  std::string author;
  GraphStore::load(store).for_each_vertex("author", [&](const VertexRecord& v) {
    author = v.handle;
  });

  Run r = run({"query", "--store", store, "--start", author});
  REQUIRE(r.code == 0);
  const Json g = r.json();
  CHECK(graphcomm::testing::slim_graph_errors(g).empty());
  CHECK(g["startNode"]["graph_name"] == "Russell Turpin");
  CHECK(g["vertices"].size() == 3);  // author, thesis, school
  CHECK(g["communities"].size() == 1);

  r = run({"query", "--store", store, "--start", author, "--direction", "outbound", "--max", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["vertices"].size() == 2);

  CHECK(run({"query", "--store", store, "--start", author, "--min", "0"}).code == 2);
  CHECK(run({"query", "--store", store, "--start", author, "--min", "3", "--max", "2"}).code == 2);
  CHECK(run({"query", "--store", store, "--start", author, "--direction", "sideways"}).code == 2);
  r = run({"query", "--store", store, "--start", "author/none"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("store path from the environment") {
  const fs::path store = saved_store("cli_env", graphcomm::testing::barbell());
  ::setenv(cli::kStoreEnv, store.c_str(), 1);
  const Run r = run({"stats", "--graph", "g"});
  ::unsetenv(cli::kStoreEnv);
  CHECK(r.code == 0);
  CHECK(run({"stats", "--graph", "g"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("ingest") != std::string::npos);
}

TEST_CASE("serve drains and exits cleanly on SIGTERM") {
  const fs::path store = saved_store("cli_serve", graphcomm::testing::barbell());
  int pipe_fds[2];
  REQUIRE(::pipe(pipe_fds) == 0);
  const pid_t pid = ::fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    ::dup2(pipe_fds[1], STDERR_FILENO);
    ::close(pipe_fds[0]);
    ::close(pipe_fds[1]);
    ::execl(GRAPHCOMM_BINARY, GRAPHCOMM_BINARY, "serve", "--store", store.c_str(), "--host",
            "127.0.0.1", "--port", "0", "--graph", "g", static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(pipe_fds[1]);

  // Read stderr until the store is loaded; pick the port from the first line.
  std::string log;
  char buf[256];
  while (log.find("store loaded") == std::string::npos) {
    const ssize_t n = ::read(pipe_fds[0], buf, sizeof buf);
    if (n <= 0) break;
    log.append(buf, static_cast<std::size_t>(n));
  }
  REQUIRE(log.find("store loaded") != std::string::npos);
  const auto colon = log.find(':', log.find("listening on"));
  const int port = std::stoi(log.substr(colon + 1));

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(Json::parse(health->body)["vertices"] == 10);

  ::kill(pid, SIGTERM);
  int status = 0;
  ::waitpid(pid, &status, 0);
  while (true) {
    const ssize_t n = ::read(pipe_fds[0], buf, sizeof buf);
    if (n <= 0) break;
    log.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipe_fds[0]);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(log.find("stopped") != std::string::npos);
}
