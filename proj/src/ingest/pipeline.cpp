#include "graphcomm/ingest/pipeline.hpp"

#include <fstream>
#include <system_error>

#include "graphcomm/error.hpp"
#include "graphcomm/ingest/entry_parser.hpp"
#include "graphcomm/ingest/xml_repair.hpp"

namespace graphcomm::ingest {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kIo, "cannot read input '" + path.string() + "'");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open input '" + path.string() + "'");
  return in;
}

}  // namespace

DerivationReport ingest_file(const fs::path& input, GraphStore& store,
                             const IngestOptions& options) {
  std::ifstream raw = open_input(input);
  const fs::path work =
      options.work_dir.empty() ? fs::temp_directory_path() / "graphcomm-ingest"
                               : options.work_dir;
  const fs::path chunk_dir = work / "chunks";
  fs::remove_all(chunk_dir);
  fs::create_directories(chunk_dir);

  const fs::path repaired = work / "repaired.xml";
  {
    std::ofstream out(repaired, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + repaired.string());
    repair_xml(raw, out);
  }

  SourceEncoding encoding;
  std::vector<fs::path> chunks;
  {
    std::ifstream in(repaired, std::ios::binary);
    std::string head(512, '\0');
    in.read(head.data(), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));
    encoding = detect_encoding(head);
    in.clear();
    in.seekg(0);
    chunks = split_chunks(in, chunk_dir, options.chunk_lines);
  }

  std::ofstream jsonl;
  if (options.emit_jsonl) {
    jsonl.open(*options.emit_jsonl, std::ios::binary | std::ios::trunc);
    if (!jsonl) throw Error(ErrorCode::kIo, "cannot write " + options.emit_jsonl->string());
  }

  Deriver deriver(store);
  ParseOptions parse_options{options.unknown_entities, encoding};
  std::size_t malformed = 0;
  std::size_t unknown = 0;
  for (const auto& chunk : chunks) {
    std::ifstream in(chunk, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + chunk.string());
    ParseStats stats;
    parse_entries(
        in,
        [&](BibEntry&& entry) {
          if (jsonl.is_open()) jsonl << entry.to_import_json().dump() << '\n';
          deriver.add_vertices(entry);
          deriver.add_edges(entry);
        },
        parse_options, &stats);
    malformed += stats.malformed;
    unknown += stats.unknown_entities;
  }
  deriver.resolve_references();
  if (jsonl.is_open() && !jsonl.flush()) {
    throw Error(ErrorCode::kIo, "failed writing " + options.emit_jsonl->string());
  }

  if (!options.keep_chunks) {
    std::error_code ec;
    fs::remove_all(chunk_dir, ec);
    fs::remove(repaired, ec);
    if (fs::is_empty(work, ec)) fs::remove(work, ec);
  }

  DerivationReport report = deriver.report();
  report.malformed_entries = malformed;
  report.unknown_entities = unknown;
  return report;
}

}  // namespace graphcomm::ingest
