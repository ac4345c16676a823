#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>

#include "graphcomm/ingest/chunker.hpp"
#include "graphcomm/ingest/derive.hpp"
#include "graphcomm/ingest/entities.hpp"

namespace graphcomm::ingest {

struct IngestOptions {
  std::size_t chunk_lines = kDefaultChunkLines;
  std::filesystem::path work_dir;  // repaired file and chunks go here
  bool keep_chunks = false;
  std::optional<std::filesystem::path> emit_jsonl;  // BibEntries, one per line
  UnknownEntityPolicy unknown_entities = UnknownEntityPolicy::kPassThrough;
};

// repair → split → parse each chunk → derive vertices and edges into `store`.
DerivationReport ingest_file(const std::filesystem::path& input, GraphStore& store,
                             const IngestOptions& options);

}  // namespace graphcomm::ingest
