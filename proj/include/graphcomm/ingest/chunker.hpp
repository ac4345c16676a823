#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "graphcomm/ingest/xml_tokenizer.hpp"

namespace graphcomm::ingest {

inline constexpr std::size_t kDefaultChunkLines = 1'000'000;

// Splits repaired XML into chunks of roughly `chunk_lines` lines without
// cutting an entry: once a chunk holds chunk_lines lines it is closed at the
// next line end that is outside every entry (or before the next entry start,
// if an entry was never closed). Concatenating the chunks reproduces the
// input byte for byte.
class ChunkSplitter {
 public:
  struct Sink {
    std::function<void(std::string_view)> append;
    std::function<void()> end_chunk;
  };

  ChunkSplitter(std::size_t chunk_lines, Sink sink);

  void feed(std::string_view bytes);
  void finish();

  std::size_t chunk_count() const { return chunks_; }

 private:
  void on_token(const XmlToken& token);
  void emit(std::string_view bytes);
  void close_chunk();

  std::size_t chunk_lines_;
  Sink sink_;
  XmlTokenizer tokenizer_;
  std::size_t lines_in_chunk_ = 0;
  std::size_t chunks_ = 0;
  bool chunk_open_ = false;
  bool at_line_start_ = true;
  bool in_entry_ = false;
};

std::vector<std::string> split_chunks(std::string_view text,
                                      std::size_t chunk_lines = kDefaultChunkLines);

// Writes <directory>/<stem>_NNNNN.xml files and returns their paths in order.
std::vector<std::filesystem::path> split_chunks(
    std::istream& in, const std::filesystem::path& directory,
    std::size_t chunk_lines = kDefaultChunkLines, std::string_view stem = "chunk");

}  // namespace graphcomm::ingest
