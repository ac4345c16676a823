#include "graphcomm/ingest/chunker.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

#include "graphcomm/error.hpp"

namespace graphcomm::ingest {

ChunkSplitter::ChunkSplitter(std::size_t chunk_lines, Sink sink)
    : chunk_lines_(chunk_lines), sink_(std::move(sink)) {
  if (chunk_lines_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "chunk_lines must be positive");
  }
}

void ChunkSplitter::feed(std::string_view bytes) {
  tokenizer_.feed(bytes, [this](const XmlToken& t) { on_token(t); });
}

void ChunkSplitter::finish() {
  tokenizer_.finish([this](const XmlToken& t) { on_token(t); });
  close_chunk();
}

void ChunkSplitter::on_token(const XmlToken& token) {
  using Kind = XmlToken::Kind;
  if ((token.kind == Kind::kStartTag || token.kind == Kind::kEmptyTag) &&
      is_entry_tag(token.name)) {
    // An entry left open by a broken record must not hold the chunk hostage.
    if (at_line_start_ && lines_in_chunk_ >= chunk_lines_) close_chunk();
    in_entry_ = token.kind == Kind::kStartTag;
  } else if (token.kind == Kind::kEndTag && in_entry_ && is_entry_tag(token.name)) {
    in_entry_ = false;
  }
  emit(token.raw);
}

void ChunkSplitter::emit(std::string_view bytes) {
  while (!bytes.empty()) {
    const std::size_t nl = bytes.find('\n');
    const std::size_t take = nl == std::string_view::npos ? bytes.size() : nl + 1;
    sink_.append(bytes.substr(0, take));
    chunk_open_ = true;
    bytes.remove_prefix(take);
    if (nl == std::string_view::npos) {
      at_line_start_ = false;
      return;
    }
    at_line_start_ = true;
    ++lines_in_chunk_;
    if (lines_in_chunk_ >= chunk_lines_ && !in_entry_) close_chunk();
  }
}

void ChunkSplitter::close_chunk() {
  if (!chunk_open_) return;
  sink_.end_chunk();
  chunk_open_ = false;
  lines_in_chunk_ = 0;
  ++chunks_;
}

std::vector<std::string> split_chunks(std::string_view text, std::size_t chunk_lines) {
  std::vector<std::string> chunks(1);
  ChunkSplitter splitter(chunk_lines,
                         {[&chunks](std::string_view b) { chunks.back().append(b); },
                          [&chunks] { chunks.emplace_back(); }});
  splitter.feed(text);
  splitter.finish();
  chunks.pop_back();
  return chunks;
}

std::vector<std::filesystem::path> split_chunks(std::istream& in,
                                                const std::filesystem::path& directory,
                                                std::size_t chunk_lines,
                                                std::string_view stem) {
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> paths;
  std::unique_ptr<std::ofstream> out;

  auto append = [&](std::string_view bytes) {
    if (!out) {
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "_%05zu.xml", paths.size());
      paths.push_back(directory / (std::string(stem) + suffix));
      out = std::make_unique<std::ofstream>(paths.back(), std::ios::binary);
      if (!*out) throw Error(ErrorCode::kIo, "cannot create " + paths.back().string());
    }
    out->write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  };
  auto end_chunk = [&] {
    out->close();
    if (!*out) throw Error(ErrorCode::kIo, "failed writing " + paths.back().string());
    out.reset();
  };

  ChunkSplitter splitter(chunk_lines, {append, end_chunk});
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = in.gcount();
    if (got <= 0) break;
    splitter.feed({buffer.data(), static_cast<std::size_t>(got)});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading chunker input");
  splitter.finish();
  return paths;
}

}  // namespace graphcomm::ingest
