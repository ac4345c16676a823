#include "graphcomm/store/records.hpp"

#include "graphcomm/error.hpp"

namespace graphcomm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kAlreadyExists: return "already_exists";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUnavailable: return "unavailable";
  }
  return "unknown";
}

std::string_view to_string(CollectionKind kind) {
  return kind == CollectionKind::kVertex ? "vertex" : "edge";
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::kOutbound: return "OUTBOUND";
    case Direction::kInbound: return "INBOUND";
    case Direction::kAny: return "ANY";
  }
  return "ANY";
}

Direction parse_direction(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  if (upper == "OUTBOUND") return Direction::kOutbound;
  if (upper == "INBOUND") return Direction::kInbound;
  if (upper == "ANY") return Direction::kAny;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown direction '" + std::string(text) + "'");
}

std::optional<CommunityId> VertexRecord::community(std::string_view field) const {
  auto it = attributes.find(std::string(field));
  if (it == attributes.end()) return std::nullopt;
  if (it->is_number_integer()) return it->get<CommunityId>();
  return std::nullopt;
}

std::string VertexRecord::graph_name() const {
  auto it = attributes.find("graph_name");
  if (it != attributes.end() && it->is_string()) return it->get<std::string>();
  return {};
}

std::string make_handle(std::string_view collection, std::string_view key) {
  std::string handle;
  handle.reserve(collection.size() + key.size() + 1);
  handle.append(collection).push_back('/');
  handle.append(key);
  return handle;
}

std::optional<std::pair<std::string_view, std::string_view>> split_handle(
    std::string_view handle) {
  const auto slash = handle.find('/');
  if (slash == std::string_view::npos || slash == 0 ||
      slash + 1 == handle.size()) {
    return std::nullopt;
  }
  return std::pair{handle.substr(0, slash), handle.substr(slash + 1)};
}

}  // namespace graphcomm
