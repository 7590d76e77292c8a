#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qpcolor/coloring.hpp"
#include "qpcolor/graph.hpp"

namespace qpc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CorruptFileError : IoError {
  using IoError::IoError;
};
struct UnsupportedVersionError : IoError {
  using IoError::IoError;
};

std::array<unsigned char, 32> sha256_bytes(std::string_view data);
std::string sha256_hex(std::string_view data);

// Every binary artifact is written together with a UTF-8 JSON sidecar at
// path + ".json" holding the construction parameters and seed.  The binary
// embeds a SHA-256 digest of the sidecar bytes, so an edited or swapped
// sidecar is rejected on load.  All integers and floats are little-endian;
// adjacency is stored as packed upper triangles and re-symmetrized on load.
// Loaders throw CorruptFileError (bad magic, digest mismatch, truncation),
// UnsupportedVersionError (version bump), or IoError (filesystem trouble);
// load(save(x)) == x holds bit-exactly for every payload kind.
std::string sidecar_path(const std::string& path);

void save_family(const SphereFamily& family, const std::string& path);
SphereFamily load_family(const std::string& path);

void save_coloring(const SetColoring& coloring, const std::string& path);
SetColoring load_coloring(const std::string& path);

void save_graph(const SimpleGraph& g, const std::string& path);
SimpleGraph load_graph(const std::string& path);

void save_report(const nlohmann::json& report, const std::string& path);
nlohmann::json load_report(const std::string& path);

}  // namespace qpc
