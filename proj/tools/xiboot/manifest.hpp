#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace xiboot::cli {

// Reproducibility record attached to every output. Timestamps are excluded
// from the determinism contract; so is the worker count, which never
// affects results.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters;
  std::uint64_t seed = 0;
  std::optional<std::string> input_digest;  // "fnv1a64:<16 hex digits>"
};

nlohmann::ordered_json to_json(const RunManifest& manifest);

std::uint64_t fnv1a64(std::string_view bytes);

// Content hash of a file, formatted for the manifest.
std::string digest_file(const std::string& path);

std::string utc_timestamp();

}  // namespace xiboot::cli
