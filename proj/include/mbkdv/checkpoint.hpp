#pragma once

#include "mbkdv/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace mbkdv {

/// State snapshot. Coefficients are stored as interleaved (re, im) IEEE-754 binary64
/// values in little-endian byte order, base64 encoded, FFT slot order.
struct Checkpoint {
  TorusGrid grid;
  FieldPair state;
  double alpha = 1.0;
  double p = 0.0;
  double q = 0.0;
};

nlohmann::json checkpoint_to_json(const Checkpoint& cp);
Checkpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string base64_encode(const std::string& bytes);
std::string base64_decode(const std::string& text);

}  // namespace mbkdv
