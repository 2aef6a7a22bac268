#include "mbkdv/checkpoint.hpp"

#include "mbkdv/errors.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace mbkdv {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
constexpr const char* kFormat = "mbkdv-checkpoint-1";

std::string pack(const std::vector<Complex>& c) {
  std::string bytes(c.size() * 16, '\0');
  std::size_t pos = 0;
  for (const auto& z : c) {
    for (double x : {z.real(), z.imag()}) {
      auto bits = std::bit_cast<std::uint64_t>(x);
      for (int b = 0; b < 8; ++b) bytes[pos++] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    }
  }
  return base64_encode(bytes);
}

std::vector<Complex> unpack(const std::string& text, std::size_t n) {
  const std::string bytes = base64_decode(text);
  if (bytes.size() != n * 16) throw Error(ErrorCode::ConfigInvalid, "checkpoint payload length mismatch");
  std::vector<Complex> c(n);
  std::size_t pos = 0;
  auto next = [&] {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t(static_cast<unsigned char>(bytes[pos++])) << (8 * b);
    return std::bit_cast<double>(bits);
  };
  for (auto& z : c) {
    const double re = next();
    const double im = next();
    z = {re, im};
  }
  return c;
}

}  // namespace

std::string base64_encode(const std::string& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (std::uint32_t(std::uint8_t(bytes[i])) << 16) |
                            (std::uint32_t(std::uint8_t(bytes[i + 1])) << 8) | std::uint8_t(bytes[i + 2]);
    for (int s = 18; s >= 0; s -= 6) out += kAlphabet[(v >> s) & 63u];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest > 0) {
    std::uint32_t v = std::uint32_t(std::uint8_t(bytes[i])) << 16;
    if (rest == 2) v |= std::uint32_t(std::uint8_t(bytes[i + 1])) << 8;
    out += kAlphabet[(v >> 18) & 63u];
    out += kAlphabet[(v >> 12) & 63u];
    out += rest == 2 ? kAlphabet[(v >> 6) & 63u] : '=';
    out += '=';
  }
  return out;
}

std::string base64_decode(const std::string& text) {
  std::array<int, 256> table;
  table.fill(-1);
  for (int k = 0; k < 64; ++k) table[static_cast<unsigned char>(kAlphabet[k])] = k;
  if (text.size() % 4 != 0) throw Error(ErrorCode::ConfigInvalid, "base64 length not a multiple of 4");
  std::string out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t v = 0;
    int pad = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const char ch = text[i + k];
      int d = 0;
      if (ch == '=' && i + 4 == text.size() && k >= 2) {
        ++pad;
      } else {
        d = table[static_cast<unsigned char>(ch)];
        if (d < 0 || pad > 0) throw Error(ErrorCode::ConfigInvalid, "invalid base64 character");
      }
      v = (v << 6) | static_cast<std::uint32_t>(d);
    }
    out += static_cast<char>((v >> 16) & 0xffu);
    if (pad < 2) out += static_cast<char>((v >> 8) & 0xffu);
    if (pad < 1) out += static_cast<char>(v & 0xffu);
  }
  return out;
}

nlohmann::json checkpoint_to_json(const Checkpoint& cp) {
  return {
      {"format", kFormat},
      {"byte_order", "little-endian"},
      {"value_type", "float64 interleaved re,im"},
      {"grid", {{"lambda", to_string(cp.grid.lambda_exact())}, {"n_points", cp.grid.size()}}},
      {"alpha", cp.alpha},
      {"p", cp.p},
      {"q", cp.q},
      {"time", cp.state.time},
      {"u_hat", pack(cp.state.u_hat)},
      {"v_hat", pack(cp.state.v_hat)},
  };
}

Checkpoint checkpoint_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) throw Error(ErrorCode::ConfigInvalid, "unknown checkpoint format");
    const auto& g = j.at("grid");
    TorusGrid grid(parse_rational(g.at("lambda").get<std::string>()), g.at("n_points").get<std::size_t>());
    FieldPair state;
    state.u_hat = unpack(j.at("u_hat").get<std::string>(), grid.size());
    state.v_hat = unpack(j.at("v_hat").get<std::string>(), grid.size());
    state.time = j.at("time").get<double>();
    return Checkpoint{grid, std::move(state), j.at("alpha").get<double>(), j.at("p").get<double>(),
                      j.at("q").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path.string());
  out << checkpoint_to_json(cp).dump(2) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("malformed checkpoint: ") + e.what());
  }
  return checkpoint_from_json(j);
}

}  // namespace mbkdv
