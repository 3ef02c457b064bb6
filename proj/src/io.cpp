#include "srt/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace srt::io {
namespace {

constexpr std::string_view kVolumeTag = "SRTVOL";
constexpr std::string_view kDataTag = "SRTDAT";
constexpr std::string_view kVersion = "1";

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(ErrorCode::MalformedHeader, std::string("cannot parse ") + what + " from '" + std::string(tok) + "'");
  }
  return value;
}

void write_payload(std::ofstream& out, std::span<const double> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (double v : values) {
      auto bits = __builtin_bswap64(std::bit_cast<std::uint64_t>(v));
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
}

struct RawFile {
  std::string header[2];
  std::vector<char> payload;
};

RawFile load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  RawFile raw;
  std::size_t pos = 0;
  for (auto& line : raw.header) {
    const std::size_t nl = contents.find('\n', pos);
    if (nl == std::string::npos) fail(ErrorCode::MalformedHeader, "missing header line in '" + path.string() + "'");
    line = contents.substr(pos, nl - pos);
    pos = nl + 1;
  }
  raw.payload.assign(contents.begin() + static_cast<std::ptrdiff_t>(pos), contents.end());
  return raw;
}

void check_tag(const std::string& line, std::string_view tag) {
  const auto tok = split(line);
  if (tok.size() != 2) fail(ErrorCode::MalformedHeader, "expected '<TAG> <version>' header, got '" + line + "'");
  if (tok[0] != tag) {
    if (tok[0] == kVolumeTag || tok[0] == kDataTag) {
      fail(ErrorCode::HeaderTag, "expected " + std::string(tag) + " file, found " + std::string(tok[0]));
    }
    fail(ErrorCode::MalformedHeader, "unknown file tag '" + std::string(tok[0]) + "'");
  }
  if (tok[1] != kVersion) fail(ErrorCode::Version, "unsupported " + std::string(tag) + " version " + std::string(tok[1]));
}

std::vector<double> decode_payload(const std::vector<char>& bytes, std::size_t count) {
  const std::size_t expected = count * sizeof(double);
  if (bytes.size() < expected) {
    fail(ErrorCode::Truncated, "payload has " + std::to_string(bytes.size()) + " bytes, expected " + std::to_string(expected));
  }
  if (bytes.size() > expected) fail(ErrorCode::MalformedHeader, "payload is longer than the header declares");
  std::vector<double> values(count);
  std::memcpy(values.data(), bytes.data(), expected);
  if constexpr (std::endian::native != std::endian::little) {
    for (double& v : values) v = std::bit_cast<double>(__builtin_bswap64(std::bit_cast<std::uint64_t>(v)));
  }
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "payload contains a non-finite value");
  }
  return values;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace

void write_volume(const Volume& v, const std::filesystem::path& path) {
  v.check_finite();
  auto out = open_out(path);
  out << kVolumeTag << ' ' << kVersion << '\n'
      << v.Nx() << ' ' << v.Lz() << ' ' << format_real(v.dx()) << ' ' << format_real(v.dz()) << '\n';
  write_payload(out, v.values());
  finish(out, path);
}

Volume read_volume(const std::filesystem::path& path) {
  const RawFile raw = load(path);
  check_tag(raw.header[0], kVolumeTag);
  const auto tok = split(raw.header[1]);
  if (tok.size() != 4) fail(ErrorCode::MalformedHeader, "volume shape line needs 'Nx Lz dx dz'");
  VolumeShape shape;
  shape.nx = parse_number<int>(tok[0], "Nx");
  shape.lz = parse_number<int>(tok[1], "Lz");
  shape.dx = parse_number<double>(tok[2], "dx");
  shape.dz = parse_number<double>(tok[3], "dz");
  shape.validate();
  return Volume(shape, decode_payload(raw.payload, shape.voxels()));
}

void write_data(const DataGrid& d, const std::filesystem::path& path) {
  d.check_finite();
  const ScanGeometry& g = d.geometry();
  auto out = open_out(path);
  out << kDataTag << ' ' << kVersion << '\n'
      << g.K << ' ' << g.L << ' ' << g.M << ' ' << format_real(g.a1) << ' ' << format_real(g.a2) << ' '
      << format_real(g.half_height) << ' ' << format_real(g.max_radius) << '\n';
  write_payload(out, d.values());
  finish(out, path);
}

DataGrid read_data(const std::filesystem::path& path) {
  const RawFile raw = load(path);
  check_tag(raw.header[0], kDataTag);
  const auto tok = split(raw.header[1]);
  if (tok.size() != 7) fail(ErrorCode::MalformedHeader, "data geometry line needs 'K L M a1 a2 H r0'");
  ScanGeometry g;
  g.K = parse_number<int>(tok[0], "K");
  g.L = parse_number<int>(tok[1], "L");
  g.M = parse_number<int>(tok[2], "M");
  g.a1 = parse_number<double>(tok[3], "a1");
  g.a2 = parse_number<double>(tok[4], "a2");
  g.half_height = parse_number<double>(tok[5], "H");
  g.max_radius = parse_number<double>(tok[6], "r0");
  g.validate();
  const std::size_t count = static_cast<std::size_t>(g.K) * (2 * static_cast<std::size_t>(g.L) + 1) *
                            (static_cast<std::size_t>(g.M) + 1);
  return DataGrid(g, decode_payload(raw.payload, count));
}

}  // namespace srt::io
