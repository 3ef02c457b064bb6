#pragma once

#include <filesystem>

#include "srt/core.hpp"

namespace srt::io {

// SRTVOL: "SRTVOL 1\n", "Nx Lz dx dz\n", then (2Nx+1)^2 (Lz+1) little-endian
// float64, n3 slowest and n1 fastest.
// SRTDAT: "SRTDAT 1\n", "K L M a1 a2 H r0\n", then K (2L+1) (M+1)
// little-endian float64, k slowest and l fastest.
// Header reals are written in shortest round-trip form, so read(write(x))
// is bit-identical.

void write_volume(const Volume& v, const std::filesystem::path& path);
Volume read_volume(const std::filesystem::path& path);

void write_data(const DataGrid& d, const std::filesystem::path& path);
DataGrid read_data(const std::filesystem::path& path);

}  // namespace srt::io
