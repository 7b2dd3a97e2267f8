#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pierguard/grid_map.hpp"

namespace pierguard {

// PGRID layout: "PGRID\x01", u32 LE dims x/y/z, f64 LE voxel_size, then one
// byte per voxel, x fastest.

std::vector<std::uint8_t> encodePgrid(const LabelGrid& grid);

/// Decodes one PGRID payload from the front of `bytes`. If `consumed` is
/// non-null it receives the payload length and trailing bytes are allowed;
/// otherwise trailing bytes are a FormatError.
LabelGrid decodePgrid(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

std::vector<std::uint8_t> readFileBytes(const std::filesystem::path& path);
void writeFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace pierguard
