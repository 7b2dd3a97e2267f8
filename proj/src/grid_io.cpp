#include "pierguard/grid_io.hpp"

#include <fstream>
#include <iterator>
#include <limits>

#include "byte_io.hpp"

namespace pierguard {

namespace {
constexpr std::string_view kPgridMagic{"PGRID\x01", 6};
}

std::vector<std::uint8_t> encodePgrid(const LabelGrid& grid) {
  if (static_cast<std::int64_t>(grid.values.size()) != grid.dims.volume()) {
    throw std::invalid_argument("label grid size does not match dims");
  }
  detail::ByteWriter w;
  w.raw(kPgridMagic);
  w.u32(static_cast<std::uint32_t>(grid.dims.x));
  w.u32(static_cast<std::uint32_t>(grid.dims.y));
  w.u32(static_cast<std::uint32_t>(grid.dims.z));
  w.f64(grid.voxel_size);
  w.bytes(grid.values);
  return w.take();
}

LabelGrid decodePgrid(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  detail::ByteReader r(bytes, "PGRID");
  r.expectMagic(kPgridMagic);
  const std::uint32_t dx = r.u32();
  const std::uint32_t dy = r.u32();
  const std::uint32_t dz = r.u32();
  const double voxel_size = r.f64();
  constexpr auto kMaxDim = static_cast<std::uint32_t>(std::numeric_limits<int>::max());
  if (dx == 0 || dy == 0 || dz == 0 || dx > kMaxDim || dy > kMaxDim || dz > kMaxDim) r.fail("invalid dims");
  if (!(voxel_size > 0.0)) r.fail("voxel_size must be positive");
  const std::uint64_t count = std::uint64_t{dx} * dy * dz;
  if (count > r.remaining()) r.fail("truncated payload");
  const auto payload = r.bytes(static_cast<std::size_t>(count));
  if (consumed) {
    *consumed = r.position();
  } else if (r.remaining() != 0) {
    r.fail("trailing bytes");
  }
  return LabelGrid{{static_cast<int>(dx), static_cast<int>(dy), static_cast<int>(dz)},
                   voxel_size,
                   std::vector<std::uint8_t>(payload.begin(), payload.end())};
}

std::vector<std::uint8_t> readFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void writeFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace pierguard
