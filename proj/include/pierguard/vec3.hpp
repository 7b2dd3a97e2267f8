#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>

namespace pierguard {

/// 3D point / vector in world units.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  constexpr bool operator==(const Vec3&) const = default;

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr double squaredNorm() const { return dot(*this); }
  double norm() const { return std::sqrt(squaredNorm()); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double distance(const Vec3& a, const Vec3& b) { return (b - a).norm(); }
inline constexpr double squaredDistance(const Vec3& a, const Vec3& b) { return (b - a).squaredNorm(); }

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

/// Integer voxel coordinate.
struct Index3 {
  int x = 0;
  int y = 0;
  int z = 0;

  constexpr bool operator==(const Index3&) const = default;
  constexpr Index3 operator+(const Index3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Index3 operator-(const Index3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr std::int64_t volume() const {
    return static_cast<std::int64_t>(x) * static_cast<std::int64_t>(y) * static_cast<std::int64_t>(z);
  }
};

inline std::ostream& operator<<(std::ostream& os, const Index3& v) {
  return os << '[' << v.x << ", " << v.y << ", " << v.z << ']';
}

}  // namespace pierguard
