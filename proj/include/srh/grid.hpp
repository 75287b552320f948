#pragma once
#include <array>
#include <cstddef>
#include <cstdint>

namespace srh {

enum class GridKind : std::uint8_t { Radial3D = 0, Periodic3D = 1 };
enum class Space : std::uint8_t { Physical = 0, Fourier = 1 };

// Geometry of the computational domain.
//
// Radial3D: points r_j = j*extent/n and modes rho_j = j*pi/extent for
// j = 1..n, stored at index j-1. The j = n slots sit on the homogeneous
// boundary r = r_max resp. the sine mode that vanishes at every grid point;
// both stay identically zero through the transforms.
//
// Periodic3D: n^3 points x = (extent/n)*j on [0,extent)^3 in row-major order,
// modes (2pi/extent)*k with integer k wrapped to [-n/2, n/2).
struct GridSpec {
  GridKind kind = GridKind::Radial3D;
  int n = 0;
  double extent = 0.0;
  bool dealias = false;

  void validate() const;  // throws contract_error
  std::size_t size() const;

  // Radial3D accessors; index i in [0,n) stands for j = i+1.
  double radial_r(std::size_t i) const;
  double radial_rho(std::size_t i) const;
  double dr() const;
  double drho() const;

  // Periodic3D accessors over the row-major linear index.
  std::array<int, 3> mode_ints(std::size_t idx) const;
  std::array<double, 3> mode_vec(std::size_t idx) const;
  std::array<double, 3> point(std::size_t idx) const;
  double min_image_radius(std::size_t idx) const;
  double dx() const;
  double mode_cell() const;  // (2pi/extent)^3

  // |xi| of a mode in either grid kind.
  double mode_radius(std::size_t idx) const;

  bool operator==(const GridSpec&) const = default;
};

}  // namespace srh
