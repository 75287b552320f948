#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "srh/field.hpp"

namespace srh {

// BSFS field snapshots: magic "BSFS", u32 version, u8 grid kind (0 radial,
// 1 periodic), i64 n, f64 extent, u8 space tag, then (re,im) double pairs in
// row-major mode order. All integers and doubles little-endian.
inline constexpr std::uint32_t bsfs_version = 1;

void write_bsfs(const std::string& path, const SpectralField& f);
SpectralField read_bsfs(const std::string& path);

// Real arrays (B snapshots) travel as complex data with zero imaginary parts.
void write_bsfs_real(const std::string& path, const std::vector<double>& v,
                     const GridSpec& g, Space space);

}  // namespace srh
