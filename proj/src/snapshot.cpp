#include "srh/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "srh/errors.hpp"

namespace srh {

namespace {

void put_bytes(std::ofstream& out, std::uint64_t v, int nbytes) {
  char buf[8];
  for (int i = 0; i < nbytes; ++i) buf[i] = static_cast<char>(v >> (8 * i));
  out.write(buf, nbytes);
}

void put_f64(std::ofstream& out, double d) {
  put_bytes(out, std::bit_cast<std::uint64_t>(d), 8);
}

std::uint64_t get_bytes(std::ifstream& in, int nbytes) {
  char buf[8];
  in.read(buf, nbytes);
  std::uint64_t v = 0;
  for (int i = 0; i < nbytes; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i]))
         << (8 * i);
  return v;
}

double get_f64(std::ifstream& in) {
  return std::bit_cast<double>(get_bytes(in, 8));
}

}  // namespace

void write_bsfs(const std::string& path, const SpectralField& f) {
  f.grid.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("write_bsfs: cannot open '" + path + "'");
  out.write("BSFS", 4);
  put_bytes(out, bsfs_version, 4);
  put_bytes(out, static_cast<std::uint64_t>(f.grid.kind), 1);
  put_bytes(out, static_cast<std::uint64_t>(f.grid.n), 8);
  put_f64(out, f.grid.extent);
  put_bytes(out, static_cast<std::uint64_t>(f.space), 1);
  for (const auto& z : f.data) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  out.flush();
  if (!out) throw config_error("write_bsfs: short write to '" + path + "'");
}

SpectralField read_bsfs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("read_bsfs: cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "BSFS", 4) != 0)
    throw config_error("read_bsfs: '" + path + "' is not a BSFS file");
  const auto version = static_cast<std::uint32_t>(get_bytes(in, 4));
  if (version != bsfs_version)
    throw config_error("read_bsfs: unsupported version " +
                       std::to_string(version));
  const auto kind = get_bytes(in, 1);
  const auto n = static_cast<std::int64_t>(get_bytes(in, 8));
  const double extent = get_f64(in);
  const auto space = get_bytes(in, 1);
  if (kind > 1 || space > 1 || n <= 0 || n > (1 << 20))
    throw config_error("read_bsfs: corrupt header in '" + path + "'");

  GridSpec g{static_cast<GridKind>(kind), static_cast<int>(n), extent, false};
  try {
    g.validate();
  } catch (const contract_error& e) {
    throw config_error(std::string("read_bsfs: bad grid header: ") + e.what());
  }
  SpectralField f = SpectralField::zeros(g, static_cast<Space>(space));
  for (auto& z : f.data) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    z = {re, im};
  }
  if (!in) throw config_error("read_bsfs: truncated data in '" + path + "'");
  char extra;
  if (in.read(&extra, 1))
    throw config_error("read_bsfs: trailing bytes in '" + path + "'");
  return f;
}

void write_bsfs_real(const std::string& path, const std::vector<double>& v,
                     const GridSpec& g, Space space) {
  if (v.size() != g.size())
    throw contract_error("write_bsfs_real: size mismatch");
  SpectralField f = SpectralField::zeros(g, space);
  for (std::size_t i = 0; i < v.size(); ++i) f.data[i] = v[i];
  write_bsfs(path, f);
}

}  // namespace srh
