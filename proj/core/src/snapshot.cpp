#include "snse/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace snse {

namespace {

constexpr char kMagic[4] = {'S', 'N', 'S', 'E'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

void write_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (bits >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 8);
}

double read_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

// lexicographic iteration over the box prod [-n_a, n_a]
template <class F>
void for_each_box_mode(int dim, const MultiIndex& n, F&& f) {
  int k[3] = {0, 0, 0};
  for (int a = 0; a < dim; ++a) k[a] = -n[a];
  while (true) {
    f(k);
    int a = dim - 1;
    while (a >= 0) {
      if (++k[a] <= n[a]) break;
      k[a] = -n[a];
      --a;
    }
    if (a < 0) break;
  }
}

}  // namespace

void save_snapshot(const std::string& path, const SpectralField& F,
                   const MultiIndex& box, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_snapshot: cannot open " + path);
  os.write(kMagic, 4);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(F.grid.dim));
  write_u32(os, static_cast<std::uint32_t>(F.comps));
  for (int a = 0; a < F.grid.dim; ++a)
    write_u32(os, static_cast<std::uint32_t>(box[a]));
  write_f64(os, time);
  for (int c = 0; c < F.comps; ++c) {
    for_each_box_mode(F.grid.dim, box, [&](const int k[3]) {
      const Complex z = F.mode(c, k);
      write_f64(os, z.real());
      write_f64(os, z.imag());
    });
  }
  if (!os) throw std::runtime_error("save_snapshot: write failed for " + path);
}

Snapshot load_snapshot(const std::string& path, const Grid& grid) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_snapshot: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_snapshot: bad magic in " + path);
  const std::uint32_t version = read_u32(is);
  if (version != kVersion)
    throw std::runtime_error("load_snapshot: unsupported version");
  const int dim = static_cast<int>(read_u32(is));
  const int comps = static_cast<int>(read_u32(is));
  if (dim != grid.dim)
    throw std::runtime_error("load_snapshot: dimension mismatch");
  Snapshot snap;
  snap.box = {0, 0, 0};
  for (int a = 0; a < dim; ++a) snap.box[a] = static_cast<int>(read_u32(is));
  for (int a = 0; a < dim; ++a)
    if (2 * snap.box[a] + 1 > grid.points)
      throw std::runtime_error("load_snapshot: grid too small for stored box");
  snap.time = read_f64(is);
  snap.field = SpectralField(grid, comps);
  for (int c = 0; c < comps; ++c) {
    for_each_box_mode(dim, snap.box, [&](const int k[3]) {
      const double re = read_f64(is);
      const double im = read_f64(is);
      snap.field.mode(c, k) = Complex(re, im);
    });
  }
  if (!is) throw std::runtime_error("load_snapshot: truncated file " + path);
  return snap;
}

}  // namespace snse
