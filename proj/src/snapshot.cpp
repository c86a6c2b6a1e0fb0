#include "pauli/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "pauli/errors.hpp"

namespace pauli {
namespace {

constexpr char kMagic[4] = {'P', 'W', 'F', '1'};

template <class T>
void put(std::ostream& os, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(bytes, sizeof(T));
}

template <class T>
T get(std::istream& is, const std::filesystem::path& path) {
  char bytes[sizeof(T)];
  if (!is.read(bytes, sizeof(T))) throw SnapshotError("snapshot " + path.string() + ": truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

std::ofstream open_out(const std::filesystem::path& path, const Grid& g, std::uint32_t count, bool complex_values) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SnapshotError("cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n));
  put<double>(os, g.box_length);
  put<std::uint32_t>(os, count);
  put<std::uint32_t>(os, complex_values ? 1u : 0u);
  return os;
}

void close_out(std::ofstream& os, const std::filesystem::path& path) {
  os.close();
  if (!os) throw SnapshotError("failed writing " + path.string());
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpinorField& u) {
  auto os = open_out(path, u.grid, 2, true);
  for (int c = 0; c < 2; ++c) {
    for (const cplx& z : u[c]) {
      put<double>(os, z.real());
      put<double>(os, z.imag());
    }
  }
  close_out(os, path);
}

void write_snapshot(const std::filesystem::path& path, const VectorField& v) {
  auto os = open_out(path, v.grid, 3, false);
  for (const auto& comp : v.components)
    for (double x : comp) put<double>(os, x);
  close_out(os, path);
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& f) {
  auto os = open_out(path, f.grid, 1, false);
  for (double x : f.values) put<double>(os, x);
  close_out(os, path);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot open snapshot " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw SnapshotError("snapshot " + path.string() + ": bad magic (expected PWF1)");
  }
  Snapshot s;
  const auto n = get<std::uint32_t>(is, path);
  s.box_length = get<double>(is, path);
  const auto count = get<std::uint32_t>(is, path);
  const auto flag = get<std::uint32_t>(is, path);
  if (n < 4 || n % 2 != 0 || n > 4096) throw SnapshotError("snapshot " + path.string() + ": invalid n");
  if (count == 0 || count > 16) throw SnapshotError("snapshot " + path.string() + ": invalid component count");
  if (flag > 1) throw SnapshotError("snapshot " + path.string() + ": invalid complex flag");
  s.n = static_cast<int>(n);
  s.complex_values = flag == 1;
  const std::size_t size = static_cast<std::size_t>(n) * n * n;
  for (std::uint32_t c = 0; c < count; ++c) {
    if (s.complex_values) {
      ComplexArray data(size);
      for (auto& z : data) {
        const double re = get<double>(is, path);
        const double im = get<double>(is, path);
        z = {re, im};
      }
      s.complex_components.push_back(std::move(data));
    } else {
      RealArray data(size);
      for (auto& x : data) x = get<double>(is, path);
      s.real_components.push_back(std::move(data));
    }
  }
  if (is.peek() != std::char_traits<char>::eof()) throw SnapshotError("snapshot " + path.string() + ": trailing bytes");
  return s;
}

SpinorField read_spinor(const std::filesystem::path& path) {
  Snapshot s = read_snapshot(path);
  if (!s.complex_values || s.component_count() != 2) {
    throw SnapshotError("snapshot " + path.string() + " does not hold a spinor (need 2 complex components)");
  }
  SpinorField u(make_grid(s.n, s.box_length));
  u.u1 = std::move(s.complex_components[0]);
  u.u2 = std::move(s.complex_components[1]);
  return u;
}

}  // namespace pauli
