#include "hem/iobin.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace hem {

void save_matrix(const MatC& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "save_matrix: cannot open " + path);
  out.write("HEM1", 4);
  uint64_t rows = m.rows(), cols = m.cols();
  out.write(reinterpret_cast<const char*>(&rows), 8);
  out.write(reinterpret_cast<const char*>(&cols), 8);
  for (uint64_t i = 0; i < rows; ++i)
    for (uint64_t j = 0; j < cols; ++j) {
      double buf[2] = {m(i, j).real(), m(i, j).imag()};
      out.write(reinterpret_cast<const char*>(buf), 16);
    }
  require(out.good(), "save_matrix: write failed for " + path);
}

MatC load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "load_matrix: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  require(in.good() && std::string(magic, 4) == "HEM1", "load_matrix: bad magic in " + path);
  uint64_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), 8);
  in.read(reinterpret_cast<char*>(&cols), 8);
  MatC m(rows, cols);
  for (uint64_t i = 0; i < rows; ++i)
    for (uint64_t j = 0; j < cols; ++j) {
      double buf[2];
      in.read(reinterpret_cast<char*>(buf), 16);
      m(i, j) = cdouble(buf[0], buf[1]);
    }
  require(in.good(), "load_matrix: truncated file " + path);
  return m;
}

void save_ints(const std::vector<int64_t>& v, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "save_ints: cannot open " + path);
  out.write("HEMI", 4);
  uint64_t count = v.size();
  out.write(reinterpret_cast<const char*>(&count), 8);
  out.write(reinterpret_cast<const char*>(v.data()), 8 * count);
}

std::vector<int64_t> load_ints(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "load_ints: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  require(in.good() && std::string(magic, 4) == "HEMI", "load_ints: bad magic in " + path);
  uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), 8);
  std::vector<int64_t> v(count);
  in.read(reinterpret_cast<char*>(v.data()), 8 * count);
  require(in.good(), "load_ints: truncated file " + path);
  return v;
}

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

uint64_t fnv1a(const std::vector<std::byte>& data, uint64_t seed) {
  uint64_t h = seed;
  for (std::byte b : data) {
    h ^= static_cast<uint64_t>(b);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace hem
