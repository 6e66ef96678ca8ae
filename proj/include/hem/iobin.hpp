#pragma once

#include <string>
#include <vector>

#include "hem/types.hpp"

namespace hem {

// HEM1: 4-byte magic, uint64 rows, uint64 cols, then rows*cols interleaved
// (re, im) doubles in row-major order, little endian throughout.
void save_matrix(const MatC& m, const std::string& path);
MatC load_matrix(const std::string& path);

// HEMI: 4-byte magic, uint64 count, int64 values. Pivot/permutation storage.
void save_ints(const std::vector<int64_t>& v, const std::string& path);
std::vector<int64_t> load_ints(const std::string& path);

bool file_exists(const std::string& path);

// FNV-1a 64-bit, the digest used for cache keys.
uint64_t fnv1a(const std::vector<std::byte>& data, uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace hem
