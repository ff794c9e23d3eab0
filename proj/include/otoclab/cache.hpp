// cache.hpp — on-disk binary store for eigendecompositions
//
// File layout (version 1, little-endian):
//   bytes 0..7   magic "OTOCEIGD"
//   u32          version = 1
//   u32          hamiltonian kind (0 composite, 1 boson, 2 plus, 3 minus)
//   i32          n (boson number)
//   i32          dim
//   u32          has_parities (0/1)
//   f64 x4       u, j, j_a, w
//   f64 x dim    energies, ascending
//   f64 x dim^2  states, row-major
//   i32 x dim    parities (present iff has_parities)
//
// Files are named otoc-<fnv1a64 of kind+params>.eigd and written through a
// temp file + rename so concurrent readers never see a partial file.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "otoclab/spectral.hpp"

namespace otoc {

enum class HamiltonianKind : std::uint32_t {
    composite = 0,
    boson = 1,
    plus = 2,
    minus = 3,
};

std::uint64_t fnv1a64(const void* data, std::size_t len);

std::string cache_key(const ModelParams& p, HamiltonianKind kind);

// Directory from OTOC_LAB_CACHE, if set and non-empty.
std::optional<std::filesystem::path> cache_dir_from_env();

// Returns the decomposition if a valid cache file with exactly matching
// parameters exists; any malformed or mismatching file is ignored.
std::optional<EigenDecomposition> cache_load(const std::filesystem::path& dir,
                                             const ModelParams& p, HamiltonianKind kind);

void cache_store(const std::filesystem::path& dir, const EigenDecomposition& d,
                 HamiltonianKind kind);

// Load-or-compute. dir = nullopt disables caching entirely.
EigenDecomposition diagonalize_cached(const ModelParams& p, HamiltonianKind kind,
                                      const std::optional<std::filesystem::path>& dir);

} // namespace otoc
