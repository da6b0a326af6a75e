#pragma once

#include <map>
#include <optional>
#include <string>

#include "oba/sparse.hpp"
#include "oba/vec.hpp"

namespace oba {

/// A data matrix plus per-row targets. For classification the targets are
/// mapped to ±1 at load time; for regression they are kept verbatim.
struct Dataset {
  SparseMatrix a;
  std::vector<double> y;

  /// Targets as ±1 labels; throws if any value is neither −1 nor +1.
  std::vector<double> binary_labels() const;
};

/// LIBSVM text format: "<label> <idx>:<val> ...", 1-based strictly
/// increasing indices, '#' starts a comment, LF or CRLF line endings.
/// Labels are passed through `label_map` when given (default maps 0→−1 and
/// 1→+1, leaving everything else untouched). Malformed lines, duplicate or
/// non-increasing indices are reported with their line number.
Dataset read_libsvm(const std::string& path,
                    const std::optional<std::map<double, double>>& label_map =
                        std::nullopt);

/// Writes `ds` in LIBSVM format with 17 significant digits, so a read/write
/// round trip is exact.
void write_libsvm(const Dataset& ds, const std::string& path);

/// Scales every column by 1/max_i |A_ij| (all-zero columns untouched), so
/// entries land in [−1, 1].
Dataset normalize_features(const Dataset& ds);

struct SyntheticSpec {
  std::size_t n = 2;      // dimension; the generated matrix is n×n
  std::uint64_t seed = 0;
};

/// Seeded dense random test problem: labels ±1 with probability ½ each;
/// M = R + Rᵀ for R uniform on [0,1); M is shifted by −2λ_min(M)·I when
/// indefinite; the data matrix is the upper-triangular Cholesky factor of
/// the result. Deterministic for a fixed seed.
Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace oba
