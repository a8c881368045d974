#pragma once

// The integer matrix A of the weight-k diagonal recurrence
// X_{n-1} = X_n + A Y_n, its rank, the module of tail combinations that
// vanish for every n, bridge vectors onto the empty-word column, and
// numerical certification of vanishing combinations.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "mzv/words.hpp"

namespace mzv {

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>;

struct TailMatrix {
  unsigned k = 0;
  /// Duality representatives of weight k, lexicographic.
  std::vector<BinaryWord> rows;
  /// Representatives of weight k-1 down to 2 (lexicographic inside a weight),
  /// then the empty word.
  std::vector<BinaryWord> cols;
  IntMatrix entries;

  std::size_t col_index(const BinaryWord& rep) const;
  std::size_t row_index(const BinaryWord& rep) const;
};

/// Duality representatives (canonical_rep) of admissible words of the given
/// weight, lexicographic.
std::vector<BinaryWord> representatives(unsigned weight);

TailMatrix build_matrix(unsigned k);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_bareiss(const IntMatrix& m);
/// Integer basis of {y : y M = 0}; each vector primitive, first nonzero entry
/// positive, in reduced echelon order.
IntMatrix left_kernel(const IntMatrix& m);

struct KernelReport {
  unsigned k = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  /// rows - rank: combinations with L A = 0.
  std::size_t plain_dim = 0;
  IntMatrix plain_basis;
  /// Combinations whose image L A lies in the span of the vanishing
  /// combinations of lower weights (embedded in their column blocks); these
  /// vanish for every n as well. d_k is their count.
  std::size_t d_k = 0;
  IntMatrix basis;
};

/// Recursive over lower weights (memoized per process).
KernelReport kernel(unsigned k);

/// Rows of E for weight k: the lower-weight vanishing combinations placed in
/// their column blocks of A_k.
IntMatrix lower_relation_rows(unsigned k);

/// L A for an integer row vector L.
IntVector left_multiply(const IntVector& L, const TailMatrix& A);
/// True if v lies in the rational row span of M.
bool in_row_span(const IntVector& v, const IntMatrix& M);

struct BridgeResult {
  unsigned k = 0;
  IntVector L;
  mpz_class c;
};

/// L and c > 0 with L A = c e_last, if the empty-word column is reachable.
std::optional<BridgeResult> bridge(unsigned k);

struct VanishingReport {
  /// n, L.X_n, certificate for n = 0..n_max
  struct Row {
    unsigned long n = 0;
    mpq_class residual;
    mpq_class certificate;
  };
  std::vector<Row> rows;
  mpq_class max_residual;
  mpq_class max_certificate;
  unsigned long N = 0;
  bool certified() const;
};

/// Evaluates L.X_n for n = 0..n_max from one fixed-point dp run at d digits,
/// with certificate sum |L_i| times the dp error bound at n.
VanishingReport certify_vanishing(const IntVector& L, unsigned k, unsigned long n_max, unsigned digits);

/// Exact check of L.X_{n-1} - L.X_n = c n^-k / C(2n, n) for n = 1..N using
/// an exact dp run; returns the largest absolute deviation.
mpq_class bridge_step_deviation(const BridgeResult& b, unsigned long N);

std::string composition_label(const BinaryWord& w);

}  // namespace mzv
