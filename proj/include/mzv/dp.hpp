#pragma once

// All MZVs of a subword-closed word set at once, by running the diagonal
// recurrence for u_n(v) from u_N = 0 down to n = 0.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "mzv/fixnum.hpp"
#include "mzv/words.hpp"

namespace mzv {

/// Targets plus every init/fin/mid part reachable from them (atoms
/// excluded), in shortlex order. Throws PreconditionError on non-admissible
/// or empty targets.
std::vector<BinaryWord> closure(const std::vector<BinaryWord>& targets);

struct DpPlan {
  std::vector<BinaryWord> words;
  unsigned long N = 0;
  PrecisionPlan precision;
};

/// Plan for the closure of targets at d digits: N and the working scale are
/// iterated together until both are consistent. A given n_override replaces
/// the chosen N (the certificate then follows from that N).
DpPlan make_plan(const std::vector<BinaryWord>& targets, unsigned digits,
                 std::optional<unsigned long> n_override = std::nullopt);

/// 4^-N (N+1)^2 pi^2/6 + N(N+1)(2N+1)/6 alpha, with pi^2/6 over-estimated.
mpq_class error_bound(unsigned long N, const mpq_class& alpha);
/// Bound on |zeta(v)_{n,n} - u_n(v)| for 0 <= n <= N.
mpq_class intermediate_error_bound(unsigned long N, const mpq_class& alpha, unsigned long n);
/// Smallest N with error_bound(N, alpha) < 10^-digits. Throws
/// PreconditionError if alpha is too large for any N to succeed.
unsigned long choose_N(unsigned digits, const mpq_class& alpha);

struct DpResult {
  std::vector<BinaryWord> words;
  std::vector<FixedReal> values;  // u_0, parallel to words
  unsigned long N = 0;
  PrecisionPlan precision;
  mpq_class theoretical_error;
  mpq_class rounding_error;
  /// u_n for each requested snapshot n, parallel to words.
  std::map<unsigned long, std::vector<FixedReal>> snapshots;

  mpq_class total_error() const { return theoretical_error + rounding_error; }
  /// Throws PreconditionError if w is not in the plan.
  const FixedReal& value(const BinaryWord& w) const;
  std::size_t index_of(const BinaryWord& w) const;
};

/// Fixed-point run; per-step rounding stays below precision.step_alpha.
DpResult run(const DpPlan& plan, const std::vector<unsigned long>& snapshot_at = {});

struct DpExactResult {
  std::vector<BinaryWord> words;
  std::vector<mpq_class> values;
  unsigned long N = 0;
  mpq_class theoretical_error;
  std::map<unsigned long, std::vector<mpq_class>> snapshots;

  const mpq_class& value(const BinaryWord& w) const;
};

/// The same recurrence in exact rational arithmetic (alpha = 0). words must
/// be closed (use closure()).
DpExactResult run_exact(const std::vector<BinaryWord>& words, unsigned long N,
                        const std::vector<unsigned long>& snapshot_at = {});

}  // namespace mzv
