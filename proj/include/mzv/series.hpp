#pragma once

// Central-binomial series for MZVs and double tails, the interval sums
// phi_{p,q} / zeta_{]p,q]} behind them, the finite-N identity they come
// from, and the split-at-1/2 polylogarithm baseline.

#include <gmpxx.h>

#include <vector>

#include "mzv/errors.hpp"
#include "mzv/fixnum.hpp"
#include "mzv/words.hpp"

namespace mzv {

/// lambda(e, e') = 1 + [e = 0] + [e' = 1].
unsigned lambda(std::uint8_t e, std::uint8_t e2);
/// 1 + [e = 0] m/n + [e' = 1] n/m, for m, n >= 1.
mpq_class lambda_mn(std::uint8_t e, std::uint8_t e2, unsigned long m, unsigned long n);

/// zeta_{]p,q]}(c) = sum over q >= n_1 > ... > n_r > p of prod n_j^-c_j; 1 for
/// the empty composition.
mpq_class zeta_interval(const Composition& c, unsigned long p, unsigned long q);
/// phi_{p,q}(c) = q^-c_1 zeta_{]p,q-1]}(c_2, ..., c_r), for c non-empty, q > p.
mpq_class phi_pq(const Composition& c, unsigned long p, unsigned long q);
/// phi_{0,m}(c), by direct enumeration of m > n_2 > ... > n_r > 0.
mpq_class phi_direct(const Composition& c, unsigned long m);

/// Suffix compositions a_i (word e_{i+1}..e_k) and dual-prefix compositions
/// b_i (word of the dual of e_1..e_i) for i = 0..k.
Composition suffix_composition(const BinaryWord& w, std::size_t i);
Composition dual_prefix_composition(const BinaryWord& w, std::size_t i);

/// phi_{p,q}(a_i) for i = 1..k-1 of an admissible word, advanced one q at a
/// time: 1/q at i = k-1; phi(a_{i+1})/q when e_{i+1} = 0; otherwise
/// ((q-1) phi_{q-1}(a_i) + phi_{q-1}(a_{i+1}))/q, which is 0 at q = p+1.
template <class Arith>
class PhiRecurrence {
 public:
  using V = typename Arith::value_type;

  PhiRecurrence(const Arith& ar, BinaryWord w, unsigned long p)
      : ar_(ar), w_(std::move(w)), p_(p), q_(p), cur_(w_.weight(), ar.zero()), prev_(w_.weight(), ar.zero()) {
    if (w_.weight() < 2 || !w_.admissible()) throw PreconditionError("phi recurrence needs an admissible word of weight >= 2");
  }

  /// q -> q + 1.
  void advance() {
    ++q_;
    cur_.swap(prev_);
    const std::size_t k = w_.weight();
    const mpz_class q(q_);
    const mpz_class q1(q_ - 1);
    for (std::size_t i = k - 1; i >= 1; --i) {
      if (i == k - 1) {
        cur_[i] = ar_.from_ratio(1, q);
      } else if (w_[i] == 0) {  // e_{i+1} with 1-based bits
        cur_[i] = ar_.div_int(cur_[i + 1], q);
      } else if (q_ == p_ + 1) {
        cur_[i] = ar_.zero();
      } else {
        cur_[i] = ar_.div_int(ar_.add(ar_.mul_int(prev_[i], q1), prev_[i + 1]), q);
      }
    }
  }

  unsigned long q() const noexcept { return q_; }
  /// Index i in 1..k-1; entry 0 is unused.
  const std::vector<V>& values() const noexcept { return cur_; }
  const V& at(std::size_t i) const { return cur_.at(i); }

 private:
  Arith ar_;
  BinaryWord w_;
  unsigned long p_;
  unsigned long q_;
  std::vector<V> cur_;
  std::vector<V> prev_;
};

/// phi_a[m][i] = phi_{0,m}(a_i) and phi_b[m][i] = phi_{0,m}(b_i) for
/// m = 1..N (row 0 unused). The b side runs the same recurrence on dual(w):
/// b_i(w) = a_{k-i}(dual(w)).
template <class V>
struct PhiTable {
  BinaryWord word;
  unsigned long N = 0;
  std::vector<std::vector<V>> phi_a;
  std::vector<std::vector<V>> phi_b;
};

template <class Arith>
PhiTable<typename Arith::value_type> build_phi_table(const Arith& ar, const BinaryWord& w, unsigned long N) {
  PhiTable<typename Arith::value_type> t;
  t.word = w;
  t.N = N;
  const std::size_t k = w.weight();
  PhiRecurrence<Arith> ra(ar, w, 0);
  PhiRecurrence<Arith> rb(ar, dual(w), 0);
  t.phi_a.assign(N + 1, std::vector<typename Arith::value_type>(k, ar.zero()));
  t.phi_b.assign(N + 1, std::vector<typename Arith::value_type>(k, ar.zero()));
  for (unsigned long m = 1; m <= N; ++m) {
    ra.advance();
    rb.advance();
    for (std::size_t i = 1; i < k; ++i) {
      t.phi_a[m][i] = ra.at(i);
      t.phi_b[m][i] = rb.at(k - i);
    }
  }
  return t;
}

/// psi_m = sum_i lambda(e_i, e_{i+1}) phi_m(a_i) phi_m(b_i).
template <class Arith>
typename Arith::value_type psi(const Arith& ar, const PhiTable<typename Arith::value_type>& t, unsigned long m) {
  if (m == 0 || m > t.N) throw PreconditionError("psi index outside the phi table");
  auto acc = ar.zero();
  const std::size_t k = t.word.weight();
  for (std::size_t i = 1; i < k; ++i) {
    const unsigned lam = lambda(t.word[i - 1], t.word[i]);
    acc = ar.add(acc, ar.mul_int(ar.mul(t.phi_a[m][i], t.phi_b[m][i]), lam));
  }
  return acc;
}

struct SeriesValue {
  FixedReal value;
  mpq_class truncation_error;
  mpq_class rounding_error;
  /// Outer terms summed.
  unsigned long N = 0;

  mpq_class certified_error() const { return truncation_error + rounding_error; }
};

/// Bound on the discarded terms M > N of the double-tail series:
/// Lambda (k-1) 2^(1-2N) N with Lambda = 3 + |m-n| (1/(m+N) + 1/(n+N)).
mpq_class tail_series_truncation(std::size_t k, unsigned long m, unsigned long n, unsigned long N);

/// zeta(w)_{m,n} to d digits (certificate below 10^-d).
SeriesValue general_tail_series(const BinaryWord& w, unsigned long m, unsigned long n, unsigned digits);
/// The same series, first N terms, exact.
mpq_class general_tail_partial_exact(const BinaryWord& w, unsigned long m, unsigned long n, unsigned long N);
/// Fixed-point evaluation with a caller-chosen N and scale.
SeriesValue general_tail_series_fixed(const BinaryWord& w, unsigned long m, unsigned long n, unsigned long N,
                                      unsigned scale);

/// zeta(c) = sum_m psi_m(c) / C(2m, m), to d digits.
SeriesValue zeta_series(const Composition& c, unsigned digits);

/// sum_{m >= 1} m^-k / C(2m, m) to d digits.
SeriesValue central_binomial_sum(unsigned k, unsigned digits);

struct FiniteIdentity {
  mpq_class lhs;
  mpq_class rhs;
  mpq_class residual;      // lhs - rhs
  mpq_class certificate;   // bound on |residual| implied by the reference errors
};

/// Both sides of the N-step identity for zeta(w)_{m,n}: the remainder terms
/// over admissible inner subwords at (m+N, n+N) plus the first N series
/// terms. Tails are taken from the reference evaluator at error <= target.
FiniteIdentity finite_identity_check(const BinaryWord& w, unsigned long m, unsigned long n, unsigned long N,
                                     const mpq_class& target);

struct BaselineValue {
  FixedReal value;
  mpq_class truncation_error;
  mpq_class rounding_error;
  /// Terms of each Li(1/2) series.
  unsigned long N = 0;
  /// Li(1/2) series evaluated.
  unsigned long series_count = 0;

  mpq_class certified_error() const { return truncation_error + rounding_error; }
};

/// zeta(c) = sum_{i=0}^k Li_{a_i}(1/2) Li_{b_i}(1/2), to d digits.
BaselineValue baseline_chasles(const Composition& c, unsigned digits);
/// Li_c(1/2) truncated after N terms, exact.
mpq_class polylog_half_partial_exact(const Composition& c, unsigned long N);

}  // namespace mzv
