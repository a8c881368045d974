#pragma once

// Double tails zeta(w)_{m,n}: closed forms for the atoms, bounds, the index
// conventions, one-step recurrences and an exact-rational reference
// evaluator.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>

#include "mzv/errors.hpp"
#include "mzv/fixnum.hpp"
#include "mzv/words.hpp"

namespace mzv {

struct TailIndex {
  unsigned long m = 0;
  unsigned long n = 0;
  friend bool operator==(const TailIndex&, const TailIndex&) = default;
};

/// m >= 1 if w starts with 1, n >= 1 if w ends with 0.
bool index_valid(const BinaryWord& w, unsigned long m, unsigned long n);
/// Throws PreconditionError with an explanation when index_valid fails.
void require_valid_index(const BinaryWord& w, unsigned long m, unsigned long n);

/// m! n! / (m+n)!.
mpq_class base_empty(unsigned long m, unsigned long n);
/// m! (n-1)! / (m+n)!; needs n >= 1.
mpq_class base_zero(unsigned long m, unsigned long n);
/// (m-1)! n! / (m+n)!; needs m >= 1.
mpq_class base_one(unsigned long m, unsigned long n);
/// Tail of an atom (weight <= 1 word) at (m, n).
mpq_class base_atom(const BinaryWord& atom, unsigned long m, unsigned long n);

/// m^m n^n / (m+n)^(m+n) with 0^0 = 1 (so (0,0) gives 1).
mpq_class bound_c(unsigned long m, unsigned long n);

/// n^(r-k) / prod_j (a_1+...+a_j - j).
mpq_class ntail_asymptotic(const Composition& c, unsigned long n);

/// (dual(w), (n, m)).
std::pair<BinaryWord, TailIndex> dual_index(const BinaryWord& w, unsigned long m, unsigned long n);

/// Upper bound of pi^2/6 used by every certificate: 1.6449340668482265 + 1e-16.
mpq_class zeta2_upper();

/// Tails of non-atom words at one common index.
template <class V>
class TailTable {
 public:
  void set(const BinaryWord& w, V value) { values_.insert_or_assign(w, std::move(value)); }
  bool contains(const BinaryWord& w) const { return values_.count(w) != 0; }
  const V& at(const BinaryWord& w) const {
    auto it = values_.find(w);
    if (it == values_.end()) throw PreconditionError("missing table entry for word '" + w.to_string() + "'");
    return it->second;
  }
  std::size_t size() const { return values_.size(); }

 private:
  std::map<BinaryWord, V> values_;
};

/// zeta(w)_{m-1,n-1} from the (m,n) tails of w and its init/fin/mid parts.
/// Atoms are taken from their closed forms, each atom term rounded once.
template <class Arith>
typename Arith::value_type step_rect(const Arith& ar, const BinaryWord& w, unsigned long m, unsigned long n,
                                     const TailTable<typename Arith::value_type>& table) {
  if (m == 0 || n == 0) throw PreconditionError("step_rect needs m >= 1 and n >= 1");
  const Decomposition d = decompose(w);
  const mpz_class na = ipow(n, d.a);
  const mpz_class mb = ipow(m, d.b);
  auto term = [&](const BinaryWord& u, const mpz_class& divisor) {
    if (is_atom(u)) return ar.from_rational(base_atom(u, m, n) / mpq_class(divisor));
    return ar.div_int(table.at(u), divisor);
  };
  auto result = ar.add(table.at(w), term(d.init, na));
  result = ar.add(result, term(d.fin, mb));
  result = ar.add(result, term(d.mid, na * mb));
  return result;
}

template <class Arith>
typename Arith::value_type step_diag(const Arith& ar, const BinaryWord& w, unsigned long n,
                                     const TailTable<typename Arith::value_type>& table) {
  return step_rect(ar, w, n, n, table);
}

/// zeta(w0)_{m,n} = zeta(w)_{m,n} / n.
mpq_class recur_append_zero(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_w);
/// zeta(w1)_{m,n-1} = zeta(w1)_{m,n} + zeta(w)_{m,n} / n.
mpq_class recur_append_one(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_w1,
                           const mpq_class& zeta_w);
/// zeta(1w)_{m,n} = zeta(w)_{m,n} / m.
mpq_class recur_prepend_one(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_w);
/// zeta(0w)_{m-1,n} = zeta(0w)_{m,n} + zeta(w)_{m,n} / m.
mpq_class recur_prepend_zero(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_0w,
                             const mpq_class& zeta_w);

/// Reference evaluator. Every route sums exact rationals; the reported error
/// is a proved bound on the discarded part.
enum class OracleMethod {
  automatic,
  /// Nested sum over n_1 > ... > n_r > n weighted by 1/C(n_1+m, m); needs w
  /// to end with 1. Polynomial convergence, geometric only for large m.
  nested_series,
  /// nested_series applied to (dual(w), n, m).
  dual_nested_series,
  /// Splits the iterated integral at 1/2 and expands both halves as power
  /// series; geometric convergence, works for every valid (w, m, n).
  split_integral,
};

struct OracleValue {
  mpq_class value;
  mpq_class error;
  OracleMethod method = OracleMethod::automatic;
  /// Outer summation bound (nested routes) or series degree (split route).
  unsigned long terms = 0;
};

/// zeta(w)_{m,n} within target (when achievable by the chosen route inside
/// max_terms outer terms; otherwise the returned error says what was reached).
OracleValue tail_oracle(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& target,
                        OracleMethod method = OracleMethod::automatic, unsigned long max_terms = 3000);

/// zeta(c)_{m,n} for a non-empty admissible composition.
OracleValue tail_series_oracle(const Composition& c, unsigned long m, unsigned long n, const mpq_class& target);

}  // namespace mzv
