// Exact-rational reference values for double tails.
//
// nested route: the defining series over n_1 > ... > n_r > n with weight
// 1/C(n_1+m, m), cut at n_1 <= T. For n_1 > T each term is at most
// K n_1^-q with K = m'! 2^(r-1)/(r-1)!, q = m' + a_1 - (r-1)/2 for any
// m' <= m (inner sum <= (2 sqrt(n_1))^(r-1)/(r-1)!, 1/C(n_1+m,m) <= m'!/n_1^m'),
// so the remainder is at most K T^(1-q)/(q-1).
//
// split route: with i of the k variables above 1/2, substituting t = 1-s in the
// upper block turns it into an integral over (0,1/2) of the dual prefix, so
// zeta(w)_{m,n} = sum_i U_i L_i where every factor is an iterated integral over
// 1/2 > t_1 > ... > 0. Each factor is a power series in t with coefficients
// bounded by 2^q ((1-t)^q weight on the outer variable), evaluated exactly at
// t = 1/2 after truncation at degree J.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mzv/tails.hpp"

namespace mzv {

namespace {

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// ---------------------------------------------------------------- nested

struct NestedBoundShape {
  unsigned long mprime = 0;
  unsigned long p = 0;  // 2(q-1), must be >= 1
  mpq_class K;
  double log_K = 0;
};

/// Exact upper bound K T^(-p/2) (2/p) on the remainder beyond n_1 = T.
mpq_class nested_remainder(const NestedBoundShape& s, unsigned long T) {
  mpz_class tp = ipow(T, s.p);
  mpz_class root;
  if (s.p % 2 == 0) {
    root = ipow(T, s.p / 2);
  } else {
    mpz_sqrt(root.get_mpz_t(), tp.get_mpz_t());
  }
  mpq_class r = s.K * mpq_class(2, s.p) / mpq_class(root);
  r.canonicalize();
  return r;
}

double log_remainder(const NestedBoundShape& s, unsigned long T) {
  return s.log_K + std::log(2.0 / static_cast<double>(s.p)) - 0.5 * static_cast<double>(s.p) * std::log(static_cast<double>(T));
}

std::vector<NestedBoundShape> nested_shapes(const Composition& a, unsigned long m) {
  std::vector<NestedBoundShape> out;
  const unsigned long r = a.depth();
  const long a1 = a.parts().front();
  const mpq_class inner(ipow(2, r - 1), factorial(r - 1));
  for (unsigned long mp = 0; mp <= std::min<unsigned long>(m, 400); ++mp) {
    const long twice_q = 2 * static_cast<long>(mp) + 2 * a1 - static_cast<long>(r - 1);
    if (twice_q <= 2) continue;
    NestedBoundShape s;
    s.mprime = mp;
    s.p = static_cast<unsigned long>(twice_q - 2);
    s.K = inner * mpq_class(factorial(mp));
    s.log_K = std::lgamma(static_cast<double>(mp) + 1.0) + static_cast<double>(r - 1) * std::log(2.0) -
              std::lgamma(static_cast<double>(r));
    out.push_back(std::move(s));
  }
  return out;
}

/// Smallest T (>= floor) whose exact remainder bound is at most target; T is
/// the max unsigned long when none of the shapes converges.
std::pair<unsigned long, mpq_class> nested_choose_T(const Composition& a, unsigned long m, unsigned long floor_T,
                                                    const mpq_class& target, unsigned long cap) {
  const auto shapes = nested_shapes(a, m);
  const unsigned long none = std::numeric_limits<unsigned long>::max();
  if (shapes.empty()) return {none, mpq_class(0)};
  const double log_target = static_cast<double>(floor_log2(target)) * std::log(2.0);
  unsigned long best_T = none;
  const NestedBoundShape* best = nullptr;
  for (const auto& s : shapes) {
    double lk = log_remainder(s, 1);
    double logT = (lk - log_target) / (0.5 * static_cast<double>(s.p));
    double est = std::ceil(std::exp(std::min(logT, 60.0)));
    unsigned long T = est >= 1e18 ? none : std::max<unsigned long>(static_cast<unsigned long>(est), 1);
    T = std::max(T, floor_T);
    if (T < best_T || best == nullptr) {
      best_T = T;
      best = &s;
    }
  }
  unsigned long T = std::min(best_T, cap);
  mpq_class bound = nested_remainder(*best, T);
  while (bound > target && T < cap) {
    T = std::min(cap, T + T / 16 + 1);
    bound = nested_remainder(*best, T);
  }
  // Any shape may be tighter at the final T.
  for (const auto& s : shapes) {
    if (&s == best) continue;
    if (log_remainder(s, T) < log_remainder(*best, T) + 1.0) bound = std::min(bound, nested_remainder(s, T));
  }
  return {T, bound};
}

OracleValue nested(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& target,
                   unsigned long max_terms, OracleMethod tag) {
  if (!w.ends_with(1)) throw PreconditionError("nested series needs a word ending with 1, got '" + w.to_string() + "'");
  const Composition a = composition_of_word(w);
  const auto& parts = a.parts();
  const std::size_t r = parts.size();
  auto [T, bound] = nested_choose_T(a, m, n + r, target, n + max_terms);
  if (T == std::numeric_limits<unsigned long>::max()) {
    throw PreconditionError("nested series does not converge fast enough to certify for '" + w.to_string() + "'");
  }
  // S[j] = sum over x > n_j > ... > n_r > n of prod n_i^-a_i, j = 1..r-1
  // (0-based over parts[1..]); S[r-1] plays the empty product.
  std::vector<mpq_class> S(r, mpq_class(0));
  S[r - 1] = 1;
  mpq_class sum = 0;
  mpz_class binom;  // C(x + m, m) at the current x = n_1
  mpz_bin_uiui(binom.get_mpz_t(), n + 1 + m, m);
  for (unsigned long x = n + 1; x <= T; ++x) {
    if (x > n + 1) {
      binom *= (x + m);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), x);
    }
    const mpz_class xz(x);
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), xz.get_mpz_t(), parts[0]);
    if (r == 1) {
      sum += mpq_class(mpz_class(1), binom * den);
    } else if (S[0] != 0) {
      mpq_class t = S[0] / mpq_class(binom * den);
      sum += t;
    }
    // Advance inner sums to x + 1: n_j = x becomes available.
    for (std::size_t j = 0; j + 1 < r; ++j) {
      if (S[j + 1] == 0) continue;
      mpz_class pj;
      mpz_pow_ui(pj.get_mpz_t(), xz.get_mpz_t(), parts[j + 1]);
      S[j] += S[j + 1] / mpq_class(pj);
    }
  }
  sum.canonicalize();
  OracleValue out;
  out.value = sum;
  out.error = bound;
  out.method = tag;
  out.terms = T;
  return out;
}

// ---------------------------------------------------------------- split

/// Iterated integral over 1/2 > t_1 > ... > t_L > 0 of
/// (1-t_1)^q w_{u_1}(t_1) ... w_{u_L}(t_L) t_L^e as a truncated power series.
std::vector<mpq_class> half_series(const BinaryWord& u, unsigned long e, unsigned long q, unsigned long J) {
  std::vector<mpq_class> c(J + 1, mpq_class(0));
  if (e <= J) c[e] = 1;
  const std::size_t L = u.weight();
  for (std::size_t step = 0; step < L; ++step) {
    const std::size_t pos = L - 1 - step;
    if (pos == 0 && q > 0) {
      std::vector<mpq_class> d(J + 1, mpq_class(0));
      mpz_class coef = 1;
      for (unsigned long i = 0; i <= q && i <= J; ++i) {
        const mpq_class cq(i % 2 ? mpz_class(-coef) : coef);
        for (unsigned long p = i; p <= J; ++p) {
          if (c[p - i] != 0) d[p] += cq * c[p - i];
        }
        coef = coef * (q - i) / (i + 1);
      }
      c.swap(d);
    }
    if (u[pos] == 0) {
      if (c[0] != 0) throw PreconditionError("divergent iterated integral");
      for (unsigned long p = 1; p <= J; ++p) {
        if (c[p] != 0) c[p] /= mpq_class(p);
      }
    } else {
      mpq_class prefix = 0;
      std::vector<mpq_class> d(J + 1, mpq_class(0));
      for (unsigned long p = 1; p <= J; ++p) {
        prefix += c[p - 1];
        if (prefix != 0) d[p] = prefix / mpq_class(p);
      }
      c.swap(d);
    }
  }
  return c;
}

struct HalfValue {
  mpq_class value;
  mpq_class error;
};

HalfValue half_integral(const BinaryWord& u, unsigned long e, unsigned long q, unsigned long J) {
  if (u.empty()) return {mpq_class(1), mpq_class(0)};
  const auto c = half_series(u, e, q, J);
  mpq_class v = 0;
  mpz_class pow2 = 1;
  for (unsigned long p = 0; p <= J; ++p) {
    if (p > 0) pow2 <<= 1;
    if (c[p] != 0) v += c[p] / mpq_class(pow2);
  }
  HalfValue out;
  out.value = v;
  out.error = mpq_class(ipow(2, q), ipow(2, J));
  out.error.canonicalize();
  return out;
}

OracleValue split(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& target) {
  const std::size_t k = w.weight();
  const BinaryWord wd = dual(w);
  long target_bits = -floor_log2(target) + 1;
  if (target_bits < 1) target_bits = 1;
  unsigned long kb = 0;
  while ((1ul << kb) < k + 1) ++kb;
  unsigned long J = static_cast<unsigned long>(target_bits) + std::max(m, n) + kb + 4;
  for (;;) {
    mpq_class value = 0;
    mpq_class error = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      HalfValue U, Lw;
      if (i == 0) {
        U = {mpq_class(1), mpq_class(0)};
        Lw = half_integral(w, n, m, J);
      } else if (i == k) {
        U = half_integral(wd, m, n, J);
        Lw = {mpq_class(1), mpq_class(0)};
      } else {
        // dual of the prefix e_1..e_i is the suffix of dual(w) of length i
        U = half_integral(wd.subword(k - i, i), m, 0, J);
        Lw = half_integral(w.subword(i, k - i), n, 0, J);
      }
      value += U.value * Lw.value;
      error += abs(U.value) * Lw.error + abs(Lw.value) * U.error + U.error * Lw.error;
    }
    if (error <= target) {
      value.canonicalize();
      error.canonicalize();
      OracleValue out;
      out.value = value;
      out.error = error;
      out.method = OracleMethod::split_integral;
      out.terms = J;
      return out;
    }
    J += 16;
  }
}

}  // namespace

OracleValue tail_oracle(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& target,
                        OracleMethod method, unsigned long max_terms) {
  if (target <= 0) throw PreconditionError("oracle target error must be positive");
  require_valid_index(w, m, n);
  if (is_atom(w)) {
    OracleValue out;
    out.value = base_atom(w, m, n);
    out.error = 0;
    out.method = method;
    return out;
  }
  switch (method) {
    case OracleMethod::nested_series:
      return nested(w, m, n, target, max_terms, OracleMethod::nested_series);
    case OracleMethod::dual_nested_series:
      return nested(dual(w), n, m, target, max_terms, OracleMethod::dual_nested_series);
    case OracleMethod::split_integral:
      return split(w, m, n, target);
    case OracleMethod::automatic:
      break;
  }
  if (std::max(m, n) <= 300) return split(w, m, n, target);
  const unsigned long none = std::numeric_limits<unsigned long>::max();
  unsigned long t_direct = none, t_dual = none;
  if (w.ends_with(1)) {
    t_direct = nested_choose_T(composition_of_word(w), m, n + w.depth(), target, none - 1).first;
  }
  if (w.starts_with(0)) {
    const BinaryWord wd = dual(w);
    t_dual = nested_choose_T(composition_of_word(wd), n, m + wd.depth(), target, none - 1).first;
  }
  const unsigned long cost_direct = t_direct == none ? none : t_direct - std::min(t_direct, n);
  const unsigned long cost_dual = t_dual == none ? none : t_dual - std::min(t_dual, m);
  if (cost_direct == none && cost_dual == none) return split(w, m, n, target);
  if (cost_direct <= cost_dual) return nested(w, m, n, target, max_terms, OracleMethod::nested_series);
  return nested(dual(w), n, m, target, max_terms, OracleMethod::dual_nested_series);
}

OracleValue tail_series_oracle(const Composition& c, unsigned long m, unsigned long n, const mpq_class& target) {
  if (c.empty() || !c.admissible()) {
    throw PreconditionError("tail_series_oracle needs a non-empty admissible composition, got " + c.to_string());
  }
  return tail_oracle(word_of_composition(c), m, n, target);
}

}  // namespace mzv
