#include "mzv/series.hpp"

#include <algorithm>

#include "mzv/tails.hpp"

namespace mzv {

namespace {

std::size_t bit_length(const mpz_class& z) { return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); }

mpz_class ceil_q(const mpq_class& x) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

/// Integer ceiling of a bound on lambda_{m+M,n+M} valid for every M >= 1.
mpz_class lambda_ceiling(unsigned long m, unsigned long n) {
  const unsigned long diff = m > n ? m - n : n - m;
  mpq_class extra = mpq_class(diff) * (mpq_class(1, n + 1) + mpq_class(1, m + 1));
  return 3 + ceil_q(extra);
}

/// Recursive enumeration of sum over hi > n_j > ... > n_r > lo.
mpq_class enumerate_nested(const std::vector<unsigned>& parts, std::size_t j, unsigned long hi, unsigned long lo) {
  if (j == parts.size()) return 1;
  mpq_class sum = 0;
  for (unsigned long x = lo + 1; x < hi; ++x) {
    mpq_class rest = enumerate_nested(parts, j + 1, x, lo);
    if (rest == 0) continue;
    sum += rest / mpq_class(ipow(x, parts[j]));
  }
  return sum;
}

void require_series_word(const BinaryWord& w) {
  if (w.weight() < 2 || !w.admissible()) {
    throw PreconditionError("series needs a non-empty admissible word, got '" + w.to_string() + "'");
  }
}

/// lambda_{m+M,n+M}(e_i, e_{i+1}) (m+M)(n+M), an integer.
mpz_class lambda_numerator(std::uint8_t e, std::uint8_t e2, const mpz_class& mm, const mpz_class& nn) {
  mpz_class num = mm * nn;
  if (e == 0) num += mm * mm;
  if (e2 == 1) num += nn * nn;
  return num;
}

}  // namespace

unsigned lambda(std::uint8_t e, std::uint8_t e2) { return 1u + (e == 0 ? 1u : 0u) + (e2 == 1 ? 1u : 0u); }

mpq_class lambda_mn(std::uint8_t e, std::uint8_t e2, unsigned long m, unsigned long n) {
  if (m == 0 || n == 0) throw PreconditionError("lambda_{m,n} needs m, n >= 1");
  mpq_class r = 1;
  if (e == 0) r += mpq_class(m, n);
  if (e2 == 1) r += mpq_class(n, m);
  r.canonicalize();
  return r;
}

mpq_class zeta_interval(const Composition& c, unsigned long p, unsigned long q) {
  if (p > q) throw PreconditionError("zeta_interval needs p <= q");
  const auto& parts = c.parts();
  const std::size_t r = parts.size();
  // T[j] = sum over x >= n_j > ... > n_r > p, T[r] = 1.
  std::vector<mpq_class> T(r + 1, mpq_class(0));
  T[r] = 1;
  for (unsigned long x = p + 1; x <= q; ++x) {
    for (std::size_t j = 0; j < r; ++j) {
      if (T[j + 1] != 0) T[j] += T[j + 1] / mpq_class(ipow(x, parts[j]));
    }
  }
  return T[0];
}

mpq_class phi_pq(const Composition& c, unsigned long p, unsigned long q) {
  if (c.empty()) throw PreconditionError("phi_{p,q} needs a non-empty composition");
  if (q <= p) throw PreconditionError("phi_{p,q} needs q > p");
  const std::vector<unsigned> rest(c.parts().begin() + 1, c.parts().end());
  mpq_class r = zeta_interval(Composition(rest), p, q - 1) / mpq_class(ipow(q, c.parts()[0]));
  r.canonicalize();
  return r;
}

mpq_class phi_direct(const Composition& c, unsigned long m) {
  if (c.empty()) throw PreconditionError("phi needs a non-empty composition");
  if (m == 0) throw PreconditionError("phi_m needs m >= 1");
  const std::vector<unsigned> rest(c.parts().begin() + 1, c.parts().end());
  mpq_class r = enumerate_nested(rest, 0, m, 0) / mpq_class(ipow(m, c.parts()[0]));
  r.canonicalize();
  return r;
}

Composition suffix_composition(const BinaryWord& w, std::size_t i) {
  return composition_of_word(w.subword(i, w.weight() - i));
}

Composition dual_prefix_composition(const BinaryWord& w, std::size_t i) {
  return composition_of_word(dual(w.subword(0, i)));
}

mpq_class tail_series_truncation(std::size_t k, unsigned long m, unsigned long n, unsigned long N) {
  if (N == 0) throw PreconditionError("series truncation needs N >= 1");
  const unsigned long diff = m > n ? m - n : n - m;
  mpq_class Lambda = 3 + mpq_class(diff) * (mpq_class(1, m + N) + mpq_class(1, n + N));
  mpz_class p2 = 1;
  p2 <<= 2 * N - 1;
  mpq_class r = Lambda * mpq_class(static_cast<unsigned long>(k - 1)) * mpq_class(mpz_class(N), p2);
  r.canonicalize();
  return r;
}

mpq_class general_tail_partial_exact(const BinaryWord& w, unsigned long m, unsigned long n, unsigned long N) {
  require_series_word(w);
  const ExactArith ar;
  const std::size_t k = w.weight();
  PhiRecurrence<ExactArith> ra(ar, w, n);
  PhiRecurrence<ExactArith> rb(ar, dual(w), m);
  mpq_class sum = 0;
  for (unsigned long M = 1; M <= N; ++M) {
    ra.advance();
    rb.advance();
    mpq_class inner = 0;
    for (std::size_t i = 1; i < k; ++i) {
      inner += lambda_mn(w[i - 1], w[i], m + M, n + M) * ra.at(i) * rb.at(k - i);
    }
    sum += inner * base_empty(m + M, n + M);
  }
  sum.canonicalize();
  return sum;
}

SeriesValue general_tail_series_fixed(const BinaryWord& w, unsigned long m, unsigned long n, unsigned long N,
                                      unsigned scale) {
  require_series_word(w);
  if (N == 0) throw PreconditionError("series needs N >= 1");
  const FixedArith ar{scale};
  const std::size_t k = w.weight();
  const mpz_class km1(static_cast<unsigned long>(k - 1));
  const mpz_class lam = lambda_ceiling(m, n);
  PhiRecurrence<FixedArith> ra(ar, w, n);
  PhiRecurrence<FixedArith> rb(ar, dual(w), m);
  FixedReal recip = FixedReal::from_rational(base_empty(m, n), scale);  // 1/C(m+n+2M, m+M) at M = 0
  FixedReal sum(scale);
  mpz_class ulps = 0;
  for (unsigned long M = 1; M <= N; ++M) {
    ra.advance();
    rb.advance();
    const mpz_class mm(m + M), nn(n + M);
    const mpz_class s(m + n + 2 * M);
    recip = recip.mul_int(mm * nn).div_int(s * (s - 1));  // error stays <= 2 ulp
    FixedReal acc(scale);
    for (std::size_t i = 1; i < k; ++i) {
      const FixedReal prod = ra.at(i) * rb.at(k - i);
      acc += prod.mul_int(lambda_numerator(w[i - 1], w[i], mm, nn));
    }
    const FixedReal inner = acc.div_int(mm * nn);
    sum += inner * recip;
    // phi entries are within M(k-1) ulp; each product adds 2; lambda <= lam;
    // division, recip (2 ulp against a sum <= lam(k-1)) and the final product.
    const mpz_class e_phi = mpz_class(M) * km1;
    const mpz_class e_inner = km1 * lam * (2 * e_phi + 2) + 1;
    ulps += 2 * km1 * lam + e_inner + 1;
  }
  SeriesValue out;
  out.value = sum;
  out.N = N;
  out.truncation_error = tail_series_truncation(k, m, n, N);
  out.rounding_error = mpq_class(ulps) * ulp(scale);
  out.rounding_error.canonicalize();
  return out;
}

SeriesValue general_tail_series(const BinaryWord& w, unsigned long m, unsigned long n, unsigned digits) {
  require_series_word(w);
  const std::size_t k = w.weight();
  const mpq_class target = pow10_neg(digits);
  const mpq_class half = target / 2;
  unsigned long N = 1;
  while (tail_series_truncation(k, m, n, N) > half) ++N;
  // Same closed form as the per-term accounting above, summed over M.
  const mpz_class km1(static_cast<unsigned long>(k - 1));
  const mpz_class lam = lambda_ceiling(m, n);
  const mpz_class NN(N);
  const mpz_class total = km1 * lam * 2 * km1 * NN * (NN + 1) / 2 + NN * (km1 * lam * 4 + 2);
  unsigned scale = digits_to_bits(digits) + 2 + static_cast<unsigned>(bit_length(total));
  for (;;) {
    SeriesValue v = general_tail_series_fixed(w, m, n, N, scale);
    if (v.certified_error() < target) return v;
    scale += 8;
  }
}

SeriesValue zeta_series(const Composition& c, unsigned digits) {
  if (c.empty() || !c.admissible()) {
    throw PreconditionError("zeta needs a non-empty admissible composition (first part >= 2), got " + c.to_string());
  }
  return general_tail_series(word_of_composition(c), 0, 0, digits);
}

SeriesValue central_binomial_sum(unsigned k, unsigned digits) {
  if (k == 0) throw PreconditionError("central_binomial_sum needs k >= 1");
  const mpq_class target = pow10_neg(digits);
  auto trunc = [k](unsigned long N) {
    mpz_class p2 = 1;
    p2 <<= 2 * N - 1;
    mpq_class r(mpz_class(N), p2 * ipow(N + 1, k));
    r.canonicalize();
    return r;
  };
  unsigned long N = 1;
  while (trunc(N) > target / 2) ++N;
  const unsigned scale = digits_to_bits(digits) + 4 + static_cast<unsigned>(bit_length(mpz_class(3 * N)));
  FixedReal recip = FixedReal::one(scale);
  FixedReal sum(scale);
  for (unsigned long m = 1; m <= N; ++m) {
    recip = binom_recip_step(recip, m);  // <= 2 ulp
    sum += recip.div_int(ipow(m, k));
  }
  SeriesValue out;
  out.value = sum;
  out.N = N;
  out.truncation_error = trunc(N);
  out.rounding_error = mpq_class(3 * N) * ulp(scale);
  out.rounding_error.canonicalize();
  return out;
}

FiniteIdentity finite_identity_check(const BinaryWord& w, unsigned long m, unsigned long n, unsigned long N,
                                     const mpq_class& target) {
  require_series_word(w);
  if (N == 0) throw PreconditionError("finite identity needs N >= 1");
  const std::size_t k = w.weight();
  FiniteIdentity out;
  const OracleValue lhs = tail_oracle(w, m, n, target);
  out.lhs = lhs.value;
  mpq_class rhs_err = 0;
  mpq_class rhs = 0;
  // Remainder terms over s = (i, j) with e_{i+1} .. e_j admissible, non-empty.
  for (std::size_t i = 0; i < k; ++i) {
    if (w[i] != 0) continue;
    for (std::size_t j = i + 2; j <= k; ++j) {
      if (w[j - 1] != 1) continue;
      const BinaryWord ws = w.subword(i, j - i);
      const mpq_class zb = zeta_interval(dual_prefix_composition(w, i), m, m + N);
      const mpq_class za = zeta_interval(suffix_composition(w, j), n, n + N);
      const OracleValue t = tail_oracle(ws, m + N, n + N, target);
      rhs += zb * za * t.value;
      rhs_err += zb * za * t.error;
    }
  }
  rhs += general_tail_partial_exact(w, m, n, N);
  rhs.canonicalize();
  out.rhs = rhs;
  out.residual = out.lhs - out.rhs;
  out.certificate = lhs.error + rhs_err;
  out.certificate.canonicalize();
  return out;
}

mpq_class polylog_half_partial_exact(const Composition& c, unsigned long N) {
  if (c.empty()) return 1;
  const auto& parts = c.parts();
  const std::size_t r = parts.size();
  std::vector<mpq_class> S(r, mpq_class(0));
  S[r - 1] = 1;
  mpq_class sum = 0;
  mpz_class p2 = 1;
  for (unsigned long x = 1; x <= N; ++x) {
    p2 <<= 1;
    if (S[0] != 0) sum += S[0] / mpq_class(p2 * ipow(x, parts[0]));
    for (std::size_t j = 0; j + 1 < r; ++j) {
      if (S[j + 1] != 0) S[j] += S[j + 1] / mpq_class(ipow(x, parts[j + 1]));
    }
  }
  sum.canonicalize();
  return sum;
}

namespace {

struct HalfLi {
  FixedReal value;
  mpz_class ulps;  // rounding bound
};

/// Li_c(1/2) over n_1 <= N. Inner sums are zeta_{]0,x-1]}(c_2, ...) kept in
/// fixed point; their error E obeys E(x+1) <= E(x)(1 + 1/x) + 1.
HalfLi polylog_half_fixed(const Composition& c, unsigned long N, unsigned scale) {
  HalfLi out{FixedReal(scale), 0};
  if (c.empty()) {
    out.value = FixedReal::one(scale);
    return out;
  }
  const auto& parts = c.parts();
  const std::size_t r = parts.size();
  std::vector<FixedReal> S(r, FixedReal(scale));
  S[r - 1] = FixedReal::one(scale);
  mpz_class E = 0;
  mpz_class p2 = 1;
  for (unsigned long x = 1; x <= N; ++x) {
    p2 <<= 1;
    if (!S[0].is_zero()) out.value += S[0].div_int(p2 * ipow(x, parts[0]));
    // term error: E / (2^x x^c) + 1
    mpz_class t;
    mpz_cdiv_q(t.get_mpz_t(), E.get_mpz_t(), p2.get_mpz_t());
    out.ulps += t + 1;
    for (std::size_t j = 0; j + 1 < r; ++j) {
      if (!S[j + 1].is_zero()) S[j] += S[j + 1].div_int(ipow(x, parts[j + 1]));
    }
    if (r > 1) {
      mpz_class inc;
      mpz_cdiv_q_ui(inc.get_mpz_t(), E.get_mpz_t(), x);
      E += inc + 1;
    }
  }
  return out;
}

}  // namespace

BaselineValue baseline_chasles(const Composition& c, unsigned digits) {
  if (c.empty() || !c.admissible()) {
    throw PreconditionError("zeta needs a non-empty admissible composition (first part >= 2), got " + c.to_string());
  }
  const BinaryWord w = word_of_composition(c);
  const std::size_t k = w.weight();
  const mpq_class target = pow10_neg(digits);
  // Each Li(1/2) is below 1 and its tail beyond N terms below 2^-N, so each
  // of the k+1 products loses at most 2^(1-N).
  unsigned long N = 1;
  auto trunc = [k](unsigned long n) {
    mpz_class p2 = 1;
    p2 <<= n;
    mpq_class r(mpz_class(2 * (k + 1)), p2);
    r.canonicalize();
    return r;
  };
  while (trunc(N) > target / 2) ++N;
  unsigned scale = digits_to_bits(digits) + 8 + static_cast<unsigned>(bit_length(mpz_class(N) * N * (k + 1)));
  for (;;) {
    FixedReal sum(scale);
    mpz_class ulps = 0;
    unsigned long count = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      const Composition ai = suffix_composition(w, i);
      const Composition bi = dual_prefix_composition(w, i);
      const HalfLi A = polylog_half_fixed(ai, N, scale);
      const HalfLi B = polylog_half_fixed(bi, N, scale);
      count += (ai.empty() ? 0 : 1) + (bi.empty() ? 0 : 1);
      sum += A.value * B.value;
      ulps += A.ulps + B.ulps + 2;
    }
    BaselineValue out;
    out.value = sum;
    out.N = N;
    out.series_count = count;
    out.truncation_error = trunc(N);
    out.rounding_error = mpq_class(ulps) * ulp(scale);
    out.rounding_error.canonicalize();
    if (out.certified_error() < target) return out;
    scale += 8;
  }
}

}  // namespace mzv
