#include "mzv/relations.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "mzv/dp.hpp"
#include "mzv/errors.hpp"
#include "mzv/tails.hpp"

namespace mzv {

namespace {

using RatMatrix = std::vector<std::vector<mpq_class>>;

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const mpq_class inv = 1 / m[row][col];
    for (std::size_t j = col; j < ncols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      const mpq_class f = m[i][col];
      for (std::size_t j = col; j < ncols; ++j) {
        if (m[row][j] != 0) m[i][j] -= f * m[row][j];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
IntVector primitive(const std::vector<mpq_class>& v) {
  mpz_class den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class s = v[i] * mpq_class(den);
    out[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g == 0) return out;
  int sign = 0;
  for (const auto& x : out) {
    if (x != 0) {
      sign = x > 0 ? 1 : -1;
      break;
    }
  }
  for (auto& x : out) {
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    if (sign < 0) x = -x;
  }
  return out;
}

/// Rational row basis of the given rows in reduced echelon form, made integral.
IntMatrix echelon_basis(const RatMatrix& rows, std::size_t ncols) {
  RatMatrix m = rows;
  const auto pivots = rref(m, ncols);
  IntMatrix out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(primitive(m[i]));
  return out;
}

/// Basis of {x : M x = 0} over Q for an r x c matrix.
RatMatrix right_nullspace(RatMatrix m, std::size_t ncols) {
  const auto pivots = rref(m, ncols);
  std::set<std::size_t> pivot_set(pivots.begin(), pivots.end());
  RatMatrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot_set.count(f)) continue;
    std::vector<mpq_class> v(ncols, mpq_class(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMatrix transpose(const IntMatrix& m, std::size_t ncols) {
  RatMatrix t(ncols, std::vector<mpq_class>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  }
  return t;
}

}  // namespace

std::vector<BinaryWord> representatives(unsigned weight) {
  std::set<BinaryWord> reps;
  for (const auto& w : admissible_words_of_weight(weight)) reps.insert(canonical_rep(w));
  return {reps.begin(), reps.end()};
}

std::size_t TailMatrix::col_index(const BinaryWord& rep) const {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] == rep) return j;
  }
  throw PreconditionError("no column for '" + rep.to_string() + "'");
}

std::size_t TailMatrix::row_index(const BinaryWord& rep) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), rep);
  if (it == rows.end() || *it != rep) throw PreconditionError("no row for '" + rep.to_string() + "'");
  return static_cast<std::size_t>(it - rows.begin());
}

TailMatrix build_matrix(unsigned k) {
  if (k < 2) throw PreconditionError("build_matrix needs k >= 2");
  TailMatrix t;
  t.k = k;
  t.rows = representatives(k);
  std::map<BinaryWord, std::size_t> col_of;
  for (unsigned j = k - 1; j >= 2; --j) {
    for (const auto& r : representatives(j)) {
      col_of[r] = t.cols.size();
      t.cols.push_back(r);
    }
  }
  const std::size_t empty_col = t.cols.size();
  t.cols.emplace_back();
  t.entries.assign(t.rows.size(), IntVector(t.cols.size(), mpz_class(0)));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Decomposition d = decompose(t.rows[i]);
    for (const BinaryWord* part : {&d.init, &d.fin, &d.mid}) {
      const std::size_t col = is_atom(*part) ? empty_col : col_of.at(canonical_rep(*part));
      t.entries[i][col] += 1;
    }
  }
  return t;
}

std::size_t rank_bareiss(const IntMatrix& input) {
  IntMatrix m = input;
  if (m.empty()) return 0;
  const std::size_t nr = m.size();
  const std::size_t nc = m[0].size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < nr; ++col) {
    std::size_t p = rank;
    while (p < nr && m[p][col] == 0) ++p;
    if (p == nr) continue;
    std::swap(m[p], m[rank]);
    const mpz_class piv = m[rank][col];
    for (std::size_t i = rank + 1; i < nr; ++i) {
      const mpz_class f = m[i][col];
      for (std::size_t j = col + 1; j < nc; ++j) {
        mpz_class v = piv * m[i][j] - f * m[rank][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
      m[i][col] = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

IntMatrix left_kernel(const IntMatrix& m) {
  if (m.empty()) return {};
  const std::size_t nc = m[0].size();
  const RatMatrix basis = right_nullspace(transpose(m, nc), m.size());
  return echelon_basis(basis, m.size());
}

IntMatrix lower_relation_rows(unsigned k) {
  const TailMatrix a = build_matrix(k);
  IntMatrix out;
  for (unsigned j = 2; j < k; ++j) {
    const KernelReport sub = kernel(j);
    if (sub.basis.empty()) continue;
    const auto reps = representatives(j);
    const std::size_t offset = a.col_index(reps.front());
    for (const auto& v : sub.basis) {
      IntVector row(a.cols.size(), mpz_class(0));
      for (std::size_t i = 0; i < v.size(); ++i) row[offset + i] = v[i];
      out.push_back(std::move(row));
    }
  }
  return out;
}

KernelReport kernel(unsigned k) {
  if (k < 2) throw PreconditionError("kernel needs k >= 2");
  static std::mutex mu;
  static std::map<unsigned, KernelReport> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
  }
  const TailMatrix a = build_matrix(k);
  KernelReport rep;
  rep.k = k;
  rep.rows = a.rows.size();
  rep.cols = a.cols.size();
  rep.rank = rank_bareiss(a.entries);
  rep.plain_basis = left_kernel(a.entries);
  rep.plain_dim = rep.plain_basis.size();

  IntMatrix stacked = a.entries;
  const IntMatrix lower = lower_relation_rows(k);
  stacked.insert(stacked.end(), lower.begin(), lower.end());
  const IntMatrix full = left_kernel(stacked);
  RatMatrix projected;
  for (const auto& y : full) {
    std::vector<mpq_class> l(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(rep.rows));
    projected.push_back(std::move(l));
  }
  rep.basis = echelon_basis(projected, rep.rows);
  rep.d_k = rep.basis.size();
  {
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(k, rep);
  }
  return rep;
}

IntVector left_multiply(const IntVector& L, const TailMatrix& A) {
  if (L.size() != A.rows.size()) throw PreconditionError("vector length does not match the matrix rows");
  IntVector out(A.cols.size(), mpz_class(0));
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += L[i] * A.entries[i][j];
  }
  return out;
}

bool in_row_span(const IntVector& v, const IntMatrix& M) {
  if (M.empty()) return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
  IntMatrix ext = M;
  ext.push_back(v);
  return rank_bareiss(ext) == rank_bareiss(M);
}

std::optional<BridgeResult> bridge(unsigned k) {
  const TailMatrix a = build_matrix(k);
  const std::size_t nr = a.rows.size();
  const std::size_t nc = a.cols.size();
  // Solve A^T y = e_last: augmented system with nc equations, nr unknowns.
  RatMatrix sys(nc, std::vector<mpq_class>(nr + 1));
  for (std::size_t j = 0; j < nc; ++j) {
    for (std::size_t i = 0; i < nr; ++i) sys[j][i] = a.entries[i][j];
    sys[j][nr] = (j + 1 == nc) ? 1 : 0;
  }
  const auto pivots = rref(sys, nr + 1);
  if (!pivots.empty() && pivots.back() == nr) return std::nullopt;  // inconsistent
  std::vector<mpq_class> y(nr, mpq_class(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) y[pivots[i]] = sys[i][nr];
  mpz_class den = 1;
  for (const auto& x : y) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  BridgeResult b;
  b.k = k;
  mpz_class g = 0;
  for (const auto& x : y) {
    b.L.push_back(mpq_class(x * mpq_class(den)).get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.L.back().get_mpz_t());
  }
  for (auto& x : b.L) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  b.c = den / g;
  return b;
}

bool VanishingReport::certified() const {
  for (const auto& r : rows) {
    if (abs(r.residual) > r.certificate) return false;
  }
  return true;
}

VanishingReport certify_vanishing(const IntVector& L, unsigned k, unsigned long n_max, unsigned digits) {
  const auto reps = representatives(k);
  if (L.size() != reps.size()) throw PreconditionError("vector length does not match the weight-k representatives");
  const DpPlan plan = make_plan(reps, digits);
  if (n_max > plan.N) throw PreconditionError("n_max exceeds the dp iteration count");
  std::vector<unsigned long> snaps;
  for (unsigned long n = 0; n <= n_max; ++n) snaps.push_back(n);
  const DpResult res = run(plan, snaps);
  mpz_class weight = 0;
  for (const auto& x : L) weight += abs(x);
  VanishingReport out;
  out.N = plan.N;
  out.max_residual = 0;
  out.max_certificate = 0;
  for (unsigned long n = 0; n <= n_max; ++n) {
    const auto& gen = n == 0 ? res.values : res.snapshots.at(n);
    mpq_class s = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (L[i] != 0) s += mpq_class(L[i]) * gen[res.index_of(reps[i])].to_rational();
    }
    VanishingReport::Row row;
    row.n = n;
    row.residual = s;
    row.certificate = mpq_class(weight) * intermediate_error_bound(plan.N, plan.precision.step_alpha, n);
    out.max_residual = std::max(out.max_residual, mpq_class(abs(s)));
    out.max_certificate = std::max(out.max_certificate, row.certificate);
    out.rows.push_back(std::move(row));
  }
  return out;
}

mpq_class bridge_step_deviation(const BridgeResult& b, unsigned long N) {
  const auto reps = representatives(b.k);
  std::vector<unsigned long> snaps;
  for (unsigned long n = 0; n <= N; ++n) snaps.push_back(n);
  const DpExactResult res = run_exact(closure(reps), N, snaps);
  auto dot = [&](unsigned long n) {
    const auto& gen = res.snapshots.at(n);
    mpq_class s = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      auto it = std::lower_bound(res.words.begin(), res.words.end(), reps[i]);
      s += mpq_class(b.L[i]) * gen[static_cast<std::size_t>(it - res.words.begin())];
    }
    return s;
  };
  mpq_class worst = 0;
  for (unsigned long n = 1; n <= N; ++n) {
    const mpq_class expected = mpq_class(b.c) * base_empty(n, n) / mpq_class(ipow(n, b.k));
    const mpq_class dev = abs(dot(n - 1) - dot(n) - expected);
    worst = std::max(worst, dev);
  }
  return worst;
}

std::string composition_label(const BinaryWord& w) { return composition_of_word(w).to_string(); }

}  // namespace mzv
