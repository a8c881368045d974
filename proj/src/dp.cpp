#include "mzv/dp.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mzv/errors.hpp"
#include "mzv/tails.hpp"

namespace mzv {

namespace {

constexpr long kAtomZero = -1;
constexpr long kAtomOne = -2;
constexpr long kAtomEmpty = -3;

struct Rule {
  unsigned a = 0;
  unsigned b = 0;
  long init = 0;
  long fin = 0;
  long mid = 0;
};

long slot_of(const BinaryWord& u, const std::vector<BinaryWord>& words) {
  if (u.empty()) return kAtomEmpty;
  if (u.weight() == 1) return u[0] == 0 ? kAtomZero : kAtomOne;
  auto it = std::lower_bound(words.begin(), words.end(), u);
  if (it == words.end() || *it != u) throw PreconditionError("word set is not closed: missing '" + u.to_string() + "'");
  return static_cast<long>(it - words.begin());
}

std::vector<Rule> compile(const std::vector<BinaryWord>& words) {
  if (!std::is_sorted(words.begin(), words.end())) throw PreconditionError("dp word list must be in shortlex order");
  std::vector<Rule> rules;
  rules.reserve(words.size());
  for (const auto& w : words) {
    const Decomposition d = decompose(w);
    rules.push_back(Rule{d.a, d.b, slot_of(d.init, words), slot_of(d.fin, words), slot_of(d.mid, words)});
  }
  return rules;
}

/// Descending recurrence shared by the fixed-point and exact runs. binom(n)
/// returns 1/C(2n,n) in the arithmetic of ar.
template <class Arith, class Binom>
std::vector<typename Arith::value_type> descend(const Arith& ar, const std::vector<BinaryWord>& words, unsigned long N,
                                                Binom binom, const std::vector<unsigned long>& snapshot_at,
                                                std::map<unsigned long, std::vector<typename Arith::value_type>>& snaps) {
  using V = typename Arith::value_type;
  const auto rules = compile(words);
  unsigned max_exp = 1;
  for (const auto& r : rules) max_exp = std::max(max_exp, r.a + r.b + 1);
  const std::set<unsigned long> want(snapshot_at.begin(), snapshot_at.end());

  std::vector<V> cur(words.size(), ar.zero());
  std::vector<V> next(words.size(), ar.zero());
  if (want.count(N)) snaps[N] = cur;
  std::vector<mpz_class> pw(max_exp + 1);
  for (unsigned long n = N; n >= 1; --n) {
    pw[0] = 1;
    for (unsigned e = 1; e <= max_exp; ++e) pw[e] = pw[e - 1] * n;
    const V bn = binom(n);
    auto term = [&](long slot, unsigned e) {
      switch (slot) {
        case kAtomZero:
        case kAtomOne:
          return ar.div_int(bn, pw[e + 1]);
        case kAtomEmpty:
          return ar.div_int(bn, pw[e]);
        default:
          return ar.div_int(cur[static_cast<std::size_t>(slot)], pw[e]);
      }
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const Rule& r = rules[i];
      V acc = ar.add(cur[i], term(r.init, r.a));
      acc = ar.add(acc, term(r.fin, r.b));
      acc = ar.add(acc, term(r.mid, r.a + r.b));
      next[i] = std::move(acc);
    }
    cur.swap(next);
    if (want.count(n - 1)) snaps[n - 1] = cur;
  }
  return cur;
}

}  // namespace

std::vector<BinaryWord> closure(const std::vector<BinaryWord>& targets) {
  std::set<BinaryWord> seen;
  std::deque<BinaryWord> queue;
  for (const auto& t : targets) {
    if (t.empty() || !t.admissible()) {
      throw PreconditionError("dp targets must be non-empty admissible words, got '" + t.to_string() + "'");
    }
    if (seen.insert(t).second) queue.push_back(t);
  }
  while (!queue.empty()) {
    const BinaryWord w = queue.front();
    queue.pop_front();
    const Decomposition d = decompose(w);
    for (const BinaryWord* part : {&d.init, &d.fin, &d.mid}) {
      if (is_atom(*part)) continue;
      if (seen.insert(*part).second) queue.push_back(*part);
    }
  }
  return {seen.begin(), seen.end()};
}

mpq_class error_bound(unsigned long N, const mpq_class& alpha) {
  mpz_class four_n = 1;
  four_n <<= 2 * N;
  mpq_class theory(mpz_class(N + 1) * (N + 1), four_n);
  theory *= zeta2_upper();
  mpq_class sq(mpz_class(N) * (N + 1) * (2 * N + 1), 6);
  mpq_class r = theory + sq * alpha;
  r.canonicalize();
  return r;
}

mpq_class intermediate_error_bound(unsigned long N, const mpq_class& alpha, unsigned long n) {
  if (n > N) throw PreconditionError("intermediate_error_bound needs n <= N");
  mpz_class four_n = 1;
  four_n <<= 2 * N;
  mpq_class theory(mpz_class(N + 1) * (N + 1), four_n);
  theory *= zeta2_upper();
  // sum_{j=n+1}^{N} j^2
  auto sq = [](unsigned long x) -> mpz_class { return mpz_class(x) * (x + 1) * (2 * x + 1) / 6; };
  mpq_class squares(sq(N) - sq(n));
  mpq_class r = (theory + alpha * squares) / mpq_class(mpz_class(n + 1) * (n + 1));
  r.canonicalize();
  return r;
}

unsigned long choose_N(unsigned digits, const mpq_class& alpha) {
  const mpq_class target = pow10_neg(digits);
  for (unsigned long N = 0;; ++N) {
    if (error_bound(N, alpha) < target) return N;
    mpq_class sq(mpz_class(N) * (N + 1) * (2 * N + 1), 6);
    if (sq * alpha >= target) {
      throw PreconditionError("step accuracy too coarse for " + std::to_string(digits) + " digits");
    }
  }
}

DpPlan make_plan(const std::vector<BinaryWord>& targets, unsigned digits, std::optional<unsigned long> n_override) {
  DpPlan plan;
  plan.words = closure(targets);
  if (n_override) {
    if (*n_override == 0) throw PreconditionError("N must be at least 1");
    plan.N = *n_override;
    plan.precision = PrecisionPlan::make(digits, plan.N);
    return plan;
  }
  unsigned long N = std::max<unsigned long>(1, choose_N(digits, 0));
  PrecisionPlan prec = PrecisionPlan::make(digits, N);
  for (int iter = 0; iter < 16; ++iter) {
    const unsigned long next = std::max<unsigned long>(1, choose_N(digits, prec.step_alpha));
    if (next <= N) break;
    N = next;
    prec = PrecisionPlan::make(digits, N);
  }
  plan.N = N;
  plan.precision = prec;
  return plan;
}

std::size_t DpResult::index_of(const BinaryWord& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) throw PreconditionError("word '" + w.to_string() + "' is not part of this run");
  return static_cast<std::size_t>(it - words.begin());
}

const FixedReal& DpResult::value(const BinaryWord& w) const { return values[index_of(w)]; }

const mpq_class& DpExactResult::value(const BinaryWord& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) throw PreconditionError("word '" + w.to_string() + "' is not part of this run");
  return values[static_cast<std::size_t>(it - words.begin())];
}

DpResult run(const DpPlan& plan, const std::vector<unsigned long>& snapshot_at) {
  if (plan.N == 0) throw PreconditionError("N must be at least 1");
  const FixedArith ar{plan.precision.scale};
  // 1/C(2n,n) ascending, each step one truncation: error stays below 2 ulp.
  std::vector<FixedReal> binoms;
  binoms.reserve(plan.N + 1);
  binoms.push_back(FixedReal::one(ar.scale));
  for (unsigned long n = 1; n <= plan.N; ++n) binoms.push_back(binom_recip_step(binoms.back(), n));

  DpResult res;
  res.words = plan.words;
  res.N = plan.N;
  res.precision = plan.precision;
  res.values = descend(
      ar, plan.words, plan.N, [&](unsigned long n) { return binoms[n]; }, snapshot_at, res.snapshots);
  res.theoretical_error = error_bound(plan.N, 0);
  res.rounding_error = error_bound(plan.N, plan.precision.step_alpha) - res.theoretical_error;
  return res;
}

DpExactResult run_exact(const std::vector<BinaryWord>& words, unsigned long N, const std::vector<unsigned long>& snapshot_at) {
  if (N == 0) throw PreconditionError("N must be at least 1");
  const ExactArith ar;
  DpExactResult res;
  res.words = words;
  res.N = N;
  res.values = descend(
      ar, words, N, [](unsigned long n) { return base_empty(n, n); }, snapshot_at, res.snapshots);
  res.theoretical_error = error_bound(N, 0);
  return res;
}

}  // namespace mzv
