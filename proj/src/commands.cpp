#include "mzv/commands.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "mzv/dp.hpp"
#include "mzv/errors.hpp"
#include "mzv/fixnum.hpp"
#include "mzv/series.hpp"
#include "mzv/tails.hpp"
#include "mzv/words.hpp"

namespace mzv {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_digits(unsigned digits) {
  if (digits == 0) throw ParseError("--digits must be at least 1");
}

BinaryWord parse_zeta_target(const std::string& target) {
  const BinaryWord w = parse_target(target);
  if (w.empty()) throw ParseError("'" + target + "' is empty; zeta needs a non-empty composition");
  if (!w.admissible()) {
    if (w.ends_with(1)) {
      throw ParseError(composition_of_word(w).to_string() + " is not admissible: a_1 must be >= 2");
    }
    throw ParseError("word '" + w.to_string() + "' is not admissible: it must start with 0 and end with 1");
  }
  return w;
}

ResultRecord base_record(const BinaryWord& w, unsigned digits, Algorithm a) {
  ResultRecord r;
  const Composition c = composition_of_word(w);
  r.composition = c.to_string();
  r.word = w.to_string();
  r.weight = static_cast<unsigned>(w.weight());
  r.depth = static_cast<unsigned>(w.depth());
  r.digits = digits;
  r.algorithm = algorithm_name(a);
  return r;
}

void fill_value(ResultRecord& r, const FixedReal& value, const mpq_class& cert, unsigned long N) {
  if (cert >= pow10_neg(r.digits)) {
    throw PreconditionError("N = " + std::to_string(N) + " certifies only " + sci_upper(cert) + ", not " +
                            std::to_string(r.digits) + " digits");
  }
  r.value = to_decimal(value, r.digits, cert);
  r.certified_error = sci_upper(cert);
  r.N = N;
}

/// Fixed-point scale for a series run with a forced N: the per-term rounding
/// grows like k^2 N^2 ulp, so this leaves ample guard bits.
unsigned series_scale(std::size_t k, unsigned long N, unsigned digits) {
  const mpz_class growth = mpz_class(static_cast<unsigned long>(k * k)) * N * (N + 1) * 64;
  return digits_to_bits(digits) + 8 + static_cast<unsigned>(mpz_sizeinbase(growth.get_mpz_t(), 2));
}

ResultRecord compute_zeta(const BinaryWord& w, const JobSpec& spec, Algorithm a) {
  ResultRecord r = base_record(w, spec.digits, a);
  const auto t0 = Clock::now();
  switch (a) {
    case Algorithm::dp: {
      const DpPlan plan = make_plan({w}, spec.digits, spec.n_max);
      const DpResult res = run(plan);
      fill_value(r, res.value(w), res.total_error(), res.N);
      break;
    }
    case Algorithm::series: {
      SeriesValue v = spec.n_max ? general_tail_series_fixed(w, 0, 0, *spec.n_max,
                                                             series_scale(w.weight(), *spec.n_max, spec.digits))
                                 : zeta_series(composition_of_word(w), spec.digits);
      fill_value(r, v.value, v.certified_error(), v.N);
      break;
    }
    case Algorithm::baseline: {
      if (spec.n_max) throw PreconditionError("--n-max applies to the dp and series algorithms only");
      const BaselineValue v = baseline_chasles(composition_of_word(w), spec.digits);
      fill_value(r, v.value, v.certified_error(), v.N);
      break;
    }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "dp") return Algorithm::dp;
  if (name == "series") return Algorithm::series;
  if (name == "baseline") return Algorithm::baseline;
  throw ParseError("unknown algorithm '" + std::string(name) + "' (expected dp, series or baseline)");
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::dp:
      return "dp";
    case Algorithm::series:
      return "series";
    case Algorithm::baseline:
      return "baseline";
  }
  return "?";
}

ResultRecord cmd_zeta(const std::string& target, const JobSpec& spec) {
  require_digits(spec.digits);
  const BinaryWord w = parse_zeta_target(target);
  const Algorithm a = spec.algorithm.value_or(Algorithm::dp);
  if (spec.n_max && *spec.n_max == 0) throw ParseError("--n-max must be at least 1");

  std::optional<ResultCache> cache;
  if (spec.cache_path && !spec.n_max) {
    const auto t0 = Clock::now();
    cache.emplace(*spec.cache_path);
    const ResultRecord probe = base_record(w, spec.digits, a);
    if (auto hit = cache->lookup(key_of(probe))) {
      hit->wall_ms = ms_since(t0);
      return *hit;
    }
  }
  ResultRecord r = compute_zeta(w, spec, a);
  if (cache) cache->store(r);
  return r;
}

std::vector<ResultRecord> cmd_table(unsigned k, const JobSpec& spec) {
  require_digits(spec.digits);
  if (k < 2) throw PreconditionError("table needs weight k >= 2");
  if (spec.algorithm && *spec.algorithm != Algorithm::dp) {
    throw ParseError("table runs the dp algorithm only (one run for all words)");
  }
  if (spec.n_max && *spec.n_max == 0) throw ParseError("--n-max must be at least 1");
  const auto words = enumerate_admissible(k);
  const auto t0 = Clock::now();

  std::optional<ResultCache> cache;
  if (spec.cache_path && !spec.n_max) {
    cache.emplace(*spec.cache_path);
    std::vector<ResultRecord> hits;
    for (const auto& w : words) {
      auto hit = cache->lookup(key_of(base_record(w, spec.digits, Algorithm::dp)));
      if (!hit) break;
      hits.push_back(std::move(*hit));
    }
    if (hits.size() == words.size()) {
      const double elapsed = ms_since(t0);
      for (auto& h : hits) h.wall_ms = elapsed;
      return hits;
    }
  }

  const DpPlan plan = make_plan(words, spec.digits, spec.n_max);
  const DpResult res = run(plan);
  std::vector<ResultRecord> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    ResultRecord r = base_record(w, spec.digits, Algorithm::dp);
    fill_value(r, res.value(w), res.total_error(), res.N);
    out.push_back(std::move(r));
  }
  const double elapsed = ms_since(t0);
  for (auto& r : out) {
    r.wall_ms = elapsed;
    if (cache) cache->store(r);
  }
  return out;
}

ResultRecord cmd_tails(const std::string& word, unsigned long m, unsigned long n, const JobSpec& spec) {
  require_digits(spec.digits);
  const BinaryWord w = parse_target(word);
  require_valid_index(w, m, n);
  const bool series_ok = w.weight() >= 2 && w.admissible();
  if (spec.algorithm && *spec.algorithm != Algorithm::series) {
    throw ParseError("tails supports --algorithm series only");
  }
  if (spec.n_max && *spec.n_max == 0) throw ParseError("--n-max must be at least 1");

  ResultRecord r;
  r.composition = w.ends_with(1) || w.empty() ? composition_of_word(w).to_string() : "";
  r.word = w.to_string();
  r.weight = static_cast<unsigned>(w.weight());
  r.depth = static_cast<unsigned>(w.depth());
  r.digits = spec.digits;
  r.algorithm = series_ok ? "series" : "oracle";
  r.m = m;
  r.n = n;

  std::optional<ResultCache> cache;
  const auto t0 = Clock::now();
  if (spec.cache_path && !spec.n_max) {
    cache.emplace(*spec.cache_path);
    if (auto hit = cache->lookup(key_of(r))) {
      hit->wall_ms = ms_since(t0);
      return *hit;
    }
  }

  const mpq_class target = pow10_neg(spec.digits);
  if (series_ok) {
    const SeriesValue v = spec.n_max ? general_tail_series_fixed(w, m, n, *spec.n_max,
                                                                 series_scale(w.weight(), *spec.n_max, spec.digits))
                                     : general_tail_series(w, m, n, spec.digits);
    fill_value(r, v.value, v.certified_error(), v.N);
    r.wall_ms = ms_since(t0);
    // The exact reference stays fast for moderate indices and precision.
    if (std::max(m, n) <= 300 && spec.digits <= 60 && w.weight() <= 10) {
      const OracleValue o = tail_oracle(w, m, n, target);
      r.reference_value = decimal_string(o.value, spec.digits);
      r.reference_error = sci_upper(o.error);
    }
  } else {
    if (spec.n_max) throw PreconditionError("--n-max applies to series tails only");
    const OracleValue o = tail_oracle(w, m, n, target);
    if (o.error >= target) {
      throw PreconditionError("reference evaluator reached only " + sci_upper(o.error) + " for this tail");
    }
    r.value = decimal_string(o.value, spec.digits);
    r.certified_error = sci_upper(o.error);
    r.N = o.terms;
    r.wall_ms = ms_since(t0);
  }
  if (cache) cache->store(r);
  return r;
}

std::optional<mpq_class> recognize_rational(const mpq_class& x, const mpq_class& tol, const mpz_class& max_den) {
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = 0;
  mpz_class k_prev = 0, k = 1;
  mpq_class rest = x;
  for (int i = 0; i < 200; ++i) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const mpz_class h_next = a * h_prev + h;
    const mpz_class k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    if (k_prev > max_den) return std::nullopt;
    const mpq_class approx(h_prev, k_prev);
    if (abs(x - approx) < tol) {
      mpq_class out = approx;
      out.canonicalize();
      return out;
    }
    rest -= a;
    if (rest == 0) return std::nullopt;
    rest = 1 / rest;
  }
  return std::nullopt;
}

RelationsReport cmd_relations(unsigned k, bool certify, unsigned digits, unsigned long n_max) {
  if (k < 2) throw PreconditionError("relations needs weight k >= 2");
  require_digits(digits);
  RelationsReport rep;
  rep.matrix = build_matrix(k);
  rep.kernel = kernel(k);
  rep.bridge = bridge(k);
  rep.digits = digits;
  rep.n_max = n_max;

  if (rep.bridge) {
    // Telescoping L.X_n from n = 0 gives L.zeta = c sum n^-k / C(2n,n).
    const auto& reps = rep.matrix.rows;
    const DpPlan plan = make_plan(reps, digits);
    const DpResult res = run(plan);
    mpq_class combo = 0;
    mpz_class weight = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      combo += mpq_class(rep.bridge->L[i]) * res.value(reps[i]).to_rational();
      weight += abs(rep.bridge->L[i]);
    }
    const mpq_class zk = res.value(reps.front()).to_rational();
    const mpq_class err = res.total_error();
    const mpq_class tol = mpq_class(mpz_class(weight) + 4) * err / zk * 16;
    if (auto ratio = recognize_rational(combo / zk, tol, 100000)) {
      if (*ratio != 0) {
        const SeriesValue s = central_binomial_sum(k, digits);
        BridgeIdentity id;
        id.ratio = *ratio;
        id.coefficient = mpq_class(rep.bridge->c) / *ratio;
        id.residual = abs(zk - id.coefficient * s.value.to_rational());
        id.certificate = err + abs(id.coefficient) * s.certified_error();
        rep.identity = id;
      }
    }
  }

  if (certify) {
    for (const auto& L : rep.kernel.basis) rep.certification.push_back(certify_vanishing(L, k, n_max, digits));
  }
  return rep;
}

namespace {

std::string vector_text(const IntVector& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

std::vector<std::string> labels(const std::vector<BinaryWord>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(w.empty() ? "()" : composition_label(w));
  return out;
}

nlohmann::json int_rows(const IntMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string relations_text(const RelationsReport& r) {
  std::ostringstream out;
  const auto rows = labels(r.matrix.rows);
  const auto cols = labels(r.matrix.cols);
  out << "weight " << r.matrix.k << ": " << rows.size() << " x " << cols.size() << " tail matrix\n";
  out << "rows:";
  for (const auto& s : rows) out << " " << s;
  out << "\ncols:";
  for (const auto& s : cols) out << " " << s;
  out << "\n";
  for (const auto& row : r.matrix.entries) {
    out << " ";
    for (const auto& x : row) out << " " << x;
    out << "\n";
  }
  out << "rank " << r.kernel.rank << ", plain kernel dimension " << r.kernel.plain_dim << ", d_k = " << r.kernel.d_k
      << "\n";
  for (const auto& L : r.kernel.basis) out << "kernel " << vector_text(L) << "\n";
  if (r.bridge) {
    out << "bridge L = " << vector_text(r.bridge->L) << ", L A = " << r.bridge->c << " e_last\n";
    if (r.identity) {
      out << "identity: zeta(" << r.matrix.k << ") = " << r.identity->coefficient.get_str() << " * sum n^-"
          << r.matrix.k << " / C(2n,n)   (L.zeta = " << r.identity->ratio.get_str() << " zeta(" << r.matrix.k
          << "); residual " << sci_upper(r.identity->residual) << " <= " << sci_upper(r.identity->certificate)
          << ")\n";
    }
  } else {
    out << "bridge: none (the empty-word column is not reachable)\n";
  }
  for (std::size_t i = 0; i < r.certification.size(); ++i) {
    const auto& c = r.certification[i];
    out << "certify kernel " << i + 1 << " at " << r.digits << " digits (N=" << c.N << "): max |L.X_n| over n <= "
        << r.n_max << " is " << sci_upper(c.max_residual) << ", bound " << sci_upper(c.max_certificate) << ", "
        << (c.certified() ? "certified" : "NOT certified") << "\n";
  }
  return out.str();
}

nlohmann::json relations_json(const RelationsReport& r) {
  nlohmann::json j;
  j["k"] = r.matrix.k;
  j["rows"] = labels(r.matrix.rows);
  j["cols"] = labels(r.matrix.cols);
  j["matrix"] = int_rows(r.matrix.entries);
  j["rank"] = r.kernel.rank;
  j["plain_kernel_dim"] = r.kernel.plain_dim;
  j["d_k"] = r.kernel.d_k;
  j["kernel_basis"] = int_rows(r.kernel.basis);
  if (r.bridge) {
    nlohmann::json b;
    b["L"] = int_rows({r.bridge->L}).at(0);
    b["c"] = r.bridge->c.get_str();
    if (r.identity) {
      b["ratio"] = r.identity->ratio.get_str();
      b["coefficient"] = r.identity->coefficient.get_str();
      b["residual"] = sci_upper(r.identity->residual);
      b["certificate"] = sci_upper(r.identity->certificate);
    }
    j["bridge"] = b;
  } else {
    j["bridge"] = nullptr;
  }
  if (!r.certification.empty()) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : r.certification) {
      cs.push_back({{"digits", r.digits},
                    {"n_max", r.n_max},
                    {"N", c.N},
                    {"max_residual", sci_upper(c.max_residual)},
                    {"max_certificate", sci_upper(c.max_certificate)},
                    {"certified", c.certified()}});
    }
    j["certification"] = cs;
  }
  return j;
}

BenchReport cmd_bench(const BenchSpec& spec) {
  require_digits(spec.digits);
  BenchReport rep;
  JobSpec job;
  job.digits = spec.digits;
  job.cache_path = spec.cache_path;
  for (unsigned k : spec.tables) {
    job.algorithm = Algorithm::dp;
    const auto t0 = Clock::now();
    const auto records = cmd_table(k, job);
    BenchRow row;
    row.target = "weight<=" + std::to_string(k);
    row.algorithm = "dp";
    row.digits = spec.digits;
    row.steps = records.empty() ? 0 : records.front().N;
    row.values = records.size();
    row.wall_ms = ms_since(t0);
    row.cached = !records.empty() && records.front().cached;
    rep.rows.push_back(row);
  }
  for (const auto& target : spec.targets) {
    std::optional<BenchRow> series_row, baseline_row;
    for (Algorithm a : spec.algorithms) {
      job.algorithm = a;
      const auto t0 = Clock::now();
      const ResultRecord r = cmd_zeta(target, job);
      BenchRow row;
      row.target = r.composition;
      row.algorithm = r.algorithm;
      row.digits = spec.digits;
      row.steps = r.N;
      row.values = 1;
      row.wall_ms = ms_since(t0);
      row.cached = r.cached;
      rep.rows.push_back(row);
      if (a == Algorithm::series) series_row = row;
      if (a == Algorithm::baseline) baseline_row = row;
    }
    if (series_row && baseline_row) {
      BenchComparison c;
      c.target = series_row->target;
      c.series_steps = series_row->steps;
      c.baseline_steps = baseline_row->steps;
      c.step_ratio = static_cast<double>(c.series_steps) / static_cast<double>(c.baseline_steps);
      c.series_ms = series_row->wall_ms;
      c.baseline_ms = baseline_row->wall_ms;
      rep.comparisons.push_back(c);
    }
  }
  return rep;
}

std::string bench_text(const BenchReport& b) {
  std::ostringstream out;
  out << "target            algorithm  digits   steps  values   wall ms\n";
  char line[160];
  for (const auto& r : b.rows) {
    std::snprintf(line, sizeof line, "%-17s %-10s %6u %7lu %7zu %9.3f%s\n", r.target.c_str(), r.algorithm.c_str(),
                  r.digits, r.steps, r.values, r.wall_ms, r.cached ? "  (cached)" : "");
    out << line;
  }
  for (const auto& c : b.comparisons) {
    std::snprintf(line, sizeof line, "%s: series/baseline steps %lu/%lu = %.3f, time %.3f/%.3f ms\n", c.target.c_str(),
                  c.series_steps, c.baseline_steps, c.step_ratio, c.series_ms, c.baseline_ms);
    out << line;
  }
  return out.str();
}

nlohmann::json bench_json(const BenchReport& b) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : b.rows) {
    j["rows"].push_back({{"target", r.target},
                         {"algorithm", r.algorithm},
                         {"digits", r.digits},
                         {"steps", r.steps},
                         {"values", r.values},
                         {"wall_ms", r.wall_ms},
                         {"cached", r.cached}});
  }
  j["comparisons"] = nlohmann::json::array();
  for (const auto& c : b.comparisons) {
    j["comparisons"].push_back({{"target", c.target},
                                {"series_steps", c.series_steps},
                                {"baseline_steps", c.baseline_steps},
                                {"step_ratio", c.step_ratio},
                                {"series_ms", c.series_ms},
                                {"baseline_ms", c.baseline_ms}});
  }
  return j;
}

}  // namespace mzv
