#pragma once

// The operations behind the mzv command-line tool. Each returns plain data;
// rendering lives next to it so tests can check both.

#include <gmpxx.h>

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mzv/relations.hpp"
#include "mzv/report.hpp"

namespace mzv {

enum class Algorithm { dp, series, baseline };

/// "dp", "series" or "baseline"; anything else is a ParseError.
Algorithm parse_algorithm(std::string_view name);
const char* algorithm_name(Algorithm a);

struct JobSpec {
  unsigned digits = 30;
  /// Unset means the subcommand's default.
  std::optional<Algorithm> algorithm;
  /// Replaces the automatically chosen iteration count.
  std::optional<unsigned long> n_max;
  std::optional<std::string> cache_path;
};

/// One MZV. target is "(3,1)", "3,1" or a binary word such as "0011".
ResultRecord cmd_zeta(const std::string& target, const JobSpec& spec);

/// Every admissible word of weight 2..k from one dp run, shortlex order.
std::vector<ResultRecord> cmd_table(unsigned k, const JobSpec& spec);

/// zeta(w)_{m,n}. Admissible words go through the central-binomial series
/// and, when cheap, are cross-checked by the exact reference evaluator;
/// other words use the reference evaluator alone.
ResultRecord cmd_tails(const std::string& word, unsigned long m, unsigned long n, const JobSpec& spec);

/// zeta(k) = coefficient * sum_{n >= 1} n^-k / C(2n, n), read off a bridge
/// vector once L.zeta / zeta(k) is recognised as a small rational.
struct BridgeIdentity {
  mpq_class ratio;        // L.zeta / zeta(k)
  mpq_class coefficient;  // c / ratio
  /// |zeta(k) - coefficient * sum| at the working precision, with its bound.
  mpq_class residual;
  mpq_class certificate;
};

struct RelationsReport {
  TailMatrix matrix;
  KernelReport kernel;
  std::optional<BridgeResult> bridge;
  std::optional<BridgeIdentity> identity;
  /// One report per kernel basis vector when certification was requested.
  std::vector<VanishingReport> certification;
  unsigned digits = 0;
  unsigned long n_max = 0;
};

RelationsReport cmd_relations(unsigned k, bool certify, unsigned digits, unsigned long n_max = 5);

/// Best rational p/q with q <= max_den and |x - p/q| < tol, from the
/// continued fraction of x.
std::optional<mpq_class> recognize_rational(const mpq_class& x, const mpq_class& tol, const mpz_class& max_den);

struct BenchRow {
  std::string target;  // composition, or "weight<=k"
  std::string algorithm;
  unsigned digits = 0;
  unsigned long steps = 0;
  std::size_t values = 0;
  double wall_ms = 0;
  bool cached = false;
};

struct BenchComparison {
  std::string target;
  unsigned long series_steps = 0;
  unsigned long baseline_steps = 0;
  double step_ratio = 0;
  double series_ms = 0;
  double baseline_ms = 0;
};

struct BenchSpec {
  std::vector<std::string> targets;
  std::vector<unsigned> tables;
  unsigned digits = 100;
  std::vector<Algorithm> algorithms{Algorithm::dp, Algorithm::series, Algorithm::baseline};
  std::optional<std::string> cache_path;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchComparison> comparisons;
};

BenchReport cmd_bench(const BenchSpec& spec);

std::string relations_text(const RelationsReport& r);
nlohmann::json relations_json(const RelationsReport& r);
std::string bench_text(const BenchReport& b);
nlohmann::json bench_json(const BenchReport& b);

}  // namespace mzv
