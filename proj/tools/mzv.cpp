// mzv: multiple zeta values and their double tails with certified errors.
//
//   mzv zeta "(2,1,3,2)" --digits 100 --algorithm series
//   mzv table 8 --digits 100 --format json
//   mzv tails 01 1 1 --digits 20
//   mzv relations 6 --certify
//   mzv bench "(2,1,3,2)" --table 8 --digits 100
//
// Exit codes: 0 success, 1 parse error, 2 precondition violation.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mzv/commands.hpp"
#include "mzv/errors.hpp"

namespace {

struct Options {
  unsigned digits = 30;
  std::string algorithm;
  std::string format = "text";
  std::string cache;
  unsigned long n_max = 0;
};

void add_common(CLI::App* cmd, Options& o, bool with_algorithm) {
  cmd->add_option("--digits,-d", o.digits, "decimal digits after the point")->capture_default_str();
  if (with_algorithm) cmd->add_option("--algorithm,-a", o.algorithm, "dp, series or baseline");
  cmd->add_option("--format,-f", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  cmd->add_option("--cache", o.cache, "JSON-lines result cache");
  cmd->add_option("--n-max", o.n_max, "override the iteration count");
}

mzv::JobSpec job_of(const Options& o) {
  mzv::JobSpec spec;
  spec.digits = o.digits;
  if (!o.algorithm.empty()) spec.algorithm = mzv::parse_algorithm(o.algorithm);
  if (o.n_max) spec.n_max = o.n_max;
  if (!o.cache.empty()) spec.cache_path = o.cache;
  return spec;
}

void emit(const mzv::ResultRecord& r, const Options& o) {
  if (o.format == "json") {
    std::cout << mzv::to_json_line(r) << "\n";
  } else {
    std::cout << mzv::to_text(r);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple zeta values and double tails with certified error bounds"};
  app.require_subcommand(1);
  Options o;

  std::string target;
  auto* zeta = app.add_subcommand("zeta", "one multiple zeta value");
  zeta->add_option("target", target, "composition \"(3,1)\" or binary word \"0011\"")->required();
  add_common(zeta, o, true);

  unsigned weight = 0;
  auto* table = app.add_subcommand("table", "all multiple zeta values up to a weight, one dp run");
  table->add_option("weight", weight, "maximal weight k >= 2")->required();
  add_common(table, o, true);

  std::string word;
  unsigned long m = 0, n = 0;
  auto* tails = app.add_subcommand("tails", "double tail zeta(w)_{m,n}");
  tails->add_option("word", word, "binary word or composition")->required();
  tails->add_option("m", m, "left index")->required();
  tails->add_option("n", n, "right index")->required();
  add_common(tails, o, true);

  unsigned rel_k = 0;
  bool certify = false;
  unsigned long certify_n = 5;
  auto* relations = app.add_subcommand("relations", "tail matrix, kernel and bridge for one weight");
  relations->add_option("weight", rel_k, "weight k >= 2")->required();
  relations->add_flag("--certify", certify, "check the kernel vectors numerically");
  relations->add_option("--certify-n", certify_n, "largest n checked by --certify")->capture_default_str();
  relations->add_option("--digits,-d", o.digits, "digits for the numeric parts")->capture_default_str();
  relations->add_option("--format,-f", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> bench_targets;
  std::vector<unsigned> bench_tables;
  std::vector<std::string> bench_algorithms;
  auto* bench = app.add_subcommand("bench", "timing and step counts across algorithms");
  bench->add_option("targets", bench_targets, "compositions to evaluate with each algorithm");
  bench->add_option("--table", bench_tables, "weights for full dp tables");
  bench->add_option("--algorithms", bench_algorithms, "subset of dp, series, baseline")->delimiter(',');
  bench->add_option("--digits,-d", o.digits, "decimal digits")->capture_default_str();
  bench->add_option("--format,-f", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  bench->add_option("--cache", o.cache, "JSON-lines result cache");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (zeta->parsed()) {
      emit(mzv::cmd_zeta(target, job_of(o)), o);
    } else if (table->parsed()) {
      for (const auto& r : mzv::cmd_table(weight, job_of(o))) emit(r, o);
    } else if (tails->parsed()) {
      emit(mzv::cmd_tails(word, m, n, job_of(o)), o);
    } else if (relations->parsed()) {
      const auto rep = mzv::cmd_relations(rel_k, certify, o.digits, certify_n);
      if (o.format == "json") {
        std::cout << mzv::relations_json(rep).dump() << "\n";
      } else {
        std::cout << mzv::relations_text(rep);
      }
    } else if (bench->parsed()) {
      mzv::BenchSpec spec;
      spec.targets = bench_targets;
      spec.tables = bench_tables;
      spec.digits = o.digits;
      if (!bench_algorithms.empty()) {
        spec.algorithms.clear();
        for (const auto& a : bench_algorithms) spec.algorithms.push_back(mzv::parse_algorithm(a));
      }
      if (!o.cache.empty()) spec.cache_path = o.cache;
      const auto rep = mzv::cmd_bench(spec);
      if (o.format == "json") {
        std::cout << mzv::bench_json(rep).dump() << "\n";
      } else {
        std::cout << mzv::bench_text(rep);
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
