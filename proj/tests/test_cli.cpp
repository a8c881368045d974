#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "mzv/commands.hpp"
#include "mzv/errors.hpp"
#include "mzv/fixnum.hpp"

using namespace mzv;

namespace {
std::string temp_path(const char* tag) {
  return (std::filesystem::temp_directory_path() / ("mzv_test_" + std::string(tag) + "_" + std::to_string(::getpid()) + ".jsonl"))
      .string();
}

mpq_class parse_decimal(const std::string& s) {
  const auto dot = s.find('.');
  const std::string frac = s.substr(dot + 1);
  mpq_class r(mpz_class(s.substr(0, dot) + frac, 10), mpz_class(ipow(10, frac.size())));
  r.canonicalize();
  return r;
}

JobSpec job(unsigned digits, std::optional<Algorithm> a = std::nullopt) {
  JobSpec s;
  s.digits = digits;
  s.algorithm = a;
  return s;
}
}  // namespace

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("dp") == Algorithm::dp);
  CHECK(parse_algorithm("series") == Algorithm::series);
  CHECK(parse_algorithm("baseline") == Algorithm::baseline);
  CHECK_THROWS_AS(parse_algorithm("fast"), ParseError);
  CHECK(std::string(algorithm_name(Algorithm::series)) == "series");
}

TEST_CASE("zeta records") {
  const auto r = cmd_zeta("(2)", job(50, Algorithm::series));
  CHECK(r.value.rfind("1.64493406684822643647", 0) == 0);
  CHECK(r.composition == "(2)");
  CHECK(r.word == "01");
  CHECK(r.weight == 2);
  CHECK(r.depth == 1);
  CHECK(r.digits == 50);
  CHECK(r.algorithm == "series");
  CHECK_FALSE(r.cached);

  const auto a = cmd_zeta("(2,1,3,2)", job(100, Algorithm::series));
  const auto b = cmd_zeta("01100101", job(100, Algorithm::dp));
  const auto c = cmd_zeta("(2,1,3,2)", job(100, Algorithm::baseline));
  CHECK(a.word == b.word);
  CHECK(abs(parse_decimal(a.value) - parse_decimal(b.value)) <= 2 * pow10_neg(100));
  CHECK(abs(parse_decimal(a.value) - parse_decimal(c.value)) <= 2 * pow10_neg(100));

  CHECK_THROWS_AS(cmd_zeta("(1,2)", job(10)), ParseError);
  CHECK_THROWS_AS(cmd_zeta("0110", job(10)), ParseError);
  CHECK_THROWS_AS(cmd_zeta("()", job(10)), ParseError);
  CHECK_THROWS_AS(cmd_zeta("(2)", job(0)), ParseError);
  JobSpec small = job(30);
  small.n_max = 5;
  CHECK_THROWS_AS(cmd_zeta("(2)", small), PreconditionError);
  JobSpec forced = job(10, Algorithm::series);
  forced.n_max = 40;
  CHECK(cmd_zeta("(2)", forced).N == 40);
}

TEST_CASE("certified error is below the printed precision") {
  for (Algorithm a : {Algorithm::dp, Algorithm::series, Algorithm::baseline}) {
    for (const char* t : {"(2)", "(3,1)", "(2,2,2)", "(5,1,1)"}) {
      const auto r = cmd_zeta(t, job(25, a));
      // "d.dde-XX" with XX > 25
      const auto e = r.certified_error.find('e');
      REQUIRE(e != std::string::npos);
      CHECK(std::stoi(r.certified_error.substr(e + 1)) <= -25);
    }
  }
}

TEST_CASE("tables") {
  const auto t8 = cmd_table(8, job(100));
  CHECK(t8.size() == 127);
  CHECK(cmd_table(2, job(10)).size() == 1);
  const auto t4 = cmd_table(4, job(30));
  auto find = [&](const std::string& c) {
    for (const auto& r : t4)
      if (r.composition == c) return parse_decimal(r.value);
    FAIL("missing " << c);
    return mpq_class(0);
  };
  CHECK(abs(4 * find("(3,1)") - find("(4)")) <= pow10_neg(28));
  // Duality pairs carry the same value.
  for (const auto& r : t8) {
    const std::string d = dual(BinaryWord::parse(r.word)).to_string();
    for (const auto& s : t8) {
      if (s.word == d) CHECK(abs(parse_decimal(s.value) - parse_decimal(r.value)) <= 2 * pow10_neg(100));
    }
  }
  CHECK_THROWS_AS(cmd_table(1, job(10)), PreconditionError);
  CHECK_THROWS_AS(cmd_table(4, job(10, Algorithm::series)), ParseError);
}

TEST_CASE("tails") {
  const auto whole = cmd_tails("01", 0, 0, job(20));
  CHECK(whole.value == "1.64493406684822643647");
  const auto t = cmd_tails("01", 1, 1, job(20));
  CHECK(t.value == "0.14493406684822643647");
  REQUIRE(t.reference_value);
  CHECK(*t.reference_value == t.value);
  CHECK(t.m == 1ul);
  const auto odd = cmd_tails("10", 1, 1, job(12));
  CHECK(odd.algorithm == "oracle");
  CHECK(odd.composition.empty());
  CHECK_THROWS_AS(cmd_tails("10", 0, 1, job(10)), PreconditionError);
  CHECK_THROWS_AS(cmd_tails("01", 1, 1, job(10, Algorithm::dp)), ParseError);
}

TEST_CASE("JSON round trip") {
  std::vector<ResultRecord> records = cmd_table(5, job(20));
  records.push_back(cmd_tails("0011", 2, 1, job(15)));
  records.push_back(cmd_tails("100", 1, 2, job(12)));
  for (const auto& r : records) {
    const std::string line = to_json_line(r);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(parse_json_line(line) == r);
  }
  CHECK_THROWS(parse_json_line("{\"composition\":1}"));
}

TEST_CASE("cache") {
  const std::string path = temp_path("cache");
  std::remove(path.c_str());
  JobSpec s = job(60, Algorithm::series);
  s.cache_path = path;
  const auto first = cmd_zeta("(3,1,2)", s);
  CHECK_FALSE(first.cached);
  const auto second = cmd_zeta("(3,1,2)", s);
  CHECK(second.cached);
  CHECK(second.value == first.value);
  JobSpec plain = job(60, Algorithm::series);
  CHECK(cmd_zeta("(3,1,2)", plain).value == second.value);

  // Other digits or algorithm miss.
  JobSpec other = s;
  other.algorithm = Algorithm::dp;
  CHECK_FALSE(cmd_zeta("(3,1,2)", other).cached);

  // Tables populate the cache per record.
  JobSpec ts = job(30);
  ts.cache_path = path;
  const auto t1 = cmd_table(5, ts);
  const auto t2 = cmd_table(5, ts);
  REQUIRE(t1.size() == t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t2[i].cached);
    CHECK(t2[i].value == t1[i].value);
  }

  // Tails are keyed by word and index.
  JobSpec tl = job(15);
  tl.cache_path = path;
  CHECK_FALSE(cmd_tails("0011", 2, 1, tl).cached);
  CHECK(cmd_tails("0011", 2, 1, tl).cached);
  CHECK_FALSE(cmd_tails("0011", 1, 2, tl).cached);

  // A torn line does not poison the cache.
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"composition\":\"(9\n";
  }
  CHECK(cmd_zeta("(3,1,2)", s).cached);
  std::remove(path.c_str());
}

TEST_CASE("determinism") {
  const auto a = cmd_table(6, job(40));
  const auto b = cmd_table(6, job(40));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ResultRecord x = a[i], y = b[i];
    x.wall_ms = y.wall_ms = 0;
    CHECK(x == y);
  }
  const auto r1 = relations_json(cmd_relations(6, true, 30));
  const auto r2 = relations_json(cmd_relations(6, true, 30));
  CHECK(r1 == r2);
}

TEST_CASE("relations reports") {
  const auto r6 = cmd_relations(6, true, 30);
  CHECK(r6.kernel.d_k == 1);
  CHECK_FALSE(r6.bridge);
  REQUIRE(r6.certification.size() == 1);
  CHECK(r6.certification[0].certified());
  const auto text = relations_text(r6);
  CHECK(text.find("kernel (2,-2,4,1,1,-2,-1,-2,1,-2)") != std::string::npos);

  const auto r4 = cmd_relations(4, false, 30);
  REQUIRE(r4.bridge);
  REQUIRE(r4.identity);
  CHECK(r4.identity->ratio == mpq_class(17, 4));
  CHECK(r4.identity->coefficient == mpq_class(36, 17));
  CHECK(r4.identity->residual <= r4.identity->certificate);

  const auto r2 = cmd_relations(2, false, 30);
  REQUIRE(r2.identity);
  CHECK(r2.identity->coefficient == 3);

  const auto r5 = cmd_relations(5, false, 30);
  CHECK(r5.kernel.d_k == 0);
  CHECK_FALSE(r5.bridge);
  const auto j = relations_json(r5);
  CHECK(j["bridge"].is_null());
  CHECK(j["rank"] == 4);
  CHECK_THROWS_AS(cmd_relations(1, false, 30), PreconditionError);
}

TEST_CASE("rational recognition") {
  CHECK(recognize_rational(mpq_class(17, 4) + pow10_neg(40), pow10_neg(30), 1000) == mpq_class(17, 4));
  CHECK(recognize_rational(mpq_class(-5, 7), pow10_neg(30), 1000) == mpq_class(-5, 7));
  CHECK_FALSE(recognize_rational(mpq_class(mpz_class("314159265358979323846"), mpz_class("100000000000000000000")),
                                 pow10_neg(15), 1000));
}

TEST_CASE("bench") {
  const std::string path = temp_path("bench");
  std::remove(path.c_str());
  BenchSpec spec;
  spec.targets = {"(2,1,3,2)"};
  spec.tables = {8};
  spec.digits = 100;
  spec.cache_path = path;
  const auto rep = cmd_bench(spec);
  CHECK(rep.rows.size() == 4);
  REQUIRE(rep.comparisons.size() == 1);
  CHECK(rep.comparisons[0].step_ratio <= 0.55);
  CHECK(rep.comparisons[0].step_ratio >= 0.45);
  const auto again = cmd_bench(spec);
  for (const auto& row : again.rows) CHECK(row.cached);
  const auto j = bench_json(again);
  CHECK(j["rows"].size() == 4);
  CHECK(bench_text(again).find("series/baseline") != std::string::npos);
  std::remove(path.c_str());
}
