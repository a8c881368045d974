#include <doctest.h>

#include "mzv/relations.hpp"
#include "mzv/tails.hpp"

using namespace mzv;

namespace {
IntMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix out;
  for (const auto& r : rows) {
    IntVector v;
    for (long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}
IntVector V(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
std::vector<std::string> labels(const std::vector<BinaryWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.empty() ? "()" : composition_label(w));
  return out;
}
}  // namespace

TEST_CASE("weight 2 and 4 matrices") {
  const auto a2 = build_matrix(2);
  CHECK(a2.entries == M({{3}}));
  CHECK(labels(a2.cols) == std::vector<std::string>{"()"});

  const auto a4 = build_matrix(4);
  CHECK(labels(a4.rows) == std::vector<std::string>{"(4)", "(3,1)", "(2,2)"});
  CHECK(labels(a4.cols) == std::vector<std::string>{"(3)", "(2)", "()"});
  CHECK(a4.entries == M({{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}));
  CHECK(left_multiply(V({4, -2, 1}), a4) == V({0, 0, 9}));
}

TEST_CASE("weight 6 matrix") {
  const auto a6 = build_matrix(6);
  CHECK(labels(a6.rows) == std::vector<std::string>{"(6)", "(5,1)", "(4,2)", "(4,1,1)", "(3,3)", "(3,2,1)",
                                                    "(3,1,2)", "(2,4)", "(2,2,2)", "(2,1,3)"});
  CHECK(labels(a6.cols) ==
        std::vector<std::string>{"(5)", "(4,1)", "(3,2)", "(2,3)", "(4)", "(3,1)", "(2,2)", "(3)", "(2)", "()"});
  CHECK(a6.entries == M({{1, 0, 0, 0, 0, 0, 0, 0, 0, 2},
                         {1, 1, 0, 0, 1, 0, 0, 0, 0, 0},
                         {0, 0, 1, 0, 1, 0, 0, 1, 0, 0},
                         {0, 2, 0, 0, 0, 1, 0, 0, 0, 0},
                         {0, 0, 0, 1, 0, 0, 0, 1, 1, 0},
                         {0, 0, 2, 0, 0, 0, 1, 0, 0, 0},
                         {0, 0, 0, 1, 0, 1, 0, 1, 0, 0},
                         {0, 0, 0, 0, 1, 0, 0, 0, 1, 1},
                         {0, 0, 0, 0, 0, 0, 2, 0, 1, 0},
                         {0, 0, 0, 0, 0, 0, 0, 2, 0, 1}}));
  CHECK(rank_bareiss(a6.entries) == 9);
}

TEST_CASE("matrix shape and entries") {
  for (unsigned k : {4u, 6u, 8u}) {
    const unsigned h = k / 2;
    const std::size_t expected = (std::size_t{1} << (h - 2)) * ((std::size_t{1} << (h - 1)) + 1);
    const auto a = build_matrix(k);
    CHECK(a.rows.size() == expected);
    CHECK(a.cols.size() == expected);
  }
  for (unsigned k = 2; k <= 9; ++k) {
    const auto a = build_matrix(k);
    for (const auto& row : a.entries) {
      mpz_class sum = 0;
      for (const auto& x : row) {
        CHECK(x >= 0);
        sum += x;
      }
      // One unit for each of the init, fin and mid terms.
      CHECK(sum == 3);
    }
  }
}

TEST_CASE("rank and kernels of small matrices") {
  CHECK(rank_bareiss(M({{1, 2}, {2, 4}})) == 1);
  CHECK(rank_bareiss(M({{0, 0}, {0, 0}})) == 0);
  CHECK(rank_bareiss(M({{0, 1}, {1, 0}, {1, 1}})) == 2);
  const auto k = left_kernel(M({{1, 2}, {2, 4}, {0, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == V({2, -1, 0}));
  CHECK(in_row_span(V({3, 6}), M({{1, 2}})));
  CHECK_FALSE(in_row_span(V({3, 5}), M({{1, 2}})));
}

TEST_CASE("kernel ranks d_k") {
  const std::vector<std::size_t> expected{0, 0, 0, 0, 1, 0, 4, 2, 14};
  for (unsigned k = 2; k <= 10; ++k) {
    const auto r = kernel(k);
    CHECK(r.d_k == expected[k - 2]);
    CHECK(r.plain_dim == r.rows - r.rank);
    const auto a = build_matrix(k);
    for (const auto& L : r.plain_basis) {
      for (const auto& x : left_multiply(L, a)) CHECK(x == 0);
    }
    const auto E = lower_relation_rows(k);
    for (const auto& L : r.basis) {
      mpz_class g = 0;
      for (const auto& x : L) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      CHECK(g == 1);
      CHECK(in_row_span(left_multiply(L, a), E));
    }
  }
  const auto r6 = kernel(6);
  REQUIRE(r6.basis.size() == 1);
  CHECK(r6.basis[0] == V({2, -2, 4, 1, 1, -2, -1, -2, 1, -2}));
}

TEST_CASE("bridges") {
  const auto b2 = bridge(2);
  REQUIRE(b2);
  CHECK(b2->L == V({1}));
  CHECK(b2->c == 3);
  const auto b4 = bridge(4);
  REQUIRE(b4);
  CHECK(b4->L == V({4, -2, 1}));
  CHECK(b4->c == 9);
  CHECK_FALSE(bridge(5));
  CHECK_FALSE(bridge(6));
  for (unsigned k = 2; k <= 9; ++k) {
    if (auto b = bridge(k)) {
      auto image = left_multiply(b->L, build_matrix(k));
      CHECK(image.back() == b->c);
      image.pop_back();
      for (const auto& x : image) CHECK(x == 0);
    }
  }
  CHECK(bridge_step_deviation(*b4, 12) == 0);
  CHECK(bridge_step_deviation(*b2, 12) == 0);
}

TEST_CASE("numerical vanishing") {
  const auto L = kernel(6).basis.at(0);
  const auto v = certify_vanishing(L, 6, 5, 30);
  CHECK(v.rows.size() == 6);
  CHECK(v.certified());
  CHECK(v.max_residual <= v.max_certificate);
  CHECK(v.max_certificate < pow10_neg(28));

  // Negative control: a vector outside the kernel.
  IntVector bad = L;
  bad[0] += 1;
  const auto w = certify_vanishing(bad, 6, 5, 30);
  CHECK_FALSE(w.certified());
  CHECK(w.max_residual > pow10_neg(3));
}
