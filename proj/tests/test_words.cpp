#include <doctest.h>

#include <algorithm>

#include "mzv/errors.hpp"
#include "mzv/words.hpp"

using namespace mzv;

namespace {
BinaryWord W(const char* s) { return BinaryWord::parse(s); }
}  // namespace

TEST_CASE("composition parsing and printing") {
  CHECK(Composition::parse("(3,1)") == Composition{3, 1});
  CHECK(Composition::parse("3, 1") == Composition{3, 1});
  CHECK(Composition::parse("()").empty());
  CHECK(Composition{2, 1, 3, 2}.to_string() == "(2,1,3,2)");
  CHECK(Composition{}.to_string() == "()");
  CHECK_THROWS_AS(Composition::parse("(2,0)"), ParseError);
  CHECK_THROWS_AS(Composition::parse("(2,x)"), ParseError);
  CHECK(Composition{2, 1}.admissible());
  CHECK_FALSE(Composition{1, 2}.admissible());
  CHECK(Composition{2, 1, 3, 2}.weight() == 8);
  CHECK(Composition{2, 1, 3, 2}.depth() == 4);
}

TEST_CASE("word encoding of compositions") {
  CHECK(word_of_composition({2}) == W("01"));
  CHECK(word_of_composition({}).empty());
  CHECK(word_of_composition({3, 1}) == W("0011"));
  CHECK(word_of_composition({4}) == W("0001"));
  CHECK(word_of_composition({2, 2}) == W("0101"));
  CHECK(composition_of_word(W("011")) == Composition{2, 1});
  CHECK(composition_of_word(W("0101")) == Composition{2, 2});
  CHECK_THROWS_AS(composition_of_word(W("10")), PreconditionError);
  CHECK_THROWS_AS(BinaryWord::parse("012"), ParseError);
}

TEST_CASE("round trip over every composition of weight <= 10") {
  for (const auto& w : enumerate_admissible(10)) {
    const Composition c = composition_of_word(w);
    CHECK(word_of_composition(c) == w);
    CHECK(c.weight() == w.weight());
    CHECK(c.depth() == w.depth());
  }
  // Non-admissible compositions round trip too.
  for (const Composition& c : {Composition{1}, Composition{1, 2}, Composition{1, 1, 1}}) {
    CHECK(composition_of_word(word_of_composition(c)) == c);
  }
}

TEST_CASE("dual") {
  CHECK(dual(W("01")) == W("01"));
  CHECK(dual(W("001")) == W("011"));
  CHECK(dual(Composition{3}) == Composition{2, 1});
  CHECK(dual(W("")).empty());
  for (unsigned len = 0; len <= 8; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::vector<std::uint8_t> v;
      for (unsigned i = 0; i < len; ++i) v.push_back((bits >> i) & 1);
      const BinaryWord w(v);
      const BinaryWord d = dual(w);
      CHECK(dual(d) == w);
      CHECK(d.weight() == w.weight());
      CHECK(d.depth() == w.weight() - w.depth());
      CHECK(d.admissible() == w.admissible());
    }
  }
}

TEST_CASE("decomposition") {
  SUBCASE("01") {
    const auto d = decompose(W("01"));
    CHECK(d.v.empty());
    CHECK(d.a == 1);
    CHECK(d.b == 1);
    CHECK(d.init == W("0"));
    CHECK(d.fin == W("1"));
    CHECK(d.mid.empty());
  }
  SUBCASE("0001") {
    const auto d = decompose(W("0001"));
    CHECK(d.v.empty());
    CHECK(d.a == 3);
    CHECK(d.b == 1);
    CHECK(d.init == W("0"));
    CHECK(d.fin == W("001"));
    CHECK(d.mid.empty());
  }
  SUBCASE("0011") {
    const auto d = decompose(W("0011"));
    CHECK(d.v == W("01"));
    CHECK(d.a == 1);
    CHECK(d.b == 1);
    CHECK(d.init == W("001"));
    CHECK(d.fin == W("011"));
    CHECK(d.mid == W("01"));
  }
  SUBCASE("reconstruction for every admissible word of weight <= 10") {
    for (const auto& w : enumerate_admissible(10)) {
      const auto d = decompose(w);
      CHECK(d.reconstruct() == w);
      CHECK(d.v.admissible());
      CHECK(d.init.weight() + d.a == w.weight());
      CHECK(d.fin.weight() + d.b == w.weight());
    }
  }
  CHECK_THROWS_AS(decompose(W("")), PreconditionError);
  CHECK_THROWS_AS(decompose(W("10")), PreconditionError);
}

TEST_CASE("enumeration") {
  CHECK(enumerate_admissible(2) == std::vector<BinaryWord>{W("01")});
  const std::vector<BinaryWord> four{W("01"), W("001"), W("011"), W("0001"), W("0011"), W("0101"), W("0111")};
  CHECK(enumerate_admissible(4) == four);
  CHECK(enumerate_admissible(8).size() == 127);
  for (unsigned k = 2; k <= 12; ++k) {
    const auto words = enumerate_admissible(k);
    CHECK(words.size() == (std::size_t{1} << (k - 1)) - 1);
    CHECK(std::is_sorted(words.begin(), words.end()));
  }
  CHECK(admissible_words_of_weight(5).size() == 8);
}

TEST_CASE("admissible subwords") {
  CHECK(admissible_subwords(W("01")) == std::set<BinaryWord>{W("01")});
  CHECK(admissible_subwords(W("0011")) == std::set<BinaryWord>{W("0011"), W("001"), W("011"), W("01")});
  CHECK(admissible_subwords(W("0101")) == std::set<BinaryWord>{W("0101"), W("01")});
  for (const auto& w : enumerate_admissible(8)) {
    const auto subs = admissible_subwords(w);
    CHECK(subs.count(w) == 1);
    for (const auto& s : subs) {
      const auto d = decompose(s);
      for (const BinaryWord* part : {&d.init, &d.fin, &d.mid}) {
        CHECK((is_atom(*part) || subs.count(*part) == 1));
      }
    }
  }
}

TEST_CASE("canonical representatives") {
  CHECK(canonical_rep(W("01")) == W("01"));
  CHECK(canonical_rep(W("011")) == W("001"));
  CHECK(canonical_rep(W("0011")) == W("0011"));
  for (const auto& w : enumerate_admissible(9)) {
    CHECK(canonical_rep(w) == canonical_rep(dual(w)));
    CHECK(canonical_rep(canonical_rep(w)) == canonical_rep(w));
  }
}

TEST_CASE("target parsing") {
  CHECK(parse_target("(3,1)") == W("0011"));
  CHECK(parse_target("0011") == W("0011"));
  CHECK(parse_target("3,1") == W("0011"));
  CHECK(parse_target("2") == W("01"));
  CHECK_THROWS_AS(parse_target("(3,a)"), ParseError);
}
