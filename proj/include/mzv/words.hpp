#pragma once

// Compositions, binary words and the combinatorics that drive the
// double-tail recurrences: duality, the 0{1}^{b-1} v {0}^{a-1} 1
// decomposition and admissible subword enumeration.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mzv {

class Composition {
 public:
  Composition() = default;
  /// Throws ParseError if some part is zero.
  explicit Composition(std::vector<unsigned> parts);
  Composition(std::initializer_list<unsigned> parts);

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  std::size_t depth() const noexcept { return parts_.size(); }
  unsigned weight() const noexcept;
  bool empty() const noexcept { return parts_.empty(); }
  /// Empty, or first part at least 2.
  bool admissible() const noexcept;

  /// "(3,1)"; the empty composition prints as "()".
  std::string to_string() const;
  /// Accepts "(3,1)", "3,1" and "()"; whitespace is ignored.
  static Composition parse(std::string_view text);

  auto operator<=>(const Composition&) const = default;

 private:
  std::vector<unsigned> parts_;
};

/// A finite word over {0,1}, stored one bit per element so that the empty
/// word and leading zeros are never ambiguous.
///
/// Ordering is shortlex: by weight first, then lexicographically with 0 < 1.
class BinaryWord {
 public:
  BinaryWord() = default;
  /// Throws ParseError for entries other than 0 and 1.
  explicit BinaryWord(std::vector<std::uint8_t> bits);

  static BinaryWord parse(std::string_view text);
  static BinaryWord repeat(std::uint8_t bit, std::size_t count);

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::size_t weight() const noexcept { return bits_.size(); }
  std::size_t depth() const noexcept;
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::uint8_t front() const { return bits_.front(); }
  std::uint8_t back() const { return bits_.back(); }
  bool starts_with(std::uint8_t bit) const noexcept { return !bits_.empty() && bits_.front() == bit; }
  bool ends_with(std::uint8_t bit) const noexcept { return !bits_.empty() && bits_.back() == bit; }

  /// Empty, or starts with 0 and ends with 1.
  bool admissible() const noexcept;

  /// Bits [pos, pos+len).
  BinaryWord subword(std::size_t pos, std::size_t len) const;
  BinaryWord operator+(const BinaryWord& rhs) const;

  /// ASCII '0'/'1'; the empty word is "".
  std::string to_string() const;

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
  friend std::strong_ordering operator<=>(const BinaryWord& lhs, const BinaryWord& rhs);

 private:
  std::vector<std::uint8_t> bits_;
};

BinaryWord word_of_composition(const Composition& c);
/// Throws PreconditionError for words ending in 0.
Composition composition_of_word(const BinaryWord& w);

/// Reverse, then complement every bit.
BinaryWord dual(const BinaryWord& w);
/// The dual of an admissible composition.
Composition dual(const Composition& c);

/// The unique w = 0 {1}^{b-1} v {0}^{a-1} 1 with v admissible or empty.
struct Decomposition {
  BinaryWord v;
  unsigned a = 0;
  unsigned b = 0;
  BinaryWord init;  // 0 {1}^{b-1} v
  BinaryWord fin;   // v {0}^{a-1} 1
  BinaryWord mid;   // v

  BinaryWord reconstruct() const;
};

/// Strips the outer 0...1, then reads b-1 from the leading 1-bits and a-1
/// from the trailing 0-bits of what remains. Throws PreconditionError for
/// empty or non-admissible input.
Decomposition decompose(const BinaryWord& w);

/// Non-empty admissible words of weight exactly `weight`, lexicographic.
std::vector<BinaryWord> admissible_words_of_weight(unsigned weight);
/// Non-empty admissible words of weight 2..max_weight, shortlex order.
std::vector<BinaryWord> enumerate_admissible(unsigned max_weight);

/// Distinct contiguous subwords starting with 0 and ending with 1.
std::set<BinaryWord> admissible_subwords(const BinaryWord& w);

/// min(w, dual(w)).
BinaryWord canonical_rep(const BinaryWord& w);

/// Words of weight at most 1 (0, 1 and the empty word), whose tails have
/// closed forms.
inline bool is_atom(const BinaryWord& w) noexcept { return w.weight() <= 1; }

/// Accepts either a composition "(3,1)" or a binary word "0011" and returns
/// the word. Bare digit strings made of 0 and 1 only are read as words.
BinaryWord parse_target(std::string_view text);

}  // namespace mzv
