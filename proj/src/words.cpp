#include "mzv/words.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "mzv/errors.hpp"

namespace mzv {

Composition::Composition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  if (std::find(parts_.begin(), parts_.end(), 0u) != parts_.end()) {
    throw ParseError("composition parts must be positive");
  }
}

Composition::Composition(std::initializer_list<unsigned> parts)
    : Composition(std::vector<unsigned>(parts)) {}

unsigned Composition::weight() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

bool Composition::admissible() const noexcept { return parts_.empty() || parts_.front() >= 2; }

std::string Composition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  out += ')';
  return out;
}

Composition Composition::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s += ch;
  }
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw ParseError("unbalanced parenthesis in composition '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<unsigned> parts;
  if (s.empty()) return Composition{};
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string_view field(s.data() + pos, comma - pos);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ParseError("bad composition part '" + std::string(field) + "' in '" + std::string(text) + "'");
    }
    if (value == 0) throw ParseError("composition parts must be positive: '" + std::string(text) + "'");
    parts.push_back(value);
    pos = comma + 1;
  }
  return Composition(std::move(parts));
}

BinaryWord::BinaryWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ParseError("binary word entries must be 0 or 1");
  }
}

BinaryWord BinaryWord::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw ParseError("binary word may only contain '0' and '1': '" + std::string(text) + "'");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return BinaryWord(std::move(bits));
}

BinaryWord BinaryWord::repeat(std::uint8_t bit, std::size_t count) {
  return BinaryWord(std::vector<std::uint8_t>(count, bit));
}

std::size_t BinaryWord::depth() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryWord::admissible() const noexcept {
  return bits_.empty() || (bits_.front() == 0 && bits_.back() == 1);
}

BinaryWord BinaryWord::subword(std::size_t pos, std::size_t len) const {
  BinaryWord out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

BinaryWord BinaryWord::operator+(const BinaryWord& rhs) const {
  BinaryWord out = *this;
  out.bits_.insert(out.bits_.end(), rhs.bits_.begin(), rhs.bits_.end());
  return out;
}

std::string BinaryWord::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s += static_cast<char>('0' + b);
  return s;
}

std::strong_ordering operator<=>(const BinaryWord& lhs, const BinaryWord& rhs) {
  if (auto c = lhs.weight() <=> rhs.weight(); c != 0) return c;
  return lhs.bits_ <=> rhs.bits_;
}

BinaryWord word_of_composition(const Composition& c) {
  std::vector<std::uint8_t> bits;
  bits.reserve(c.weight());
  for (unsigned part : c.parts()) {
    bits.insert(bits.end(), part - 1, 0);
    bits.push_back(1);
  }
  return BinaryWord(std::move(bits));
}

Composition composition_of_word(const BinaryWord& w) {
  if (!w.empty() && w.back() != 1) {
    throw PreconditionError("word '" + w.to_string() + "' ends in 0 and has no composition");
  }
  std::vector<unsigned> parts;
  unsigned run = 1;
  for (auto b : w.bits()) {
    if (b == 1) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  return Composition(std::move(parts));
}

BinaryWord dual(const BinaryWord& w) {
  std::vector<std::uint8_t> bits(w.bits().rbegin(), w.bits().rend());
  for (auto& b : bits) b ^= 1;
  return BinaryWord(std::move(bits));
}

Composition dual(const Composition& c) {
  if (!c.admissible()) throw PreconditionError("dual composition requires an admissible composition");
  return composition_of_word(dual(word_of_composition(c)));
}

BinaryWord Decomposition::reconstruct() const {
  return BinaryWord::repeat(0, 1) + BinaryWord::repeat(1, b - 1) + v + BinaryWord::repeat(0, a - 1) +
         BinaryWord::repeat(1, 1);
}

Decomposition decompose(const BinaryWord& w) {
  if (w.empty() || !w.admissible()) {
    throw PreconditionError("decompose needs a non-empty admissible word, got '" + w.to_string() + "'");
  }
  const auto& bits = w.bits();
  std::size_t lo = 1;
  std::size_t hi = bits.size() - 1;  // inner part is [lo, hi)
  std::size_t leading_ones = 0;
  while (lo < hi && bits[lo] == 1) {
    ++lo;
    ++leading_ones;
  }
  std::size_t trailing_zeros = 0;
  while (hi > lo && bits[hi - 1] == 0) {
    --hi;
    ++trailing_zeros;
  }
  Decomposition d;
  d.v = w.subword(lo, hi - lo);
  d.a = static_cast<unsigned>(trailing_zeros + 1);
  d.b = static_cast<unsigned>(leading_ones + 1);
  d.init = w.subword(0, hi);
  d.fin = w.subword(lo, bits.size() - lo);
  d.mid = d.v;
  return d;
}

std::vector<BinaryWord> admissible_words_of_weight(unsigned weight) {
  std::vector<BinaryWord> out;
  if (weight < 2) return out;
  const unsigned inner = weight - 2;
  out.reserve(std::size_t{1} << inner);
  for (unsigned long long pattern = 0; pattern < (1ull << inner); ++pattern) {
    std::vector<std::uint8_t> bits(weight);
    bits.front() = 0;
    bits.back() = 1;
    for (unsigned i = 0; i < inner; ++i) {
      bits[1 + i] = static_cast<std::uint8_t>((pattern >> (inner - 1 - i)) & 1u);
    }
    out.emplace_back(std::move(bits));
  }
  return out;
}

std::vector<BinaryWord> enumerate_admissible(unsigned max_weight) {
  std::vector<BinaryWord> out;
  for (unsigned k = 2; k <= max_weight; ++k) {
    auto layer = admissible_words_of_weight(k);
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return out;
}

std::set<BinaryWord> admissible_subwords(const BinaryWord& w) {
  std::set<BinaryWord> out;
  const std::size_t k = w.weight();
  for (std::size_t i = 0; i < k; ++i) {
    if (w[i] != 0) continue;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (w[j] == 1) out.insert(w.subword(i, j - i + 1));
    }
  }
  return out;
}

BinaryWord canonical_rep(const BinaryWord& w) {
  BinaryWord d = dual(w);
  return d < w ? d : w;
}

BinaryWord parse_target(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  const bool looks_like_word =
      !s.empty() && s.find_first_not_of("01") == std::string_view::npos && s.find(',') == std::string_view::npos;
  if (looks_like_word) return BinaryWord::parse(s);
  return word_of_composition(Composition::parse(s));
}

}  // namespace mzv
