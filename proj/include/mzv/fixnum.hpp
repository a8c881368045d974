#pragma once

// Binary fixed-point numbers with a truncating one-ulp contract, exact
// rational helpers and decimal formatting.

#include <gmpxx.h>

#include <string>

namespace mzv {

/// Nonnegative value mantissa * 2^-scale. Every operation except + truncates
/// toward zero and is therefore off by less than one ulp (2^-scale).
class FixedReal {
 public:
  explicit FixedReal(unsigned scale = 0) : scale_(scale) {}
  FixedReal(mpz_class mantissa, unsigned scale);

  static FixedReal zero(unsigned scale) { return FixedReal(scale); }
  static FixedReal one(unsigned scale);
  /// floor(p/q * 2^scale) * 2^-scale.
  static FixedReal from_rational(const mpz_class& p, const mpz_class& q, unsigned scale);
  static FixedReal from_rational(const mpq_class& r, unsigned scale);

  const mpz_class& mantissa() const noexcept { return mantissa_; }
  unsigned scale() const noexcept { return scale_; }
  bool is_zero() const { return mantissa_ == 0; }
  mpq_class to_rational() const;

  /// Exact.
  FixedReal operator+(const FixedReal& rhs) const;
  FixedReal& operator+=(const FixedReal& rhs);
  /// Exact; throws std::logic_error if the result would be negative.
  FixedReal operator-(const FixedReal& rhs) const;
  /// Truncates the 2F-bit product.
  FixedReal operator*(const FixedReal& rhs) const;
  /// Exact multiplication by a nonnegative integer.
  FixedReal mul_int(const mpz_class& k) const;
  /// Truncated division by a positive integer; throws PreconditionError on 0.
  FixedReal div_int(const mpz_class& n) const;

  friend bool operator==(const FixedReal& a, const FixedReal& b) {
    return a.scale_ == b.scale_ && a.mantissa_ == b.mantissa_;
  }

 private:
  void check_scale(const FixedReal& rhs) const;

  mpz_class mantissa_;
  unsigned scale_;
};

/// prev * n / (2(2n-1)), one truncation: maps 1/C(2n-2,n-1) to 1/C(2n,n).
FixedReal binom_recip_step(const FixedReal& prev, unsigned long n);

/// 2^-scale.
mpq_class ulp(unsigned scale);
/// 10^-d.
mpq_class pow10_neg(unsigned d);
/// b^e for small nonnegative e.
mpz_class ipow(unsigned long b, unsigned long e);

/// Decimal rendering of x rounded to nearest at d fractional digits
/// (ties away from zero). Format: optional '-', integer part, '.', d digits.
std::string decimal_string(const mpq_class& x, unsigned digits);

/// Prints d digits of x. The printed value is within 1.5e-d of the true value
/// when |x - true| <= certified_error < 1e-d. Throws PreconditionError if the
/// certificate is not below 1e-d.
std::string to_decimal(const FixedReal& x, unsigned digits, const mpq_class& certified_error);

/// Scientific notation rounded up (never below x): "1.82e-10". Zero is "0".
std::string sci_upper(const mpq_class& x, unsigned significant = 3);
/// Scientific notation rounded to nearest; for display of signed values.
std::string sci_nearest(const mpq_class& x, unsigned significant = 6);

/// floor(log2(x)) for x > 0.
long floor_log2(const mpq_class& x);

/// Working precision for a d-digit computation with N recurrence steps.
struct PrecisionPlan {
  unsigned digits = 0;
  unsigned scale = 0;
  /// Bound on the rounding error of one recurrence step.
  mpq_class step_alpha;

  /// scale = ceil(d log2 10) + ceil(3 log2(N+1)) + 16, step_alpha = 8 ulp.
  static PrecisionPlan make(unsigned digits, unsigned long steps);
};

/// ceil(d * log2(10)), computed exactly from the bit length of 10^d.
unsigned digits_to_bits(unsigned digits);

/// Arithmetic policies shared by the recurrence engines. ExactArith works on
/// rationals and never rounds; FixedArith works on FixedReal at a fixed scale.
struct ExactArith {
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type from_ratio(const mpz_class& p, const mpz_class& q) const { return mpq_class(p, q); }
  value_type from_rational(const mpq_class& r) const { return r; }
  value_type add(const value_type& x, const value_type& y) const { return x + y; }
  value_type mul(const value_type& x, const value_type& y) const { return x * y; }
  value_type mul_int(const value_type& x, const mpz_class& k) const { return x * mpq_class(k); }
  value_type div_int(const value_type& x, const mpz_class& n) const { return x / mpq_class(n); }
  mpq_class to_rational(const value_type& x) const { return x; }
  mpq_class ulp() const { return 0; }
};

struct FixedArith {
  using value_type = FixedReal;
  unsigned scale;

  value_type zero() const { return FixedReal(scale); }
  value_type from_ratio(const mpz_class& p, const mpz_class& q) const { return FixedReal::from_rational(p, q, scale); }
  value_type from_rational(const mpq_class& r) const { return FixedReal::from_rational(r, scale); }
  value_type add(const value_type& x, const value_type& y) const { return x + y; }
  value_type mul(const value_type& x, const value_type& y) const { return x * y; }
  value_type mul_int(const value_type& x, const mpz_class& k) const { return x.mul_int(k); }
  value_type div_int(const value_type& x, const mpz_class& n) const { return x.div_int(n); }
  mpq_class to_rational(const value_type& x) const { return x.to_rational(); }
  mpq_class ulp() const { return mzv::ulp(scale); }
};

}  // namespace mzv
