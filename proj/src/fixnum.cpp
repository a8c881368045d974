#include "mzv/fixnum.hpp"

#include <stdexcept>

#include "mzv/errors.hpp"

namespace mzv {

namespace {

std::size_t bit_length(const mpz_class& z) {
  return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

mpz_class pow10(unsigned long d) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, d);
  return r;
}

mpq_class pow10q(long e) {
  if (e >= 0) return mpq_class(pow10(static_cast<unsigned long>(e)));
  return mpq_class(mpz_class(1), pow10(static_cast<unsigned long>(-e)));
}

/// floor(log10(x)) for x > 0.
long floor_log10(const mpq_class& x) {
  // log10(2) < 0.30103; start from an estimate and correct.
  long e = static_cast<long>(static_cast<double>(floor_log2(x)) * 0.30102999566398);
  while (pow10q(e) > x) --e;
  while (pow10q(e + 1) <= x) ++e;
  return e;
}

std::string format_sci(const mpz_class& digits_int, long exponent, unsigned significant) {
  std::string s = digits_int.get_str();
  std::string out;
  out += s[0];
  if (significant > 1) {
    out += '.';
    out += s.substr(1);
  }
  out += 'e';
  out += exponent < 0 ? '-' : '+';
  long a = exponent < 0 ? -exponent : exponent;
  std::string es = std::to_string(a);
  if (es.size() < 2) es = "0" + es;
  out += es;
  return out;
}

}  // namespace

FixedReal::FixedReal(mpz_class mantissa, unsigned scale) : mantissa_(std::move(mantissa)), scale_(scale) {
  if (mantissa_ < 0) throw std::logic_error("FixedReal mantissa must be nonnegative");
}

FixedReal FixedReal::one(unsigned scale) {
  mpz_class m = 1;
  m <<= scale;
  return FixedReal(std::move(m), scale);
}

FixedReal FixedReal::from_rational(const mpz_class& p, const mpz_class& q, unsigned scale) {
  if (q <= 0) throw PreconditionError("from_rational needs a positive denominator");
  if (p < 0) throw PreconditionError("FixedReal cannot hold negative values");
  mpz_class num = p;
  num <<= scale;
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
  return FixedReal(std::move(m), scale);
}

FixedReal FixedReal::from_rational(const mpq_class& r, unsigned scale) {
  return from_rational(r.get_num(), r.get_den(), scale);
}

mpq_class FixedReal::to_rational() const {
  mpz_class den = 1;
  den <<= scale_;
  mpq_class r(mantissa_, den);
  r.canonicalize();
  return r;
}

void FixedReal::check_scale(const FixedReal& rhs) const {
  if (scale_ != rhs.scale_) throw std::logic_error("FixedReal operands have different scales");
}

FixedReal FixedReal::operator+(const FixedReal& rhs) const {
  check_scale(rhs);
  return FixedReal(mantissa_ + rhs.mantissa_, scale_);
}

FixedReal& FixedReal::operator+=(const FixedReal& rhs) {
  check_scale(rhs);
  mantissa_ += rhs.mantissa_;
  return *this;
}

FixedReal FixedReal::operator-(const FixedReal& rhs) const {
  check_scale(rhs);
  if (rhs.mantissa_ > mantissa_) throw std::logic_error("FixedReal subtraction underflow");
  return FixedReal(mantissa_ - rhs.mantissa_, scale_);
}

FixedReal FixedReal::operator*(const FixedReal& rhs) const {
  check_scale(rhs);
  mpz_class prod = mantissa_ * rhs.mantissa_;
  prod >>= scale_;
  return FixedReal(std::move(prod), scale_);
}

FixedReal FixedReal::mul_int(const mpz_class& k) const {
  if (k < 0) throw PreconditionError("FixedReal cannot hold negative values");
  return FixedReal(mantissa_ * k, scale_);
}

FixedReal FixedReal::div_int(const mpz_class& n) const {
  if (n <= 0) throw PreconditionError("division by a non-positive integer");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mantissa_.get_mpz_t(), n.get_mpz_t());
  return FixedReal(std::move(q), scale_);
}

FixedReal binom_recip_step(const FixedReal& prev, unsigned long n) {
  if (n == 0) throw PreconditionError("binom_recip_step needs n >= 1");
  mpz_class num = prev.mantissa() * n;
  mpz_class den = 2 * (2 * mpz_class(n) - 1);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return FixedReal(std::move(q), prev.scale());
}

mpq_class ulp(unsigned scale) {
  mpz_class den = 1;
  den <<= scale;
  return mpq_class(mpz_class(1), den);
}

mpq_class pow10_neg(unsigned d) { return mpq_class(mpz_class(1), pow10(d)); }

mpz_class ipow(unsigned long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

long floor_log2(const mpq_class& x) {
  if (x <= 0) throw std::domain_error("floor_log2 of a non-positive number");
  long e = static_cast<long>(bit_length(x.get_num())) - static_cast<long>(bit_length(x.get_den()));
  // x lies in [2^(e-1), 2^(e+1)).
  mpq_class p = 1;
  if (e >= 0) {
    mpz_class t = 1;
    t <<= static_cast<unsigned long>(e);
    p = mpq_class(t);
  } else {
    mpz_class t = 1;
    t <<= static_cast<unsigned long>(-e);
    p = mpq_class(mpz_class(1), t);
  }
  return x >= p ? e : e - 1;
}

std::string decimal_string(const mpq_class& x, unsigned digits) {
  const bool negative = x < 0;
  mpq_class a = negative ? mpq_class(-x) : x;
  mpq_class scaled = a * mpq_class(pow10(digits)) + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const mpz_class p = pow10(digits);
  mpz_class ip, fp;
  mpz_fdiv_qr(ip.get_mpz_t(), fp.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  std::string frac = digits ? fp.get_str() : std::string();
  if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
  std::string out;
  if (negative && r != 0) out += '-';
  out += ip.get_str();
  if (digits) out += '.' + frac;
  return out;
}

std::string to_decimal(const FixedReal& x, unsigned digits, const mpq_class& certified_error) {
  if (certified_error >= pow10_neg(digits)) {
    throw PreconditionError("certified error " + sci_upper(certified_error) + " does not support " +
                            std::to_string(digits) + " digits");
  }
  return decimal_string(x.to_rational(), digits);
}

std::string sci_upper(const mpq_class& x, unsigned significant) {
  if (x < 0) throw std::domain_error("sci_upper expects a nonnegative value");
  if (x == 0) return "0";
  if (significant == 0) significant = 1;
  long e = floor_log10(x);
  // digits = ceil(x / 10^(e - significant + 1))
  mpq_class scaled = x / pow10q(e - static_cast<long>(significant) + 1);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (c >= pow10(significant)) {
    c = pow10(significant - 1);
    ++e;
  }
  return format_sci(c, e, significant);
}

std::string sci_nearest(const mpq_class& x, unsigned significant) {
  if (x == 0) return "0";
  if (significant == 0) significant = 1;
  const bool negative = x < 0;
  mpq_class a = negative ? mpq_class(-x) : x;
  long e = floor_log10(a);
  mpq_class scaled = a / pow10q(e - static_cast<long>(significant) + 1) + mpq_class(1, 2);
  mpz_class c;
  mpz_fdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (c >= pow10(significant)) {
    c = pow10(significant - 1);
    ++e;
  }
  return (negative ? "-" : "") + format_sci(c, e, significant);
}

unsigned digits_to_bits(unsigned digits) {
  if (digits == 0) return 0;
  return static_cast<unsigned>(bit_length(pow10(digits) - 1));
}

PrecisionPlan PrecisionPlan::make(unsigned digits, unsigned long steps) {
  PrecisionPlan plan;
  plan.digits = digits;
  mpz_class n1 = mpz_class(steps) + 1;
  mpz_class cube = n1 * n1 * n1;
  const unsigned guard = static_cast<unsigned>(bit_length(cube - 1));
  plan.scale = digits_to_bits(digits) + guard + 16;
  plan.step_alpha = 8 * ulp(plan.scale);
  return plan;
}

}  // namespace mzv
