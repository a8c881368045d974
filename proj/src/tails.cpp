#include "mzv/tails.hpp"

namespace mzv {

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::string index_text(const BinaryWord& w, unsigned long m, unsigned long n) {
  return "zeta(" + w.to_string() + ")_{" + std::to_string(m) + "," + std::to_string(n) + "}";
}

}  // namespace

bool index_valid(const BinaryWord& w, unsigned long m, unsigned long n) {
  if (w.starts_with(1) && m == 0) return false;
  if (w.ends_with(0) && n == 0) return false;
  return true;
}

void require_valid_index(const BinaryWord& w, unsigned long m, unsigned long n) {
  if (w.starts_with(1) && m == 0) {
    throw PreconditionError(index_text(w, m, n) + " is undefined: the word starts with 1, so m >= 1 is required");
  }
  if (w.ends_with(0) && n == 0) {
    throw PreconditionError(index_text(w, m, n) + " is undefined: the word ends with 0, so n >= 1 is required");
  }
}

mpq_class base_empty(unsigned long m, unsigned long n) { return mpq_class(mpz_class(1), binomial(m + n, m)); }

mpq_class base_zero(unsigned long m, unsigned long n) {
  if (n == 0) throw PreconditionError("zeta(0)_{m,n} needs n >= 1");
  return base_empty(m, n) / mpq_class(n);
}

mpq_class base_one(unsigned long m, unsigned long n) {
  if (m == 0) throw PreconditionError("zeta(1)_{m,n} needs m >= 1");
  return base_empty(m, n) / mpq_class(m);
}

mpq_class base_atom(const BinaryWord& atom, unsigned long m, unsigned long n) {
  if (atom.empty()) return base_empty(m, n);
  if (atom.weight() != 1) throw PreconditionError("base_atom expects a word of weight at most 1");
  return atom[0] == 0 ? base_zero(m, n) : base_one(m, n);
}

mpq_class bound_c(unsigned long m, unsigned long n) {
  if (m == 0 || n == 0) return 1;
  mpq_class r(ipow(m, m) * ipow(n, n), ipow(m + n, m + n));
  r.canonicalize();
  return r;
}

mpq_class ntail_asymptotic(const Composition& c, unsigned long n) {
  if (c.empty() || !c.admissible()) throw PreconditionError("ntail_asymptotic needs a non-empty admissible composition");
  if (n == 0) throw PreconditionError("ntail_asymptotic needs n >= 1");
  mpz_class den = 1;
  long partial = 0;
  for (std::size_t j = 0; j < c.depth(); ++j) {
    partial += static_cast<long>(c.parts()[j]) - 1;
    den *= partial;
  }
  const unsigned long exponent = c.weight() - c.depth();  // k - r > 0
  mpq_class r(mpz_class(1), den * ipow(n, exponent));
  r.canonicalize();
  return r;
}

std::pair<BinaryWord, TailIndex> dual_index(const BinaryWord& w, unsigned long m, unsigned long n) {
  require_valid_index(w, m, n);
  return {dual(w), TailIndex{n, m}};
}

mpq_class zeta2_upper() {
  mpq_class r(mpz_class("16449340668482266"), mpz_class("10000000000000000"));
  r.canonicalize();
  return r;
}

mpq_class recur_append_zero(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_w) {
  if (n == 0) throw PreconditionError("zeta(w0)_{m,n} = zeta(w)_{m,n}/n needs n >= 1");
  if (m == 0 && w.starts_with(1)) throw PreconditionError("zeta(w0)_{m,n} recurrence needs m >= 1 when w starts with 1");
  return zeta_w / mpq_class(n);
}

mpq_class recur_append_one(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_w1,
                           const mpq_class& zeta_w) {
  if (n == 0) throw PreconditionError("zeta(w1)_{m,n-1} recurrence needs n >= 1");
  if (m == 0 && !w.starts_with(0)) throw PreconditionError("zeta(w1)_{m,n-1} recurrence needs m >= 1 unless w starts with 0");
  return zeta_w1 + zeta_w / mpq_class(n);
}

mpq_class recur_prepend_one(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_w) {
  if (m == 0) throw PreconditionError("zeta(1w)_{m,n} = zeta(w)_{m,n}/m needs m >= 1");
  if (n == 0 && w.ends_with(0)) throw PreconditionError("zeta(1w)_{m,n} recurrence needs n >= 1 when w ends with 0");
  return zeta_w / mpq_class(m);
}

mpq_class recur_prepend_zero(const BinaryWord& w, unsigned long m, unsigned long n, const mpq_class& zeta_0w,
                             const mpq_class& zeta_w) {
  if (m == 0) throw PreconditionError("zeta(0w)_{m-1,n} recurrence needs m >= 1");
  if (n == 0 && !w.ends_with(1)) throw PreconditionError("zeta(0w)_{m-1,n} recurrence needs n >= 1 unless w ends with 1");
  return zeta_0w + zeta_w / mpq_class(m);
}

}  // namespace mzv
