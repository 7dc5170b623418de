#include "padx/bigint.hpp"

#include <stdexcept>

namespace padx {

BigInt pow_p(unsigned long p, unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

unsigned long valuation_of(const BigInt& n, unsigned long p) {
  BigInt unit;
  return split_unit(n, p, unit);
}

unsigned long split_unit(const BigInt& n, unsigned long p, BigInt& unit) {
  if (n == 0) throw std::domain_error("valuation of zero");
  BigInt pp = p;
  return mpz_remove(unit.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("division by zero");
  return r;
}

std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  BigInt n = p;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

}  // namespace padx
