#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace padx {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// p^e for a machine-size exponent.
BigInt pow_p(unsigned long p, unsigned long e);

/// p-adic valuation of a nonzero integer. Undefined for zero; callers check.
unsigned long valuation_of(const BigInt& n, unsigned long p);

/// Splits n = p^v * u with p not dividing u; returns v and writes u.
unsigned long split_unit(const BigInt& n, unsigned long p, BigInt& unit);

/// Non-negative representative of a mod m.
BigInt mod_floor(const BigInt& a, const BigInt& m);

/// Inverse of a unit modulo m. Throws std::domain_error when not invertible.
BigInt inverse_mod(const BigInt& a, const BigInt& m);

/// Base-2 bit length of |n| (0 for zero).
std::size_t bit_length(const BigInt& n);

inline std::string to_decimal(const BigInt& n) { return n.get_str(10); }

std::string to_string(const BigRational& q);

bool is_prime(unsigned long p);

}  // namespace padx
