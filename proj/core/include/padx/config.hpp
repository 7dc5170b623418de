#pragma once

#include <stdexcept>
#include <string>

#include "padx/bigint.hpp"

namespace padx {

/// Ambient field data: K = Q_p with uniformizer p, dense numbers carry at
/// most `precision` p-adic digits of relative precision.
class Config {
 public:
  Config(unsigned long prime, long precision) : prime_(prime), precision_(precision) {
    if (!is_prime(prime)) throw std::invalid_argument("prime must be a prime >= 2, got " + std::to_string(prime));
    if (precision < 1) throw std::invalid_argument("precision cap must be >= 1");
  }

  unsigned long prime() const { return prime_; }
  long precision() const { return precision_; }

  friend bool operator==(const Config&, const Config&) = default;

 private:
  unsigned long prime_;
  long precision_;
};

}  // namespace padx
