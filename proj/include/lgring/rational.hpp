// Exact rational scalars for the whole library. Thin helpers around GMP's
// mpq_class: every value is kept canonical (lowest terms, positive
// denominator), which mpq_class guarantees after canonicalize().
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace lgring {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q" with q > 0 after sign normalization.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& q);

// Exact square root in Q, if it exists. sqrt(4/9) = 2/3, sqrt(2) = nullopt.
std::optional<Rat> rat_sqrt(const Rat& q);

}  // namespace lgring
