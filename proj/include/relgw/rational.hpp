#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace relgw {

// Exact rationals everywhere.  No floating point exists in this engine.
using Rat = mpq_class;

inline std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline Rat factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

}  // namespace relgw
