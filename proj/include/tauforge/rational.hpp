#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tauforge {

// Exact rational coefficients. mpq_class stays canonical (reduced, positive
// denominator) under arithmetic; only raw string/num-den construction needs an
// explicit canonicalize, which the helpers below take care of.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + text + "'");
    if (sgn(r.get_den()) == 0)
        throw std::invalid_argument("rational: zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

// "1/2", "-7/3", integers without the "/1".
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: zero base, negative exponent");
        return Rational(1) / rat_pow(base, -e);
    }
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// Ascending product x(x+1)...(x+r-1); for r < 0 the reciprocal convention
// x^{rising r} = 1 / (x+r)(x+r+1)...(x-1).
inline Rational rising_product(const Rational& x, long r) {
    if (r == 0) return Rational(1);
    if (r < 0) {
        Rational p = rising_product(x + r, -r);
        if (p == 0) throw std::domain_error("rising_product: pole in negative ascending product");
        return Rational(1) / p;
    }
    Rational acc(1);
    for (long t = 0; t < r; ++t) acc *= x + t;
    return acc;
}

}  // namespace tauforge
