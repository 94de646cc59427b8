#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace chtouca {

using Q = mpq_class;
using Z = mpz_class;

// "p/q" or "p"; accepts decimals like "-1.25" on input.
std::string to_string(const Q& x);
std::string to_string(const Z& x);
Q parse_rational(const std::string& s);

// Canonicalized num/den; den must be nonzero.
Q make_q(long num, long den);
Q make_q(const Z& num, const Z& den);

Z floor_q(const Q& x);
Z ceil_q(const Q& x);
Q pow_q(const Q& x, long e);
Z binomial(long n, long k);

// Scales a rational vector to the primitive integer vector on the same ray.
std::vector<Z> primitive(const std::vector<Q>& v);
std::vector<Z> primitive(const std::vector<Z>& v);
std::vector<Q> to_q(const std::vector<Z>& v);

}  // namespace chtouca
