#ifndef SRCDET_NUMERIC_HPP
#define SRCDET_NUMERIC_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace srcdet {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

BigInt factorial(unsigned n);
BigInt binomial(long long n, long long k);

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

double to_double(const Rational& r);
// Natural log of a positive integer, accurate for values far beyond double range.
double log_of(const BigInt& z);

// Format with a fixed number of significant digits, the report convention.
std::string format_sig(double x, int digits = 6);

}  // namespace srcdet

#endif
