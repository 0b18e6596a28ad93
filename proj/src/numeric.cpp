#include "srcdet/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace srcdet {

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

std::string to_string(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

std::string to_string(const BigInt& z) { return z.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

double log_of(const BigInt& z) {
    if (z <= 0) {
        return -INFINITY;
    }
    long bits = static_cast<long>(boost::multiprecision::msb(z));
    if (bits < 1000) {
        return std::log(z.convert_to<double>());
    }
    long shift = bits - 60;
    BigInt top = z >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::string format_sig(double x, int digits) {
    if (x == 0.0) {
        x = 0.0;  // drop negative zero
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

}  // namespace srcdet
