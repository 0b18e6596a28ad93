#include "srcdet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "srcdet/rng.hpp"

namespace srcdet {

namespace {

// w_a(y) = prod_{l<y} (l + a)/(l + 1) for y = 0..len-1, the coefficients of (1-z)^{-a}.
std::vector<Rational> rising_weights(const Rational& a, long long len) {
    std::vector<Rational> w(len);
    if (len > 0) {
        w[0] = 1;
    }
    for (long long y = 1; y < len; ++y) {
        w[y] = w[y - 1] * (Rational(y - 1) + a) / (y);
    }
    return w;
}

long double log_rising_weight(long double a, long long y) {
    return std::lgamma(static_cast<long double>(y) + a) - std::lgamma(a) - std::lgamma(static_cast<long double>(y) + 1.0L);
}

DetectionProb line_detection(long long n, TieRule tie, bool exact) {
    DetectionProb out;
    const long long t = n / 2;
    if (n % 2 == 1) {
        if (exact) {
            out.exact = Rational(binomial(2 * t, t), BigInt(1) << (2 * t));
            out.value = static_cast<long double>(to_double(*out.exact));
        }
        if (!exact || out.value == 0) {
            out.value = std::exp(std::lgamma(2.0L * t + 1) - 2 * std::lgamma(t + 1.0L) - 2.0L * t * std::log(2.0L));
        }
        return out;
    }
    // x ~ Binomial(2t-1, 1/2); x = t-1 and x = t both leave the source a center.
    const long double share = tie == TieRule::kFull ? 2.0L : 1.0L;
    if (exact) {
        out.exact = Rational(binomial(2 * t - 1, t) * static_cast<long>(share), BigInt(1) << (2 * t - 1));
        out.value = static_cast<long double>(to_double(*out.exact));
    }
    if (!exact || out.value == 0) {
        out.value = share * std::exp(std::lgamma(2.0L * t) - std::lgamma(t + 1.0L) - std::lgamma(static_cast<long double>(t)) -
                                     (2.0L * t - 1) * std::log(2.0L));
    }
    return out;
}

}  // namespace

DetectionProb detection_prob_exact(int d, long long n, TieRule tie, bool exact) {
    if (d < 2 || n < 1) {
        throw std::invalid_argument("detection_prob_exact: need d >= 2 and n >= 1");
    }
    if (exact && n > kExactDetectionLimit) {
        throw std::invalid_argument("detection_prob_exact: exact mode supports n <= " + std::to_string(kExactDetectionLimit));
    }
    if (n == 1) {
        return {Rational(1), 1.0L};
    }
    if (d == 2) {
        return line_detection(n, tie, exact);
    }
    const long long m = d - 2;
    const long long first_big = n / 2 + 1;  // smallest branch size above n/2
    const bool has_tie = n % 2 == 0;
    DetectionProb out;
    if (exact) {
        // c_n = prod_{i=0}^{n-2} (i+1) m / (d + i m)
        Rational c = 1;
        for (long long i = 0; i <= n - 2; ++i) {
            c *= Rational((i + 1) * m, d + i * m);
        }
        auto wa = rising_weights(Rational(1, m), n);
        auto wb = rising_weights(Rational(d - 1, m), n);
        Rational tail = 0;
        for (long long x = first_big; x <= n - 1; ++x) {
            tail += wa[x] * wb[n - 1 - x];
        }
        Rational p = 1 - d * c * tail;
        if (has_tie && tie == TieRule::kHalf) {
            p -= Rational(d, 2) * c * wa[n / 2] * wb[n / 2 - 1];
        }
        out.exact = p;
        out.value = static_cast<long double>(to_double(p));
        return out;
    }
    const long double a = 1.0L / m;
    const long double b = static_cast<long double>(d - 1) / m;
    const long double log_c = std::lgamma(static_cast<long double>(n)) + std::lgamma(static_cast<long double>(d) / m) -
                              std::lgamma(static_cast<long double>(n - 1) + static_cast<long double>(d) / m);
    long double sum = 0, comp = 0;  // Kahan
    for (long long x = first_big; x <= n - 1; ++x) {
        long double term = std::exp(log_c + log_rising_weight(a, x) + log_rising_weight(b, n - 1 - x));
        long double y = term - comp;
        long double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    out.value = 1.0L - d * sum;
    if (has_tie && tie == TieRule::kHalf) {
        out.value -= 0.5L * d * std::exp(log_c + log_rising_weight(a, n / 2) + log_rising_weight(b, n / 2 - 1));
    }
    return out;
}

Rational detection_prob_by_compositions(int d, int n, TieRule tie) {
    if (d < 2 || n < 1) {
        throw std::invalid_argument("detection_prob_by_compositions: need d >= 2 and n >= 1");
    }
    if (n == 1) {
        return 1;
    }
    UrnSpec urn = spreading_urn(d, n);
    Rational total = 0;
    std::vector<long long> x(d, 0);
    // Walk compositions of n-1 into d parts.
    std::function<void(int, long long)> walk = [&](int i, long long left) {
        if (i == d - 1) {
            x[i] = left;
            bool ok = true;
            bool tied = false;
            for (long long xi : x) {
                ok = ok && 2 * xi <= n;
                tied = tied || 2 * xi == n;
            }
            if (ok) {
                Rational p = urn_joint_pmf(urn, x);
                total += tied && tie == TieRule::kHalf ? Rational(p / 2) : p;
            }
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            x[i] = v;
            walk(i + 1, left - v);
        }
    };
    walk(0, n - 1);
    return total;
}

long double detection_prob_limit(int d) {
    if (d < 3) {
        throw std::invalid_argument("detection_prob_limit: need d >= 3");
    }
    if (d == 3) {
        return 0.25L;
    }
    const long double dp = d - 2;
    const long double alpha = 1.0L / dp;
    // 2 Γ(2/d') / (d' Γ(1/d') Γ((d-1)/d'))
    const long double log_pref = std::log(2.0L) + std::lgamma(2.0L * alpha) - std::log(dp) - std::lgamma(alpha) -
                                 std::lgamma(static_cast<long double>(d - 1) / dp);
    // B(α, α+1) - 1/(α 4^α) = (1/α) [Γ(α+1)^2/Γ(2α+1) - 4^{-α}]
    const long double u = 2.0L * std::lgamma(alpha + 1.0L) - std::lgamma(2.0L * alpha + 1.0L);
    const long double v = -alpha * std::log(4.0L);
    const long double bracket = std::exp(v) * std::expm1(u - v) / alpha;
    const long double integral = 0.5L * bracket;
    return 1.0L - d * std::exp(log_pref) * integral;
}

long double detection_prob_limit_beta(int d) {
    if (d < 3) {
        throw std::invalid_argument("detection_prob_limit_beta: need d >= 3");
    }
    const long double dp = d - 2;
    return 1.0L - d * (1.0L - incomplete_beta(0.5L, 1.0L / dp, (d - 1) / dp));
}

namespace {

long double beta_fraction(long double a, long double b, long double x) {
    constexpr int kMaxIter = 100000;
    constexpr long double kEps = 1e-19L;
    constexpr long double kTiny = 1e-4000L;
    const long double qab = a + b, qap = a + 1.0L, qam = a - 1.0L;
    long double c = 1.0L;
    long double d = 1.0L - qab * x / qap;
    if (std::fabs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0L / d;
    long double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const long double m2 = 2.0L * m;
        long double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0L + aa * d;
        d = std::fabs(d) < kTiny ? kTiny : d;
        c = 1.0L + aa / c;
        c = std::fabs(c) < kTiny ? kTiny : c;
        d = 1.0L / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0L + aa * d;
        d = std::fabs(d) < kTiny ? kTiny : d;
        c = 1.0L + aa / c;
        c = std::fabs(c) < kTiny ? kTiny : c;
        d = 1.0L / d;
        const long double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0L) < kEps) {
            return h;
        }
    }
    throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

long double incomplete_beta(long double x, long double a, long double b) {
    if (!(x >= 0.0L && x <= 1.0L) || !(a > 0.0L) || !(b > 0.0L)) {
        throw std::invalid_argument("incomplete_beta: need 0 <= x <= 1 and a, b > 0");
    }
    if (x == 0.0L) {
        return 0.0L;
    }
    if (x == 1.0L) {
        return 1.0L;
    }
    const long double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0L) / (a + b + 2.0L)) {
        return std::exp(log_front) * beta_fraction(a, b, x) / a;
    }
    return 1.0L - std::exp(log_front) * beta_fraction(b, a, 1.0L - x) / b;
}

UrnSpec spreading_urn(int d, int n) {
    if (d < 2 || n < 1) {
        throw std::invalid_argument("spreading_urn: need d >= 2 and n >= 1");
    }
    return {std::vector<long long>(d, 1), d - 2, n - 1};
}

namespace {

void validate_urn(const UrnSpec& spec) {
    if (spec.initial.empty() || spec.reinforcement < 0 || spec.draws < 0) {
        throw std::invalid_argument("urn: need at least one color, reinforcement >= 0, draws >= 0");
    }
    for (long long b : spec.initial) {
        if (b <= 0) {
            throw std::invalid_argument("urn: initial ball counts must be positive");
        }
    }
}

}  // namespace

Rational urn_joint_pmf(const UrnSpec& spec, const std::vector<long long>& outcome) {
    validate_urn(spec);
    if (outcome.size() != spec.initial.size()) {
        throw std::invalid_argument("urn_joint_pmf: outcome has the wrong number of colors");
    }
    long long sum = 0;
    for (long long x : outcome) {
        if (x < 0) {
            throw std::invalid_argument("urn_joint_pmf: negative count");
        }
        sum += x;
    }
    if (sum != spec.draws) {
        throw std::invalid_argument("urn_joint_pmf: counts must sum to the number of draws");
    }
    const long long total = std::accumulate(spec.initial.begin(), spec.initial.end(), 0LL);
    BigInt num = factorial(static_cast<unsigned>(spec.draws));
    BigInt den = 1;
    for (std::size_t i = 0; i < outcome.size(); ++i) {
        den *= factorial(static_cast<unsigned>(outcome[i]));
        for (long long l = 0; l < outcome[i]; ++l) {
            num *= spec.initial[i] + l * spec.reinforcement;
        }
    }
    for (long long l = 0; l < spec.draws; ++l) {
        den *= total + l * spec.reinforcement;
    }
    return Rational(num, den);
}

std::vector<long long> urn_sample(const UrnSpec& spec, uint64_t seed) {
    validate_urn(spec);
    CounterRng rng(seed);
    std::vector<long long> x(spec.initial.size(), 0);
    const long long base = std::accumulate(spec.initial.begin(), spec.initial.end(), 0LL);
    for (long long step = 0; step < spec.draws; ++step) {
        long long r = static_cast<long long>(rng.below(static_cast<uint64_t>(base + step * spec.reinforcement)));
        for (std::size_t i = 0; i < x.size(); ++i) {
            r -= spec.initial[i] + spec.reinforcement * x[i];
            if (r < 0) {
                ++x[i];
                break;
            }
        }
    }
    return x;
}

IncreasingTreeCounts increasing_tree_count(int d, int n) {
    if (d < 3 || n < 1) {
        throw std::invalid_argument("increasing_tree_count: need d >= 3 and n >= 1");
    }
    IncreasingTreeCounts c{1, 1};
    for (long long i = 1; i <= n - 1; ++i) {
        c.plain *= 1 + i * (d - 2);
        c.labelled *= d + (i - 1) * (d - 2);
    }
    return c;
}

BigInt increasing_tree_count(const std::vector<long long>& phi, int n) {
    if (phi.empty() || phi.front() <= 0 || n < 1) {
        throw std::invalid_argument("increasing_tree_count: need phi(0) > 0 and n >= 1");
    }
    // a[k] = T_k / k!; T' = phi(T) gives a[k+1] = [z^k] phi(T) / (k+1).
    std::vector<Rational> a(n + 1, Rational(0));
    for (int k = 0; k < n; ++k) {
        // [z^k] phi(T) by Horner in truncated series arithmetic.
        std::vector<Rational> acc(k + 1, Rational(0));
        for (auto it = phi.rbegin(); it != phi.rend(); ++it) {
            std::vector<Rational> next(k + 1, Rational(0));
            for (int i = 0; i <= k; ++i) {
                if (acc[i] == 0) {
                    continue;
                }
                for (int j = 1; i + j <= k; ++j) {
                    next[i + j] += acc[i] * a[j];
                }
            }
            next[0] += *it;
            acc.swap(next);
        }
        a[k + 1] = acc[k] / (k + 1);
    }
    Rational t = a[n] * Rational(factorial(static_cast<unsigned>(n)));
    return numerator(t);
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) {
        throw std::invalid_argument("ks_statistic: empty sample");
    }
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double dmax = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        dmax = std::max({dmax, (i + 1) / n - f, f - i / n});
    }
    return dmax;
}

double ks_pvalue(double statistic, std::size_t n) {
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * statistic;
    if (lambda < 0.2) {
        return 1.0;
    }
    double sum = 0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-16) {
            break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace srcdet
