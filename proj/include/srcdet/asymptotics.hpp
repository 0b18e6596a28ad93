#ifndef SRCDET_ASYMPTOTICS_HPP
#define SRCDET_ASYMPTOTICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "srcdet/numeric.hpp"

namespace srcdet {

enum class TieRule {
    kFull,  // source among two rumor centers counts as detected
    kHalf,  // counts one half
};

struct DetectionProb {
    std::optional<Rational> exact;
    long double value = 0;
};

constexpr int kExactDetectionLimit = 4000;

/*
 * Probability that the source of an SI spread of n nodes on the infinite d-regular tree
 * is a rumor center of the infected subtree. At most one branch of the source can exceed
 * n/2, so the complement sums over the size x of that branch; the other d-1 branches
 * convolve to a single rising-factorial weight.
 */
DetectionProb detection_prob_exact(int d, long long n, TieRule tie = TieRule::kFull, bool exact = true);

// The same quantity by iterating all compositions of n-1 into d parts (small n only).
Rational detection_prob_by_compositions(int d, int n, TieRule tie = TieRule::kFull);

long double detection_prob_limit(int d);
// 1 - d (1 - I_{1/2}(1/(d-2), (d-1)/(d-2))): the same limit through the Beta tail.
long double detection_prob_limit_beta(int d);

// Regularised incomplete beta I_x(a, b).
long double incomplete_beta(long double x, long double a, long double b);

struct UrnSpec {
    std::vector<long long> initial;  // balls per color
    long long reinforcement = 0;     // extra balls of the drawn color
    long long draws = 0;
};

// Branch sizes of an n-node spread on the infinite d-regular tree.
UrnSpec spreading_urn(int d, int n);

Rational urn_joint_pmf(const UrnSpec& spec, const std::vector<long long>& outcome);
std::vector<long long> urn_sample(const UrnSpec& spec, uint64_t seed);

struct IncreasingTreeCounts {
    BigInt plain;     // T_n, (d-1)-ary increasing trees
    BigInt labelled;  // T~_n, spread histories with slot-labelled children
};

IncreasingTreeCounts increasing_tree_count(int d, int n);
// T_n for the degree function phi(w) = sum_k phi[k] w^k, from T' = phi(T).
BigInt increasing_tree_count(const std::vector<long long>& phi, int n);

// Kolmogorov-Smirnov one-sample statistic and its asymptotic p-value.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_pvalue(double statistic, std::size_t n);

}  // namespace srcdet

#endif
