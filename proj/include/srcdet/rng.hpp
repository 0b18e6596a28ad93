#ifndef SRCDET_RNG_HPP
#define SRCDET_RNG_HPP

#include <cstdint>
#include <limits>

namespace srcdet {

// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Child key of (key, index); used to split a master seed by trial and stage.
constexpr uint64_t derive_seed(uint64_t key, uint64_t index) {
    return mix64(mix64(key) ^ mix64(index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
}

constexpr uint64_t derive_seed(uint64_t master, uint64_t trial, uint64_t stage) {
    return derive_seed(derive_seed(master, trial), stage);
}

/*
 * Counter-based random stream: the value at position i depends only on
 * (key, i), so draws are reproducible regardless of evaluation order.
 */
class CounterRng {
public:
    using result_type = uint64_t;

    explicit CounterRng(uint64_t key = 0) : key_(key) {}

    uint64_t at(uint64_t i) const { return mix64(key_ ^ mix64(i)); }

    // Sequential interface over the same counter space.
    uint64_t operator()() { return at(counter_++); }
    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return std::numeric_limits<uint64_t>::max(); }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return below_at(counter_++, n); }
    uint64_t below_at(uint64_t i, uint64_t n) const {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(at(i)) * n) >> 64);
    }

    // Uniform double in [0, 1).
    double uniform() { return uniform_at(counter_++); }
    double uniform_at(uint64_t i) const { return static_cast<double>(at(i) >> 11) * 0x1.0p-53; }

    uint64_t key() const { return key_; }
    uint64_t position() const { return counter_; }

private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace srcdet

#endif
