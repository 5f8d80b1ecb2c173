#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcoh {

// Every failure carries a short machine-readable code ("not-a-group",
// "shape-error", ...) plus a human-readable message. InputError marks
// malformed data (CLI exit 2), MathError marks a checked mathematical
// property that does not hold (CLI exit 1).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class InputError : public Error {
public:
    using Error::Error;
};

class MathError : public Error {
public:
    using Error::Error;
};

// A tuple of group element indices, the (x_1,...,x_n) of the formulas.
using Tuple = std::vector<int>;

inline std::size_t pow_sz(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Row-major index of a tuple in the dense G^n table.
inline std::size_t tuple_index(const Tuple& t, int order) {
    std::size_t idx = 0;
    for (int x : t) idx = idx * static_cast<std::size_t>(order) + static_cast<std::size_t>(x);
    return idx;
}

inline Tuple index_tuple(std::size_t idx, int n, int order) {
    Tuple t(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(order));
        idx /= static_cast<std::size_t>(order);
    }
    return t;
}

// Deterministic RNG. All randomized behavior in the engine is driven
// through this wrapper so that a seed fully determines every run.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform on [lo, hi], inclusive
    int uniform(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace pcoh
