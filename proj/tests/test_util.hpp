#pragma once

#include <cstdint>
#include <random>

#include "dtmf/matrix.hpp"
#include "dtmf/svd.hpp"

namespace testutil {

// mt19937_64 output is pinned by the standard; the value mapping below is
// hand-rolled so draws are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    std::uint64_t integer(std::uint64_t n) { return rng_() % n; }

private:
    std::mt19937_64 rng_;
};

inline dtmf::DenseMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n, double lo,
                                       double hi) {
    dtmf::DenseMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = rng.uniform(lo, hi);
    return out;
}

inline dtmf::DenseMatrix random_count_matrix(Rng& rng, std::size_t m, std::size_t n,
                                             std::uint64_t max_count) {
    dtmf::DenseMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = static_cast<double>(rng.integer(max_count + 1));
    return out;
}

inline double orthonormality_error(const dtmf::DenseMatrix& m) {
    double worst = 0.0;
    for (std::size_t a = 0; a < m.cols(); ++a)
        for (std::size_t b = 0; b < m.cols(); ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i) dot += m(i, a) * m(i, b);
            const double target = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - target));
        }
    return worst;
}

inline double squared_diff(const dtmf::DenseMatrix& a, const dtmf::DenseMatrix& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double d = a(i, j) - b(i, j);
            acc += d * d;
        }
    return acc;
}

}  // namespace testutil
