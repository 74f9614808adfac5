#include "dtmf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "dtmf/error.hpp"

namespace dtmf {

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.begin()->size();
    DenseMatrix out(m, n);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != n) fail("DimensionMismatch", "ragged initializer rows");
        std::copy(r.begin(), r.end(), out.values_.begin() + static_cast<std::ptrdiff_t>(i * n));
        ++i;
    }
    return out;
}

bool DenseMatrix::all_finite() const noexcept {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) fail("DimensionMismatch", "matrix product shape mismatch");
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double max_abs(const DenseMatrix& m) {
    double best = 0.0;
    for (double v : m.values()) best = std::max(best, std::abs(v));
    return best;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail("DimensionMismatch", "max_abs_diff shape mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        best = std::max(best, std::abs(a.values()[i] - b.values()[i]));
    return best;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) fail("DimensionMismatch", "vector length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace dtmf
