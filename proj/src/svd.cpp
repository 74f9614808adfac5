#include "dtmf/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "dtmf/error.hpp"

namespace dtmf {

namespace {

// Column-major scratch matrix so Jacobi rotations touch contiguous memory.
struct ColMat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    ColMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double* col(std::size_t j) { return a.data() + j * rows; }
    const double* col(std::size_t j) const { return a.data() + j * rows; }
};

ColMat to_colmajor(const DenseMatrix& m) {
    ColMat out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double* c = out.col(j);
        for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
    }
    return out;
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void rotate(double* x, double* y, std::size_t n, double cs, double sn) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = cs * xi - sn * yi;
        y[i] = sn * xi + cs * yi;
    }
}

// One-sided (Hestenes) Jacobi SVD of a tall-or-square matrix. Cyclic pass
// over column pairs; a pair is rotated only while the off-diagonal Gram
// element exceeds 1e-14 relative to the column norms, which keeps the run
// fully deterministic and the normalized left vectors orthonormal to the
// same 1e-14 regardless of conditioning.
void jacobi_tall(ColMat& b, ColMat& v, std::vector<double>& sigma) {
    const std::size_t m = b.rows;
    const std::size_t n = b.cols;
    const double tol = 1e-14;
    const int max_sweeps = 64;

    for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double* bp = b.col(p);
                double* bq = b.col(q);
                const double app = dot(bp, bp, m);
                const double aqq = dot(bq, bq, m);
                const double apq = dot(bp, bq, m);
                if (apq * apq <= tol * tol * app * aqq) continue;

                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                rotate(bp, bq, m, cs, sn);
                rotate(v.col(p), v.col(q), n, cs, sn);
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    sigma.resize(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(dot(b.col(j), b.col(j), m));
}

// Replace an exactly-zero left-singular column (sigma == 0) by a unit vector
// orthogonal to every other column of u. Candidates are the standard basis
// vectors in index order; the first with a residual of usable size wins, so
// the completion is deterministic.
void complete_null_column(DenseMatrix& u, std::size_t col) {
    const std::size_t m = u.rows();
    const std::size_t p = u.cols();
    std::vector<double> w(m);
    for (std::size_t cand = 0; cand < m; ++cand) {
        std::fill(w.begin(), w.end(), 0.0);
        w[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < p; ++j) {
                if (j == col) continue;
                double proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) proj += u(i, j) * w[i];
                for (std::size_t i = 0; i < m; ++i) w[i] -= proj * u(i, j);
            }
        }
        double norm2 = 0.0;
        for (double x : w) norm2 += x * x;
        if (norm2 * static_cast<double>(m) >= 1.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (std::size_t i = 0; i < m; ++i) u(i, col) = w[i] * inv;
            return;
        }
    }
    fail("SvdInternal", "could not complete orthonormal basis");
}

}  // namespace

SvdResult svd(const DenseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) fail("EmptyMatrix", "svd of an empty matrix");
    if (!m.all_finite()) fail("NonFinite", "svd input contains NaN or Inf");

    // Rotate the smaller side: work on W = m (tall) or m^T, then swap back.
    const bool transposed = m.rows() < m.cols();
    const DenseMatrix work = transposed ? m.transposed() : m;
    const std::size_t wm = work.rows();
    const std::size_t wn = work.cols();

    ColMat b = to_colmajor(work);
    ColMat vacc(wn, wn);
    std::vector<double> raw_sigma;
    jacobi_tall(b, vacc, raw_sigma);

    // Stable descending order by singular value.
    std::vector<std::size_t> order(wn);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return raw_sigma[i] > raw_sigma[j]; });

    DenseMatrix left(wm, wn);   // normalized columns of b
    DenseMatrix right(wn, wn);  // accumulated rotations
    std::vector<double> sigma(wn);
    std::vector<std::size_t> zeros;
    for (std::size_t jj = 0; jj < wn; ++jj) {
        const std::size_t src = order[jj];
        sigma[jj] = raw_sigma[src];
        const double* bc = b.col(src);
        const double* vc = vacc.col(src);
        if (sigma[jj] > 0.0) {
            const double inv = 1.0 / sigma[jj];
            for (std::size_t i = 0; i < wm; ++i) left(i, jj) = bc[i] * inv;
        } else {
            zeros.push_back(jj);
        }
        for (std::size_t i = 0; i < wn; ++i) right(i, jj) = vc[i];
    }
    for (std::size_t jj : zeros) complete_null_column(left, jj);

    SvdResult out;
    if (transposed) {
        out.u = std::move(right);
        out.v = std::move(left);
    } else {
        out.u = std::move(left);
        out.v = std::move(right);
    }
    out.sigma = std::move(sigma);

    // Sign convention: largest-|entry| of each u column positive, first such
    // index winning ties; v follows so the reconstruction is untouched.
    const std::size_t p = out.sigma.size();
    for (std::size_t j = 0; j < p; ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < out.u.rows(); ++i) {
            const double a = std::abs(out.u(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (out.u(arg, j) < 0.0) {
            for (std::size_t i = 0; i < out.u.rows(); ++i) out.u(i, j) = -out.u(i, j);
            for (std::size_t i = 0; i < out.v.rows(); ++i) out.v(i, j) = -out.v(i, j);
        }
    }

    out.effective_rank = 0;
    if (!out.sigma.empty() && out.sigma[0] > 0.0) {
        const double cut = kRankTol * out.sigma[0];
        for (double s : out.sigma)
            if (s > cut) ++out.effective_rank;
    }
    return out;
}

SvdResult truncate(const SvdResult& s, std::size_t k) {
    const std::size_t p = s.sigma.size();
    if (k < 1 || k > p)
        fail("RankOutOfRange",
             "truncate to k=" + std::to_string(k) + " outside [1, " + std::to_string(p) + "]");

    SvdResult out;
    out.u = DenseMatrix(s.u.rows(), k);
    out.v = DenseMatrix(s.v.rows(), k);
    out.sigma.assign(s.sigma.begin(), s.sigma.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = 0; i < s.u.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out.u(i, j) = s.u(i, j);
    for (std::size_t i = 0; i < s.v.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out.v(i, j) = s.v(i, j);

    out.effective_rank = 0;
    if (out.sigma[0] > 0.0) {
        const double cut = kRankTol * out.sigma[0];
        for (double x : out.sigma)
            if (x > cut) ++out.effective_rank;
    }
    return out;
}

std::vector<double> explained_proportions(const SvdResult& s) {
    if (s.sigma.empty()) fail("EmptyMatrix", "explained_proportions of empty decomposition");
    double total = 0.0;
    for (double x : s.sigma) total += x * x;
    std::vector<double> out(s.sigma.size(), 0.0);
    if (total == 0.0) return out;
    for (std::size_t i = 0; i < s.sigma.size(); ++i) out[i] = s.sigma[i] * s.sigma[i] / total;
    return out;
}

DenseMatrix reconstruct(const SvdResult& s) {
    const std::size_t m = s.u.rows();
    const std::size_t n = s.v.rows();
    const std::size_t p = s.sigma.size();
    DenseMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < p; ++k) acc += s.u(i, k) * s.sigma[k] * s.v(j, k);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace dtmf
