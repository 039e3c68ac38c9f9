#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weblens/error.hpp"

namespace weblens {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

// Symmetric sparse matrix in CSR form. Row-major products with a fixed
// accumulation order, so apply() on the same vector is bitwise-reproducible.
class SparseSymmetricOperator {
public:
    SparseSymmetricOperator() = default;

    // Duplicate coordinates are summed; zeros after summation are kept.
    // The assembled matrix must be exactly symmetric.
    static SparseSymmetricOperator from_triplets(std::size_t n,
                                                 std::vector<Triplet> entries) {
        for (const auto& t : entries)
            if (t.row >= n || t.col >= n)
                throw ConfigError("sparse operator: index out of range");
        std::stable_sort(entries.begin(), entries.end(),
                         [](const Triplet& a, const Triplet& b) {
                             return a.row != b.row ? a.row < b.row
                                                   : a.col < b.col;
                         });
        SparseSymmetricOperator op;
        op.n_ = n;
        op.row_start_.assign(n + 1, 0);
        for (std::size_t e = 0; e < entries.size();) {
            std::size_t f = e;
            double v = 0.0;
            while (f < entries.size() && entries[f].row == entries[e].row &&
                   entries[f].col == entries[e].col)
                v += entries[f++].value;
            op.cols_.push_back(entries[e].col);
            op.values_.push_back(v);
            ++op.row_start_[entries[e].row + 1];
            e = f;
        }
        for (std::size_t i = 0; i < n; ++i)
            op.row_start_[i + 1] += op.row_start_[i];
        op.check_symmetry();
        return op;
    }

    std::size_t dimension() const { return n_; }
    bool symmetric() const { return true; }

    // y = M x
    void apply(std::span<const double> x, std::span<double> y) const {
        if (x.size() != n_ || y.size() != n_)
            throw ConfigError("sparse operator: vector dimension mismatch");
        for (std::size_t i = 0; i < n_; ++i) {
            double acc = 0.0;
            for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e)
                acc += values_[e] * x[cols_[e]];
            y[i] = acc;
        }
    }

private:
    void check_symmetry() const {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e) {
                std::size_t j = cols_[e];
                if (coeff(j, i) != values_[e])
                    throw ConfigError("sparse operator: matrix not symmetric");
            }
        }
    }

    double coeff(std::size_t i, std::size_t j) const {
        auto begin = cols_.begin() + long(row_start_[i]);
        auto end = cols_.begin() + long(row_start_[i + 1]);
        auto it = std::lower_bound(begin, end, j);
        if (it == end || *it != j) return 0.0;
        return values_[std::size_t(it - cols_.begin())];
    }

    std::size_t n_ = 0;
    std::vector<std::size_t> row_start_;
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

struct CgOptions {
    double tol = 1e-8;          // stop when ||Mx - b|| <= tol * ||b||
    std::size_t max_iter = 0;   // 0 means 10*n
};

struct CgResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double residual = 0.0;      // ||b - Mx|| at exit
};

namespace detail {
inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
}  // namespace detail

// Conjugate gradient for symmetric positive (semi)definite operators. The
// operator needs dimension() and apply(x, y).
template <class Op>
CgResult conjugate_gradient(const Op& m, std::span<const double> b,
                            const CgOptions& opts = {}) {
    const std::size_t n = m.dimension();
    if (b.size() != n)
        throw ConfigError("conjugate_gradient: rhs dimension mismatch");
    if (!(opts.tol > 0.0))
        throw ConfigError("conjugate_gradient: tol must be positive");
    const std::size_t max_iter =
        opts.max_iter > 0 ? opts.max_iter : 10 * std::max<std::size_t>(n, 1);

    CgResult out;
    out.x.assign(n, 0.0);
    const double norm_b = std::sqrt(detail::dot(b, b));
    if (norm_b == 0.0) return out;  // x = 0 solves exactly
    const double target = opts.tol * norm_b;

    std::vector<double> r(n, 0.0);
    std::vector<double> p(n, 0.0);
    std::vector<double> mp(n, 0.0);

    auto true_residual = [&] {
        m.apply(out.x, mp);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - mp[i];
        return std::sqrt(detail::dot(r, r));
    };

    // The recurrence residual drifts from the true one on ill-scaled
    // systems; converge on the recurrence, then verify against b - Mx and
    // restart if the check fails.
    double res = true_residual();
    while (res > target) {
        p = r;
        double rs = detail::dot(r, r);
        while (std::sqrt(rs) > target) {
            if (out.iterations >= max_iter)
                throw ConvergenceError(
                    "conjugate_gradient: no convergence within " +
                    std::to_string(max_iter) + " iterations");
            m.apply(p, mp);
            const double curvature = detail::dot(p, mp);
            if (curvature <= 0.0)
                throw BreakdownError(
                    "conjugate_gradient: zero or negative curvature direction");
            const double alpha = rs / curvature;
            for (std::size_t i = 0; i < n; ++i) {
                out.x[i] += alpha * p[i];
                r[i] -= alpha * mp[i];
            }
            const double rs_next = detail::dot(r, r);
            const double beta = rs_next / rs;
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
            rs = rs_next;
            ++out.iterations;
        }
        res = true_residual();
        if (out.iterations >= max_iter && res > target)
            throw ConvergenceError(
                "conjugate_gradient: no convergence within " +
                std::to_string(max_iter) + " iterations");
    }
    out.residual = res;
    return out;
}

// Minimum-norm least squares: X minimizing ||A X - B||_F.
inline Eigen::MatrixXd least_squares_solve(const Eigen::MatrixXd& a,
                                           const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows())
        throw ConfigError("least_squares_solve: row count mismatch");
    if (a.rows() < 1 || a.cols() < 1)
        throw ConfigError("least_squares_solve: empty system");
    return a.completeOrthogonalDecomposition().solve(b);
}

}  // namespace weblens
