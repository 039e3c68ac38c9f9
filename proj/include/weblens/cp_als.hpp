#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "weblens/error.hpp"
#include "weblens/numerics.hpp"
#include "weblens/tensor.hpp"

namespace weblens {

// Rank-R CP factorization: weights (positive, non-increasing) and three
// unit-column factor matrices. Columns are signed so that the entry of
// largest magnitude in each AS and time column is nonnegative; the VP
// column absorbs the residual sign when the three cannot jointly satisfy
// the convention.
struct CpModel {
    std::size_t rank = 0;
    std::vector<double> weights;
    Eigen::MatrixXd as_factors;    // m x R
    Eigen::MatrixXd time_factors;  // T x R
    Eigen::MatrixXd vp_factors;    // o x R
    std::vector<double> sweep_errors;  // relative error after each sweep
    std::size_t sweeps = 0;
};

struct CpAlsOptions {
    std::size_t max_sweeps = 200;
    double tol = 1e-6;  // stop when the per-sweep fit change drops below this
};

inline double model_value(const CpModel& model, std::size_t i, std::size_t j,
                          std::size_t k) {
    double v = 0.0;
    for (std::size_t r = 0; r < model.rank; ++r)
        v += model.weights[r] * model.as_factors(long(i), long(r)) *
             model.time_factors(long(j), long(r)) *
             model.vp_factors(long(k), long(r));
    return v;
}

// <Xhat, Xhat> through the factor Grams, no expansion.
inline double model_norm_squared(const CpModel& model) {
    if (model.rank == 0) return 0.0;
    Eigen::Map<const Eigen::VectorXd> lambda(model.weights.data(),
                                             long(model.rank));
    Eigen::MatrixXd gram =
        (model.as_factors.transpose() * model.as_factors)
            .cwiseProduct(model.time_factors.transpose() * model.time_factors)
            .cwiseProduct(model.vp_factors.transpose() * model.vp_factors);
    return lambda.dot(gram * lambda);
}

namespace detail {

inline double model_tensor_inner(const CpModel& model, const SparseTensor3& x) {
    double s = 0.0;
    for (const auto& e : x.entries())
        s += e.value * model_value(model, e.i, e.j, e.k);
    return s;
}

inline double relative_error_from_parts(double norm_x, double inner,
                                        double norm_model_sq) {
    const double err_sq = norm_x * norm_x - 2.0 * inner + norm_model_sq;
    return std::sqrt(std::max(err_sq, 0.0)) / norm_x;
}

// Columnwise Kronecker product: out(a*q + b, r) = p(a,r) * q(b,r).
inline Eigen::MatrixXd khatri_rao(const Eigen::MatrixXd& p,
                                  const Eigen::MatrixXd& q) {
    Eigen::MatrixXd out(p.rows() * q.rows(), p.cols());
    for (long r = 0; r < p.cols(); ++r)
        for (long a = 0; a < p.rows(); ++a)
            out.block(a * q.rows(), r, q.rows(), 1) = p(a, r) * q.col(r);
    return out;
}

// uniform(-1,1) with an explicit bit mapping so streams are identical
// across standard libraries
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : rng_(seed) {}
    double next() {
        const double u = double(rng_() >> 11) * 0x1.0p-53;  // [0,1)
        return 2.0 * u - 1.0;
    }
    void fill(Eigen::MatrixXd& m) {
        for (long i = 0; i < m.rows(); ++i)
            for (long j = 0; j < m.cols(); ++j) m(i, j) = next();
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace detail

// ||X - sum_r w_r a_r o b_r o c_r||_F / ||X||_F via the inner-product
// identity; X is never densified.
inline double reconstruction_error(const CpModel& model,
                                   const SparseTensor3& x) {
    const auto& shape = x.shape();
    if (std::size_t(model.as_factors.rows()) != shape[0] ||
        std::size_t(model.time_factors.rows()) != shape[1] ||
        std::size_t(model.vp_factors.rows()) != shape[2])
        throw ConfigError("reconstruction_error: shape mismatch");
    const double norm_x = x.norm();
    if (norm_x == 0.0)
        throw DataError("reconstruction_error: zero-norm tensor");
    return detail::relative_error_from_parts(
        norm_x, detail::model_tensor_inner(model, x), model_norm_squared(model));
}

// Alternating least squares for the CP decomposition. Each sweep solves the
// three matricized subproblems in mode order 1, 2, 3 on their Khatri-Rao
// systems; factors are column-normalized with the scale collected into the
// weights. Components whose weight collapses to zero are dropped from the
// returned model.
inline CpModel cp_als(const SparseTensor3& x, std::size_t rank,
                      std::uint64_t seed, const CpAlsOptions& opts = {}) {
    const auto [m, t, o] = x.shape();
    if (rank < 1) throw ConfigError("cp_als: rank must be >= 1");
    const std::size_t max_feasible = std::min({t * o, m * o, m * t});
    if (rank > max_feasible)
        throw ConfigError("cp_als: rank exceeds feasible subproblem size");
    if (x.nnz() == 0) throw DataError("cp_als: all-zero tensor");
    const double norm_x = x.norm();
    if (!std::isfinite(norm_x))
        throw DataError("cp_als: tensor has non-finite entries");

    const long r = long(rank);
    Eigen::MatrixXd a(m, r), b(t, r), c(o, r);
    detail::UniformSource source(seed);
    source.fill(a);
    source.fill(b);
    source.fill(c);

    // transposed unfoldings as dense right-hand sides
    Eigen::MatrixXd x1t = Eigen::MatrixXd::Zero(long(t * o), long(m));
    Eigen::MatrixXd x2t = Eigen::MatrixXd::Zero(long(m * o), long(t));
    Eigen::MatrixXd x3t = Eigen::MatrixXd::Zero(long(m * t), long(o));
    for (const auto& e : x.entries()) {
        x1t(long(e.j + e.k * t), long(e.i)) = e.value;
        x2t(long(e.i + e.k * m), long(e.j)) = e.value;
        x3t(long(e.i + e.j * m), long(e.k)) = e.value;
    }

    auto normalize_columns = [r](Eigen::MatrixXd& f, std::vector<double>* norms) {
        for (long col = 0; col < r; ++col) {
            const double nrm = f.col(col).norm();
            if (nrm > 0.0) f.col(col) /= nrm;
            if (norms) (*norms)[std::size_t(col)] = nrm;
        }
    };
    normalize_columns(b, nullptr);
    normalize_columns(c, nullptr);

    CpModel model;
    model.rank = rank;
    model.weights.assign(rank, 0.0);

    double prev_error = std::numeric_limits<double>::infinity();
    for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        a = least_squares_solve(detail::khatri_rao(c, b), x1t).transpose();
        normalize_columns(a, nullptr);
        b = least_squares_solve(detail::khatri_rao(c, a), x2t).transpose();
        normalize_columns(b, nullptr);
        c = least_squares_solve(detail::khatri_rao(b, a), x3t).transpose();
        normalize_columns(c, &model.weights);

        model.as_factors = a;
        model.time_factors = b;
        model.vp_factors = c;
        const double err = detail::relative_error_from_parts(
            norm_x, detail::model_tensor_inner(model, x),
            model_norm_squared(model));
        model.sweep_errors.push_back(err);
        model.sweeps = sweep + 1;
        if (std::abs(prev_error - err) < opts.tol) break;
        prev_error = err;
    }

    // drop collapsed components, order by weight, fix signs
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < rank; ++i)
        if (model.weights[i] > 0.0) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t lhs, std::size_t rhs) {
                         return model.weights[lhs] > model.weights[rhs];
                     });

    CpModel out;
    out.rank = order.size();
    out.as_factors.resize(long(m), long(out.rank));
    out.time_factors.resize(long(t), long(out.rank));
    out.vp_factors.resize(long(o), long(out.rank));
    out.sweep_errors = std::move(model.sweep_errors);
    out.sweeps = model.sweeps;
    auto dominant_sign = [](const Eigen::VectorXd& col) {
        long arg = 0;
        col.cwiseAbs().maxCoeff(&arg);
        return col(arg) < 0.0 ? -1.0 : 1.0;
    };
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const long src = long(order[idx]);
        const long dst = long(idx);
        out.weights.push_back(model.weights[order[idx]]);
        const double sa = dominant_sign(a.col(src));
        const double sb = dominant_sign(b.col(src));
        out.as_factors.col(dst) = sa * a.col(src);
        out.time_factors.col(dst) = sb * b.col(src);
        out.vp_factors.col(dst) = sa * sb * c.col(src);
    }
    return out;
}

}  // namespace weblens
