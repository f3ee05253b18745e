#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ttlab/errors.hpp"

namespace ttlab {

// Validated finite metric space: symmetric nonnegative matrix with zero
// diagonal, positive off-diagonal entries and the triangle inequality.
// Immutable after construction; diameter is cached at validation.
class FiniteMetricSpace {
public:
    // Triangle slack is relative to the diameter; the default matches exact
    // arithmetic up to accumulated rounding. Sampled continuous spaces whose
    // matrices carry discretization error may pass a larger slack explicitly.
    static constexpr double kDefaultTriangleSlack = 1e-12;

    static FiniteMetricSpace validate(std::vector<std::vector<double>> matrix,
                                      std::vector<std::string> labels = {},
                                      double triangle_slack = kDefaultTriangleSlack) {
        const std::size_t n = matrix.size();
        if (n == 0) throw validation_error("empty distance matrix");
        std::vector<double> flat(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix[i].size() != n) throw validation_error("distance matrix is not square");
            for (std::size_t j = 0; j < n; ++j) {
                const double v = matrix[i][j];
                if (!std::isfinite(v)) {
                    throw validation_error("non-finite entry at (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
                }
                flat[i * n + j] = v;
            }
        }
        return validate_flat(std::move(flat), n, std::move(labels), triangle_slack);
    }

    static FiniteMetricSpace validate_flat(std::vector<double> flat, std::size_t n,
                                           std::vector<std::string> labels = {},
                                           double triangle_slack = kDefaultTriangleSlack) {
        if (n == 0 || flat.size() != n * n) throw validation_error("bad matrix shape");
        if (!labels.empty() && labels.size() != n) {
            throw validation_error("label count does not match point count");
        }
        double diam = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (flat[i * n + i] != 0.0) {
                throw validation_error("nonzero diagonal at (" + std::to_string(i) + "," +
                                       std::to_string(i) + ")");
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = flat[i * n + j];
                if (v != flat[j * n + i]) {
                    throw validation_error("asymmetry at (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
                }
                if (!(v > 0.0)) {
                    throw validation_error("non-positive distance between distinct points (" +
                                           std::to_string(i) + "," + std::to_string(j) + ")");
                }
                diam = std::max(diam, v);
            }
        }
        const double tol = triangle_slack * diam;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double dij = flat[i * n + j];
                for (std::size_t k = j + 1; k < n; ++k) {
                    if (k == i) continue;
                    if (flat[j * n + k] > dij + flat[i * n + k] + tol) {
                        throw validation_error("triangle violation at (" + std::to_string(j) + "," +
                                               std::to_string(i) + "," + std::to_string(k) + ")");
                    }
                }
            }
        }
        return FiniteMetricSpace(std::move(flat), n, std::move(labels), diam);
    }

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
    double diam() const { return diam_; }
    const std::vector<double>& flat() const { return dist_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::string label(std::size_t i) const {
        return labels_.empty() ? std::to_string(i) : labels_[i];
    }

private:
    FiniteMetricSpace(std::vector<double> flat, std::size_t n, std::vector<std::string> labels,
                      double diam)
        : dist_(std::move(flat)), labels_(std::move(labels)), n_(n), diam_(diam) {}

    std::vector<double> dist_;
    std::vector<std::string> labels_;
    std::size_t n_;
    double diam_;
};

struct TruncationParams {
    double epsilon;
};

// d_eps = min(d, eps). The result is revalidated; truncation preserves all
// four metric axioms so this can only fail on a broken input.
inline FiniteMetricSpace truncate(const FiniteMetricSpace& space, TruncationParams params) {
    if (!(params.epsilon > 0.0)) throw parameter_error("truncation epsilon must be positive");
    const std::size_t n = space.size();
    std::vector<double> flat = space.flat();
    for (double& v : flat) v = std::min(v, params.epsilon);
    return FiniteMetricSpace::validate_flat(std::move(flat), n, space.labels());
}

inline FiniteMetricSpace truncate(const FiniteMetricSpace& space, double epsilon) {
    return truncate(space, TruncationParams{epsilon});
}

// Hausdorff distance between two index subsets of one space.
inline double hausdorff(const FiniteMetricSpace& space, const std::vector<int>& A,
                        const std::vector<int>& B) {
    if (A.empty() || B.empty()) throw parameter_error("hausdorff: empty subset");
    const auto check = [&](int idx) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= space.size()) {
            throw parameter_error("hausdorff: index out of range");
        }
    };
    double worst = 0.0;
    for (int a : A) {
        check(a);
        double best = std::numeric_limits<double>::infinity();
        for (int b : B) {
            check(b);
            best = std::min(best, space(a, b));
        }
        worst = std::max(worst, best);
    }
    for (int b : B) {
        double best = std::numeric_limits<double>::infinity();
        for (int a : A) best = std::min(best, space(b, a));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace ttlab
