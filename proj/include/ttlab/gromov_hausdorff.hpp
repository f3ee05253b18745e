#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ttlab/errors.hpp"
#include "ttlab/metric_space.hpp"

namespace ttlab {

// Relation between two point sets covering both sides.
struct Correspondence {
    std::vector<std::pair<int, int>> pairs;

    static Correspondence identity(std::size_t n) {
        Correspondence c;
        c.pairs.reserve(n);
        for (std::size_t i = 0; i < n; ++i) c.pairs.emplace_back(static_cast<int>(i), static_cast<int>(i));
        return c;
    }

    void check_covers(std::size_t nx, std::size_t ny) const {
        std::vector<char> cx(nx, 0), cy(ny, 0);
        for (auto [i, j] : pairs) {
            if (i < 0 || static_cast<std::size_t>(i) >= nx || j < 0 ||
                static_cast<std::size_t>(j) >= ny) {
                throw coverage_error("correspondence pair out of range");
            }
            cx[i] = 1;
            cy[j] = 1;
        }
        for (std::size_t i = 0; i < nx; ++i) {
            if (!cx[i]) throw coverage_error("uncovered point " + std::to_string(i) + " of X");
        }
        for (std::size_t j = 0; j < ny; ++j) {
            if (!cy[j]) throw coverage_error("uncovered point " + std::to_string(j) + " of Y");
        }
    }
};

// dis(R) = sup |d_X(x,x') - d_Y(y,y')| over pairs of matched pairs.
inline double distortion(const Correspondence& corr, const FiniteMetricSpace& X,
                         const FiniteMetricSpace& Y) {
    corr.check_covers(X.size(), Y.size());
    double worst = 0.0;
    for (std::size_t a = 0; a < corr.pairs.size(); ++a) {
        for (std::size_t b = a; b < corr.pairs.size(); ++b) {
            const auto [i, j] = corr.pairs[a];
            const auto [k, l] = corr.pairs[b];
            worst = std::max(worst, std::abs(X(i, k) - Y(j, l)));
        }
    }
    return worst;
}

struct GhEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> exact;  // present only when brute force ran
};

namespace detail {

// Enumerates every relation covering both sides: one nonempty subset of Y's
// indices per row of X, filtered to full column coverage. The partial
// distortion is monotone in the rows already placed, which admits pruning
// against the best value seen so far without losing exactness.
class GhEnumerator {
public:
    GhEnumerator(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double seed_upper)
        : X_(X), Y_(Y) {
        nx_ = X.size();
        ny_ = Y.size();
        subsets_.clear();
        for (std::uint32_t m = 1; m < (1u << ny_); ++m) subsets_.push_back(m);
        rows_.assign(nx_, 0);
        // A known achievable distortion lets the very first rows prune.
        best_ = seed_upper;
    }

    double run() {
        place_row(0, 0u, 0.0);
        return best_;
    }

private:
    void place_row(std::size_t row, std::uint32_t covered, double dis_so_far) {
        if (row == nx_) {
            if (covered == (1u << ny_) - 1u) best_ = std::min(best_, dis_so_far);
            return;
        }
        // Columns still missing must fit into the remaining rows' subsets,
        // which is automatic; only the final coverage check matters.
        for (std::uint32_t subset : subsets_) {
            rows_[row] = subset;
            double dis = dis_so_far;
            for (std::size_t prev = 0; prev <= row && dis < best_; ++prev) {
                const double dx = X_(row, prev);
                const std::uint32_t sp = rows_[prev];
                for (std::uint32_t mj = subset; mj; mj &= mj - 1) {
                    const int j = std::countr_zero(mj);
                    for (std::uint32_t ml = sp; ml; ml &= ml - 1) {
                        const int l = std::countr_zero(ml);
                        dis = std::max(dis, std::abs(dx - Y_(j, l)));
                    }
                }
            }
            if (dis >= best_) continue;
            place_row(row + 1, covered | subset, dis);
        }
    }

    const FiniteMetricSpace& X_;
    const FiniteMetricSpace& Y_;
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<std::uint32_t> subsets_;
    std::vector<std::uint32_t> rows_;
    double best_ = 0.0;
};

}  // namespace detail

// Deterministic greedy correspondence: match each point of X in input order to
// the partner minimizing the added distortion, then patch coverage of Y the
// same way. Valid upper bound, not claimed tight.
inline Correspondence greedy_correspondence(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
    Correspondence corr;
    const std::size_t nx = X.size(), ny = Y.size();
    auto added_distortion = [&](int i, int j) {
        double add = 0.0;
        for (auto [k, l] : corr.pairs) add = std::max(add, std::abs(X(i, k) - Y(j, l)));
        return add;
    };
    std::vector<char> covered(ny, 0);
    for (std::size_t i = 0; i < nx; ++i) {
        int best_j = 0;
        double best_add = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ny; ++j) {
            const double add = added_distortion(static_cast<int>(i), static_cast<int>(j));
            if (add < best_add) {
                best_add = add;
                best_j = static_cast<int>(j);
            }
        }
        corr.pairs.emplace_back(static_cast<int>(i), best_j);
        covered[best_j] = 1;
    }
    for (std::size_t j = 0; j < ny; ++j) {
        if (covered[j]) continue;
        int best_i = 0;
        double best_add = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < nx; ++i) {
            const double add = added_distortion(static_cast<int>(i), static_cast<int>(j));
            if (add < best_add) {
                best_add = add;
                best_i = static_cast<int>(i);
            }
        }
        corr.pairs.emplace_back(best_i, static_cast<int>(j));
    }
    return corr;
}

// Exact GH distance of two small finite spaces: half the minimal distortion
// over all correspondences, enumerated as one nonempty subset of Y per row of
// X with column-coverage filtering. Exponential; refuses inputs beyond the cap.
inline double gh_exact_small(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, int cap = 5) {
    if (static_cast<int>(X.size()) > cap || static_cast<int>(Y.size()) > cap) {
        throw size_error("gh_exact_small: space larger than enumeration cap " + std::to_string(cap));
    }
    if (Y.size() > 16) throw size_error("gh_exact_small: cap above 16 columns is not supported");
    const double seed = distortion(greedy_correspondence(X, Y), X, Y);
    detail::GhEnumerator e(X, Y, seed);
    return 0.5 * e.run();
}

// Bounds without enumeration: half diameter gap from below, half max diameter
// and the greedy correspondence from above.
inline GhEstimate gh_bounds(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
    GhEstimate est;
    est.lower = 0.5 * std::abs(X.diam() - Y.diam());
    const double diam_upper = 0.5 * std::max(X.diam(), Y.diam());
    const double greedy_upper = 0.5 * distortion(greedy_correspondence(X, Y), X, Y);
    est.upper = std::min(diam_upper, greedy_upper);
    est.upper = std::max(est.upper, est.lower);
    return est;
}

// GH estimate of the eps-truncations; exact when both sides fit the cap.
inline GhEstimate truncated_gh(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double eps,
                               int cap = 5) {
    const FiniteMetricSpace Xe = truncate(X, eps);
    const FiniteMetricSpace Ye = truncate(Y, eps);
    GhEstimate est = gh_bounds(Xe, Ye);
    if (static_cast<int>(Xe.size()) <= cap && static_cast<int>(Ye.size()) <= cap) {
        est.exact = gh_exact_small(Xe, Ye, cap);
        est.lower = std::max(est.lower, *est.exact);
        est.upper = std::min(est.upper, *est.exact);
    }
    return est;
}

}  // namespace ttlab
