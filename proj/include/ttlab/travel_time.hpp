#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ttlab/errors.hpp"
#include "ttlab/gromov_hausdorff.hpp"
#include "ttlab/metric_space.hpp"
#include "ttlab/parallel.hpp"

namespace ttlab {

// Indices of the host space playing the role of the measurement set S.
struct MeasurementSet {
    std::vector<int> indices;

    void check(const FiniteMetricSpace& space) const {
        if (indices.empty()) throw parameter_error("measurement set is empty");
        for (int z : indices) {
            if (z < 0 || static_cast<std::size_t>(z) >= space.size()) {
                throw parameter_error("measurement index out of range");
            }
        }
    }
};

// rows[p][z] = d(p, S[z]); one row per source point.
struct TravelTimeData {
    std::size_t n_sources = 0;
    std::size_t n_sensors = 0;
    std::vector<double> rows;  // row-major
    std::vector<std::string> source_labels;
    std::vector<std::string> sensor_labels;

    double at(std::size_t p, std::size_t z) const { return rows[p * n_sensors + z]; }
    const double* row(std::size_t p) const { return rows.data() + p * n_sensors; }
};

inline TravelTimeData travel_time_data(const FiniteMetricSpace& space, const MeasurementSet& S) {
    S.check(space);
    TravelTimeData data;
    data.n_sources = space.size();
    data.n_sensors = S.indices.size();
    data.rows.resize(data.n_sources * data.n_sensors);
    for (std::size_t p = 0; p < data.n_sources; ++p) {
        for (std::size_t z = 0; z < data.n_sensors; ++z) {
            data.rows[p * data.n_sensors + z] = space(p, S.indices[z]);
        }
        data.source_labels.push_back(space.label(p));
    }
    for (int z : S.indices) data.sensor_labels.push_back(space.label(z));
    return data;
}

// Sup norm distance of two rows of equal length.
inline double sup_distance(const double* a, const double* b, std::size_t len) {
    double worst = 0.0;
    for (std::size_t z = 0; z < len; ++z) worst = std::max(worst, std::abs(a[z] - b[z]));
    return worst;
}

inline double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw parameter_error("sup_distance: length mismatch");
    return sup_distance(a.data(), b.data(), a.size());
}

inline double sup_distance(const TravelTimeData& data, std::size_t p, std::size_t q) {
    return sup_distance(data.row(p), data.row(q), data.n_sensors);
}

// Bijection from sensors of S1 to sensors of S2 (discrete surrogate of the
// homeomorphism between measurement sets).
struct SensorMatching {
    std::vector<int> map;  // map[z1] = z2

    static SensorMatching identity(std::size_t n) {
        SensorMatching m;
        m.map.resize(n);
        for (std::size_t i = 0; i < n; ++i) m.map[i] = static_cast<int>(i);
        return m;
    }

    void check(std::size_t n1, std::size_t n2) const {
        if (n1 != n2 || map.size() != n1) {
            throw parameter_error("sensor matching must be a total bijection of equal sensor sets");
        }
        std::vector<char> seen(n2, 0);
        for (int z : map) {
            if (z < 0 || static_cast<std::size_t>(z) >= n2 || seen[z]) {
                throw parameter_error("sensor matching is not a bijection");
            }
            seen[z] = 1;
        }
    }
};

// Hausdorff distance between the two sets of travel time rows, the second one
// pulled back through the sensor matching.
inline double data_hausdorff(const TravelTimeData& d1, const TravelTimeData& d2,
                             const SensorMatching& phi) {
    phi.check(d1.n_sensors, d2.n_sensors);
    const std::size_t ns = d1.n_sensors;
    // phi-pullback of d2's rows onto S1's sensor order.
    std::vector<double> pulled(d2.n_sources * ns);
    for (std::size_t q = 0; q < d2.n_sources; ++q) {
        for (std::size_t z = 0; z < ns; ++z) pulled[q * ns + z] = d2.at(q, phi.map[z]);
    }
    double worst = 0.0;
    for (std::size_t p = 0; p < d1.n_sources; ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < d2.n_sources; ++q) {
            best = std::min(best, sup_distance(d1.row(p), pulled.data() + q * ns, ns));
        }
        worst = std::max(worst, best);
    }
    for (std::size_t q = 0; q < d2.n_sources; ++q) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < d1.n_sources; ++p) {
            best = std::min(best, sup_distance(d1.row(p), pulled.data() + q * ns, ns));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

struct WorstPair {
    int p = -1;
    int q = -1;
    double gap = 0.0;
};

// Verdict of one local-isometry style check. margin = tol - worst gap; the
// check passed iff margin >= 0. A vacuous check has +inf margin and no pair.
struct CheckReport {
    bool passed = true;
    double epsilon = 0.0;
    double tol = 0.0;
    double margin = std::numeric_limits<double>::infinity();
    std::optional<WorstPair> worst_pair;
};

// FLIE(eps): every pair closer than eps is seen at full distance by some
// sensor. gap(p,q) = d(p,q) - sup_z |r_p(z) - r_q(z)|, nonnegative by the
// triangle inequality; the check passes when all applicable gaps are <= tol.
inline CheckReport check_flie(const FiniteMetricSpace& space, const MeasurementSet& S, double eps,
                              double tol) {
    if (!(eps > 0.0)) throw parameter_error("check_flie: epsilon must be positive");
    if (tol < 0.0) throw parameter_error("check_flie: tol must be nonnegative");
    const TravelTimeData data = travel_time_data(space, S);
    const std::size_t n = space.size();

    CheckReport report;
    report.epsilon = eps;
    report.tol = tol;

    std::vector<WorstPair> per_row(n);
    std::vector<char> any(n, 0);
    parallel_for(n, [&](std::size_t p) {
        WorstPair w;
        for (std::size_t q = p + 1; q < n; ++q) {
            const double d = space(p, q);
            if (d >= eps) continue;
            const double gap = d - sup_distance(data, p, q);
            if (w.p < 0 || gap > w.gap) {
                w = {static_cast<int>(p), static_cast<int>(q), gap};
            }
        }
        if (w.p >= 0) {
            per_row[p] = w;
            any[p] = 1;
        }
    });
    for (std::size_t p = 0; p < n; ++p) {
        if (!any[p]) continue;
        if (!report.worst_pair || per_row[p].gap > report.worst_pair->gap) {
            report.worst_pair = per_row[p];
        }
    }
    if (report.worst_pair) {
        report.margin = tol - report.worst_pair->gap;
        report.passed = report.margin >= 0.0;
    }
    return report;
}

// BLIE(eps): every pair of rows closer than eps in sup norm comes from sources
// at that same distance. Requires distinct rows; a duplicate row pair is an
// injectivity failure, reported with the colliding sources.
inline CheckReport check_blie(const FiniteMetricSpace& space, const MeasurementSet& S, double eps,
                              double tol) {
    if (!(eps > 0.0)) throw parameter_error("check_blie: epsilon must be positive");
    if (tol < 0.0) throw parameter_error("check_blie: tol must be nonnegative");
    const TravelTimeData data = travel_time_data(space, S);
    const std::size_t n = space.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (sup_distance(data, p, q) == 0.0) {
                throw injectivity_error(static_cast<int>(p), static_cast<int>(q),
                                        "duplicate travel time rows for sources " +
                                            space.label(p) + " and " + space.label(q));
            }
        }
    }

    CheckReport report;
    report.epsilon = eps;
    report.tol = tol;
    std::vector<WorstPair> per_row(n);
    std::vector<char> any(n, 0);
    parallel_for(n, [&](std::size_t p) {
        WorstPair w;
        for (std::size_t q = p + 1; q < n; ++q) {
            const double sup = sup_distance(data, p, q);
            if (sup >= eps) continue;
            const double gap = space(p, q) - sup;
            if (w.p < 0 || gap > w.gap) {
                w = {static_cast<int>(p), static_cast<int>(q), gap};
            }
        }
        if (w.p >= 0) {
            per_row[p] = w;
            any[p] = 1;
        }
    });
    for (std::size_t p = 0; p < n; ++p) {
        if (!any[p]) continue;
        if (!report.worst_pair || per_row[p].gap > report.worst_pair->gap) {
            report.worst_pair = per_row[p];
        }
    }
    if (report.worst_pair) {
        report.margin = tol - report.worst_pair->gap;
        report.passed = report.margin >= 0.0;
    }
    return report;
}

// eps-local midpoint property of the data: every row pair closer than eps in
// sup norm admits a row m within tol of half the pair distance from both.
inline CheckReport midpoint_test(const TravelTimeData& data, double eps, double tol) {
    if (data.n_sources == 0) throw parameter_error("midpoint_test: empty data");
    if (!(eps > 0.0)) throw parameter_error("midpoint_test: epsilon must be positive");
    const std::size_t n = data.n_sources;

    CheckReport report;
    report.epsilon = eps;
    report.tol = tol;
    std::vector<WorstPair> per_row(n);
    std::vector<char> any(n, 0);
    parallel_for(n, [&](std::size_t p) {
        WorstPair w;
        for (std::size_t q = p + 1; q < n; ++q) {
            const double sup = sup_distance(data, p, q);
            if (sup >= eps) continue;
            const double half = 0.5 * sup;
            double deficiency = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < n && deficiency > 0.0; ++m) {
                const double a = std::abs(sup_distance(data, m, p) - half);
                const double b = std::abs(sup_distance(data, m, q) - half);
                deficiency = std::min(deficiency, std::max(a, b));
            }
            if (w.p < 0 || deficiency > w.gap) {
                w = {static_cast<int>(p), static_cast<int>(q), deficiency};
            }
        }
        if (w.p >= 0) {
            per_row[p] = w;
            any[p] = 1;
        }
    });
    for (std::size_t p = 0; p < n; ++p) {
        if (!any[p]) continue;
        if (!report.worst_pair || per_row[p].gap > report.worst_pair->gap) {
            report.worst_pair = per_row[p];
        }
    }
    if (report.worst_pair) {
        report.margin = tol - report.worst_pair->gap;
        report.passed = report.margin >= 0.0;
    }
    return report;
}

// Largest eps at which check_blie passes. The verdict can only change at the
// pairwise sup-distances, so the scan is exact at sample level: with no
// violating pair the answer is the diameter, otherwise the smallest
// sup-distance among violating pairs.
inline double max_blie_epsilon(const FiniteMetricSpace& space, const MeasurementSet& S,
                               double tol) {
    const TravelTimeData data = travel_time_data(space, S);
    const std::size_t n = space.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (sup_distance(data, p, q) == 0.0) {
                throw injectivity_error(static_cast<int>(p), static_cast<int>(q),
                                        "duplicate travel time rows for sources " +
                                            space.label(p) + " and " + space.label(q));
            }
        }
    }
    double best = space.diam();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double sup = sup_distance(data, p, q);
            if (space(p, q) - sup > tol) best = std::min(best, sup);
        }
    }
    return best;
}

// Numbers reported by a stability run: data distance h, the two GH estimates
// and the slack of both theorem-backed inequalities.
struct StabilityReport {
    CheckReport blie1;
    CheckReport blie2;
    double h = 0.0;                   // data Hausdorff distance
    GhEstimate gh_truncated;          // estimate for the eps-truncations
    GhEstimate gh;                    // estimate for the untruncated spaces
    double bound_scaled = 0.0;        // (2D/eps + 1) * h
    double slack_truncated = 0.0;     // h - gh_eps lower (or exact)
    double slack_scaled = 0.0;        // bound_scaled - gh lower (or exact)
    bool ok = false;
};

// Checks the two stability inequalities on a pair of sampled spaces with a
// fixed sensor matching. Refuses (with the failing report attached to the
// exception message) unless both spaces pass check_blie at eps.
inline StabilityReport verify_stability(const FiniteMetricSpace& X1, const MeasurementSet& S1,
                                        const FiniteMetricSpace& X2, const MeasurementSet& S2,
                                        const SensorMatching& phi, double eps, double D,
                                        int cap = 5, double blie_tol = 1e-9) {
    if (!(D > 0.0)) throw parameter_error("verify_stability: D must be positive");
    if (X1.diam() > D || X2.diam() > D) {
        throw parameter_error("verify_stability: diameter exceeds the stated bound D");
    }
    StabilityReport rep;
    rep.blie1 = check_blie(X1, S1, eps, blie_tol);
    rep.blie2 = check_blie(X2, S2, eps, blie_tol);
    if (!rep.blie1.passed || !rep.blie2.passed) {
        throw parameter_error("verify_stability: BLIE precondition fails at eps=" +
                              std::to_string(eps));
    }
    const TravelTimeData d1 = travel_time_data(X1, S1);
    const TravelTimeData d2 = travel_time_data(X2, S2);
    rep.h = data_hausdorff(d1, d2, phi);
    rep.gh_truncated = truncated_gh(X1, X2, eps, cap);
    rep.gh = gh_bounds(X1, X2);
    if (static_cast<int>(X1.size()) <= cap && static_cast<int>(X2.size()) <= cap) {
        rep.gh.exact = gh_exact_small(X1, X2, cap);
        rep.gh.lower = std::max(rep.gh.lower, *rep.gh.exact);
        rep.gh.upper = std::min(rep.gh.upper, *rep.gh.exact);
    }
    rep.bound_scaled = (2.0 * D / eps + 1.0) * rep.h;
    const double gh_eps_lower = rep.gh_truncated.exact.value_or(rep.gh_truncated.lower);
    const double gh_lower = rep.gh.exact.value_or(rep.gh.lower);
    rep.slack_truncated = rep.h - gh_eps_lower;
    rep.slack_scaled = rep.bound_scaled - gh_lower;
    rep.ok = rep.slack_truncated >= 0.0 && rep.slack_scaled >= 0.0;
    return rep;
}

}  // namespace ttlab
