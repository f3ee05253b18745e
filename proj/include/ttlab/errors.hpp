#pragma once

#include <stdexcept>
#include <string>

namespace ttlab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Metric matrix failed an axiom; message names the offending entry or triple.
struct validation_error : error {
    using error::error;
};

struct parameter_error : error {
    using error::error;
};

// A correspondence leaves some point of X or Y unmatched.
struct coverage_error : error {
    using error::error;
};

// Exact GH requested for spaces larger than the enumeration cap.
struct size_error : error {
    using error::error;
};

// Two sources share a travel time row, so the data does not embed the space.
struct injectivity_error : error {
    injectivity_error(int p_, int q_, const std::string& msg) : error(msg), p(p_), q(q_) {}
    int p;
    int q;
};

struct profile_error : error {
    using error::error;
};

struct quadrature_error : error {
    quadrature_error(const std::string& msg, double estimate_) : error(msg), estimate(estimate_) {}
    double estimate;
};

// Generator spec is structurally invalid (cycle, disconnection, non-convexity, ...).
struct spec_error : error {
    using error::error;
};

}  // namespace ttlab
