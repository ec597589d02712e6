#pragma once

#include <cstdint>

namespace noma {

enum class Method { CLOSED_FORM, QUADRATURE_ORACLE, MONTE_CARLO };

// Carrier for one outage probability, from either route. Monte Carlo fills
// trials/std_err; closed forms leave trials = 0. degenerate marks an MC
// estimate sitting exactly at 0 or 1, where the binomial standard error
// collapses and says nothing about the true rate.
struct OutageEstimate {
    double value = 0.0;
    Method method = Method::CLOSED_FORM;
    double std_err = 0.0;
    std::uint64_t trials = 0;
    bool degenerate = false;
};

} // namespace noma
