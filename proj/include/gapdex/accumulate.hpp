#pragma once

#include <cmath>

namespace gapdex {

// Neumaier compensated accumulator. Both the full decomposition and the
// statistic-only fast path sum through this type with identical operation
// order, so the two produce bit-identical results.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    double total() const { return sum + comp; }
};

}  // namespace gapdex
