#pragma once

#include <cmath>

namespace cqc {

// Neumaier variant of Kahan summation. Long accumulations of per-packet
// probabilities run to ~10^7 terms; naive summation would contribute error
// on the order of the conservation tolerances we assert against.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

}  // namespace cqc
