#pragma once

#include <cmath>

namespace splab {

// Neumaier-compensated accumulator. Summation order is fixed by the callers
// (ascending p, or ascending partition index), which makes every reported
// sum bit-reproducible across worker counts and block sizes.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace splab
