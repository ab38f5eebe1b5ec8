#pragma once

#include <cmath>
#include <span>

namespace logbern {

/// Neumaier-compensated accumulator. All reductions over basis weights go
/// through this; the partition-of-unity tolerance at n ~ 2000 needs it.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
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

inline double compensated_sum(std::span<const double> values) {
    CompensatedSum s;
    for (double v : values)
        s.add(v);
    return s.value();
}

} // namespace logbern
