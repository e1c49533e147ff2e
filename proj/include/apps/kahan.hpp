#pragma once

namespace apps {

// Kahan-Babuska (Neumaier) compensated accumulator. The branch keeps the
// larger-magnitude operand as the base so the rounding error of each add is
// captured exactly in `compensation`.
template <typename Value = double>
struct CompensatedSum {
    Value sum{0};
    Value compensation{0};

    void add(Value v) {
        const Value t = sum + v;
        if ((sum >= 0 ? sum : -sum) >= (v >= 0 ? v : -v))
            compensation += (sum - t) + v;
        else
            compensation += (v - t) + sum;
        sum = t;
    }

    Value value() const { return sum + compensation; }
};

}  // namespace apps
