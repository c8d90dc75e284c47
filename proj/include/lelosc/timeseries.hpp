#pragma once

#include <string>
#include <vector>

namespace lelosc {

/// Uniformly sampled named signal.
struct TimeSeries {
    std::string name;
    std::string unit;
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> samples;

    [[nodiscard]] std::size_t size() const { return samples.size(); }
    [[nodiscard]] double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    [[nodiscard]] double t_end() const {
        return samples.empty() ? t0 : time(samples.size() - 1);
    }
};

} // namespace lelosc
