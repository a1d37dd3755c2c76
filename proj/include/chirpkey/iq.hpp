#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace chirpkey {

using cplx = std::complex<double>;

/// Complex baseband samples plus the rate they were taken at. This is the
/// currency every stage of the pipeline trades in.
struct IqBuffer {
    std::vector<cplx> samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double duration_s() const {
        return sample_rate_hz > 0.0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
    }
};

} // namespace chirpkey
