#pragma once

#include <vector>

#include "chirpkey/iq.hpp"

namespace chirpkey {

/// Out-of-place complex DFT of arbitrary length (FFTW backend, plans cached
/// per size with FFTW_ESTIMATE so results are reproducible run to run).
std::vector<cplx> fft(const std::vector<cplx>& in);
std::vector<cplx> ifft(const std::vector<cplx>& in);

} // namespace chirpkey
