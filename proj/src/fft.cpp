#include "chirpkey/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace chirpkey {
namespace {

struct Plan {
    fftw_plan plan = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t n = 0;

    Plan(std::size_t size, int sign) : n(size) {
        in = fftw_alloc_complex(size);
        out = fftw_alloc_complex(size);
        plan = fftw_plan_dft_1d(static_cast<int>(size), in, out, sign, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fftw plan creation failed");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        if (plan) fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
};

std::vector<cplx> run(const std::vector<cplx>& in, int sign) {
    if (in.empty()) return {};

    // One cache per direction; executions copy through plan-owned aligned
    // buffers under the lock (FFTW planning is not thread safe).
    static std::mutex mtx;
    static std::unordered_map<std::size_t, std::unique_ptr<Plan>> fwd, inv;

    std::lock_guard<std::mutex> lock(mtx);
    auto& cache = sign == FFTW_FORWARD ? fwd : inv;
    auto it = cache.find(in.size());
    if (it == cache.end())
        it = cache.emplace(in.size(), std::make_unique<Plan>(in.size(), sign)).first;
    Plan& p = *it->second;

    std::memcpy(p.in, in.data(), in.size() * sizeof(cplx));
    fftw_execute(p.plan);
    std::vector<cplx> out(in.size());
    std::memcpy(out.data(), p.out, in.size() * sizeof(cplx));
    return out;
}

} // namespace

std::vector<cplx> fft(const std::vector<cplx>& in) { return run(in, FFTW_FORWARD); }

std::vector<cplx> ifft(const std::vector<cplx>& in) {
    auto out = run(in, FFTW_BACKWARD);
    const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace chirpkey
