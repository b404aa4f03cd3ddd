#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace sevo {

// Process-wide cache of FFTW plans keyed by shape and direction. Plans are
// created unaligned so they can be executed on any std::vector buffer.
class FftCache {
public:
    static FftCache& instance() {
        static FftCache cache;
        return cache;
    }

    // In-place-capable transform of `data` (row-major, dims[0] slowest).
    // sign = FFTW_FORWARD or FFTW_BACKWARD; unnormalized.
    void execute(const std::vector<int>& dims, int sign, const std::complex<double>* in,
                 std::complex<double>* out) {
        fftw_plan plan = get(dims, sign);
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

    FftCache(const FftCache&) = delete;
    FftCache& operator=(const FftCache&) = delete;

private:
    FftCache() = default;
    ~FftCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

    fftw_plan get(const std::vector<int>& dims, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(dims, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::size_t total = 1;
        for (int d : dims) total *= static_cast<std::size_t>(d);
        std::vector<std::complex<double>> a(total), b(total);
        fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                                       reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fft: plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

    std::mutex mu_;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

inline void fft_forward(const std::vector<int>& dims, const std::vector<std::complex<double>>& in,
                        std::vector<std::complex<double>>& out) {
    out.resize(in.size());
    FftCache::instance().execute(dims, FFTW_FORWARD, in.data(), out.data());
}

inline void fft_backward(const std::vector<int>& dims, const std::vector<std::complex<double>>& in,
                         std::vector<std::complex<double>>& out) {
    out.resize(in.size());
    FftCache::instance().execute(dims, FFTW_BACKWARD, in.data(), out.data());
}

} // namespace sevo
