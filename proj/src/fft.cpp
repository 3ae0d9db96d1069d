#include "radiance/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace radiance {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void run_dft(const std::vector<std::complex<double>>& x, std::vector<std::complex<double>>& out,
             int sign) {
    const auto n = static_cast<int>(x.size());
    out.resize(x.size());
    fftw_plan plan;
    {
        // FFTW planning is not thread-safe; execution is.
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(
            n,
            reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(x.data())),
            reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> out;
    run_dft(x, out, FFTW_FORWARD);
    return out;
}

void fft_forward(const std::vector<std::complex<double>>& x,
                 std::vector<std::complex<double>>& out) {
    run_dft(x, out, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> out;
    run_dft(x, out, FFTW_BACKWARD);
    return out;
}

}  // namespace radiance
