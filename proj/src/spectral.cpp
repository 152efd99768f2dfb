#include "hoferlike/spectral.hpp"

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>

namespace hoferlike {

namespace {

// One cached forward/backward plan pair per resolution. FFTW plan creation is
// not thread safe, so the cache is guarded; execution on private buffers is.
class FftWorkspace {
public:
    explicit FftWorkspace(int n) : n_(n) {
        buf_ = static_cast<fftw_complex*>(
            fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n) * n));
        forward_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~FftWorkspace() {
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
        fftw_free(buf_);
    }

    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;

    std::complex<double>* data() {
        return reinterpret_cast<std::complex<double>*>(buf_);
    }
    void forward() { fftw_execute(forward_); }
    void backward() { fftw_execute(backward_); }
    int n() const { return n_; }

private:
    int n_;
    fftw_complex* buf_;
    fftw_plan forward_;
    fftw_plan backward_;
};

// Single lock serialising all spectral work: plan creation is not thread
// safe and the per-N buffers are shared.
std::mutex spectral_mutex;

FftWorkspace& workspace_for(int n) {
    static std::map<int, FftWorkspace*> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, new FftWorkspace(n)).first;
    return *it->second;
}

// Signed wavenumber for bin k; the Nyquist bin maps to 0 so odd-order
// kernels stay real-to-real.
inline int signed_mode(int k, int n) {
    if (2 * k == n) return 0;
    return k <= n / 2 ? k : k - n;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

static ScalarField spectral_derivative(const ScalarField& f, bool along_x) {
    const int n = f.grid.n();
    std::lock_guard<std::mutex> lock(spectral_mutex);
    FftWorkspace& ws = workspace_for(n);

    std::complex<double>* z = ws.data();
    for (int k = 0; k < n * n; ++k) z[k] = f.values[k];
    ws.forward();
    const double scale = 1.0 / (n * n);
    for (int ky = 0; ky < n; ++ky) {
        const int my = signed_mode(ky, n);
        for (int kx = 0; kx < n; ++kx) {
            const int mx = signed_mode(kx, n);
            const double m = along_x ? mx : my;
            z[ky * n + kx] *= std::complex<double>(0.0, kTwoPi * m * scale);
        }
    }
    ws.backward();
    ScalarField out(f.grid);
    for (int k = 0; k < n * n; ++k) out.values[k] = z[k].real();
    return out;
}

ScalarField spectral_derivative_x(const ScalarField& f) {
    return spectral_derivative(f, true);
}

ScalarField spectral_derivative_y(const ScalarField& f) {
    return spectral_derivative(f, false);
}

ScalarField spectral_gradient_potential(const OneFormField& alpha) {
    const int n = alpha.grid.n();
    std::lock_guard<std::mutex> lock(spectral_mutex);
    FftWorkspace& ws = workspace_for(n);

    std::complex<double>* z = ws.data();
    std::vector<std::complex<double>> ahat(static_cast<size_t>(n) * n);

    for (int k = 0; k < n * n; ++k) z[k] = alpha.a[k];
    ws.forward();
    for (int k = 0; k < n * n; ++k) ahat[k] = z[k];

    for (int k = 0; k < n * n; ++k) z[k] = alpha.b[k];
    ws.forward();

    // Uhat = -i (kx ahat + ky bhat) / (2 pi (kx^2 + ky^2)), zero mean mode.
    const double scale = 1.0 / (n * n);
    for (int ky = 0; ky < n; ++ky) {
        const int my = signed_mode(ky, n);
        for (int kx = 0; kx < n; ++kx) {
            const int mx = signed_mode(kx, n);
            const int idx = ky * n + kx;
            const double denom = static_cast<double>(mx) * mx + static_cast<double>(my) * my;
            if (denom == 0.0) {
                z[idx] = 0.0;
                continue;
            }
            const std::complex<double> num = ahat[idx] * static_cast<double>(mx) +
                                             z[idx] * static_cast<double>(my);
            z[idx] = std::complex<double>(0.0, -1.0) * num * (scale / (kTwoPi * denom));
        }
    }
    ws.backward();
    ScalarField u(alpha.grid);
    for (int k = 0; k < n * n; ++k) u.values[k] = z[k].real();
    u.subtract_mean();
    return u;
}

}  // namespace hoferlike
