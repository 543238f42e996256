#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <utility>

#include "primecycles/exact_enum.h"

namespace primecycles {
namespace {

// Below this block length the quadratic update beats an FFT.
constexpr std::size_t kLeafSize = 64;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

// Plans and scratch for one transform length; reused across blocks.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size)
      : size_(size),
        real_(fftw_alloc_real(size)),
        spectrum_(fftw_alloc_complex(size / 2 + 1)) {
    const int n = static_cast<int>(size);
    forward_ = fftw_plan_dft_r2c_1d(n, real_.get(), spectrum_.get(), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(n, spectrum_.get(), real_.get(), FFTW_ESTIMATE);
  }
  ~FftPlan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  // Spectrum of `input` zero-padded to size().
  std::vector<std::complex<double>> forward(std::span<const double> input) {
    std::fill_n(real_.get(), size_, 0.0);
    std::copy(input.begin(), input.end(), real_.get());
    fftw_execute(forward_);
    std::vector<std::complex<double>> out(bins());
    for (std::size_t i = 0; i < bins(); ++i) {
      out[i] = {spectrum_.get()[i][0], spectrum_.get()[i][1]};
    }
    return out;
  }

  // Inverse of the pointwise product, normalized; returns the real buffer.
  const double* multiply_inverse(const std::vector<std::complex<double>>& x,
                                 const std::vector<std::complex<double>>& y) {
    for (std::size_t i = 0; i < bins(); ++i) {
      const std::complex<double> z = x[i] * y[i];
      spectrum_.get()[i][0] = z.real();
      spectrum_.get()[i][1] = z.imag();
    }
    fftw_execute(backward_);
    const double scale = 1.0 / static_cast<double>(size_);
    for (std::size_t i = 0; i < size_; ++i) real_.get()[i] *= scale;
    return real_.get();
  }

 private:
  std::size_t size_;
  std::unique_ptr<double, FftwFree> real_;
  std::unique_ptr<fftw_complex, FftwFree> spectrum_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

// Divide-and-conquer evaluation of n a_n = sum_k chi_k a_{n-k}: finish the
// left half of a block, push its contribution into the right half with one
// convolution, then recurse on the right half.
class OnlineConvolution {
 public:
  OnlineConvolution(std::span<const std::uint64_t> members, std::size_t n_max)
      : chi_(n_max + 1, 0.0), a_(n_max + 1, 0.0), s_(n_max + 1, 0.0) {
    for (std::uint64_t k : members) {
      if (k <= n_max) chi_[k] = 1.0;
    }
  }

  std::vector<double> run() {
    solve(0, a_.size());
    return std::move(a_);
  }

 private:
  FftPlan& plan(std::size_t size) {
    auto it = plans_.find(size);
    if (it == plans_.end()) it = plans_.emplace(size, std::make_unique<FftPlan>(size)).first;
    return *it->second;
  }

  const std::vector<std::complex<double>>& chi_spectrum(FftPlan& p, std::size_t length) {
    const auto key = std::make_pair(p.size(), length);
    auto it = chi_spectra_.find(key);
    if (it == chi_spectra_.end()) {
      it = chi_spectra_
               .emplace(key, p.forward(std::span<const double>(chi_.data(), length)))
               .first;
    }
    return it->second;
  }

  void solve(std::size_t lo, std::size_t hi) {
    if (hi - lo <= kLeafSize) {
      for (std::size_t n = lo; n < hi; ++n) {
        if (n == 0) {
          a_[0] = 1.0;
          continue;
        }
        double acc = s_[n];
        for (std::size_t j = lo; j < n; ++j) acc += chi_[n - j] * a_[j];
        a_[n] = acc / static_cast<double>(n);
      }
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    solve(lo, mid);

    // s[n] += sum_{j in [lo, mid)} a_j chi_{n-j} for n in [mid, hi).
    const std::size_t left = mid - lo;
    const std::size_t span_len = hi - lo;
    std::size_t size = 1;
    while (size < left + span_len - 1) size <<= 1;
    FftPlan& p = plan(size);
    const auto& chi_hat = chi_spectrum(p, span_len);
    const auto a_hat = p.forward(std::span<const double>(a_.data() + lo, left));
    const double* conv = p.multiply_inverse(a_hat, chi_hat);
    for (std::size_t n = mid; n < hi; ++n) s_[n] += conv[n - lo];

    solve(mid, hi);
  }

  std::vector<double> chi_;
  std::vector<double> a_;
  std::vector<double> s_;
  std::map<std::size_t, std::unique_ptr<FftPlan>> plans_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::complex<double>>> chi_spectra_;
};

}  // namespace

std::vector<double> coefficients_online(std::span<const std::uint64_t> members,
                                        std::size_t n_max) {
  return OnlineConvolution(members, n_max).run();
}

}  // namespace primecycles
