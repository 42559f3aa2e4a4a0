#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace echolab {

/// Thrown when LU factorization meets a pivot that is zero relative to the
/// matrix scale. Carries the pivot index so callers can name the offending
/// unknown.
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(std::size_t pivot)
        : std::runtime_error("singular system at pivot " + std::to_string(pivot)),
          pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// Dense LU factorization with partial pivoting, row-major storage.
/// MNA systems in this project stay below ~200 unknowns, so a dense solver
/// is the whole story: factor once, back-substitute per right-hand side.
template <typename Scalar>
class DenseLu {
public:
    DenseLu() = default;

    void factor(std::vector<Scalar> a, std::size_t n) {
        a_ = std::move(a);
        n_ = n;
        perm_.resize(n);
        double anorm = 0.0;
        for (const Scalar& v : a_) anorm = std::max(anorm, std::abs(v));
        const double tiny = anorm * 1e-14 + 1e-300;

        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t piv = k;
            double best = std::abs(a_[k * n_ + k]);
            for (std::size_t r = k + 1; r < n_; ++r) {
                double m = std::abs(a_[r * n_ + k]);
                if (m > best) {
                    best = m;
                    piv = r;
                }
            }
            if (!(best > tiny)) throw SingularSystem(k);
            perm_[k] = piv;
            if (piv != k) swap_rows(k, piv);
            const Scalar inv = Scalar(1.0) / a_[k * n_ + k];
            for (std::size_t r = k + 1; r < n_; ++r) {
                Scalar f = a_[r * n_ + k] * inv;
                a_[r * n_ + k] = f;
                if (f == Scalar(0.0)) continue;
                const Scalar* src = &a_[k * n_ + k + 1];
                Scalar* dst = &a_[r * n_ + k + 1];
                for (std::size_t c = k + 1; c < n_; ++c) dst[c - k - 1] -= f * src[c - k - 1];
            }
        }
    }

    /// Solve in place. b.size() must equal n().
    void solve(std::vector<Scalar>& b) const {
        for (std::size_t k = 0; k < n_; ++k) {
            if (perm_[k] != k) std::swap(b[k], b[perm_[k]]);
            const Scalar bk = b[k];
            if (bk == Scalar(0.0)) continue;
            for (std::size_t r = k + 1; r < n_; ++r) b[r] -= a_[r * n_ + k] * bk;
        }
        for (std::size_t k = n_; k-- > 0;) {
            Scalar s = b[k];
            const Scalar* row = &a_[k * n_];
            for (std::size_t c = k + 1; c < n_; ++c) s -= row[c] * b[c];
            b[k] = s / row[k];
        }
    }

    std::size_t n() const noexcept { return n_; }
    bool factored() const noexcept { return n_ > 0; }

private:
    void swap_rows(std::size_t i, std::size_t j) {
        Scalar* ri = &a_[i * n_];
        Scalar* rj = &a_[j * n_];
        for (std::size_t c = 0; c < n_; ++c) std::swap(ri[c], rj[c]);
    }

    std::vector<Scalar> a_;
    std::vector<std::size_t> perm_;
    std::size_t n_ = 0;
};

using DenseLuReal = DenseLu<double>;
using DenseLuComplex = DenseLu<std::complex<double>>;

}  // namespace echolab
