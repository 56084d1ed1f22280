#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "parityq/common.hpp"

namespace parityq {

// Dense statevector on up to 14 qubits; exists purely as a cross-validation
// oracle for the analytic samplers. Qubit q is bit q of the basis index.
class StateVector {
  public:
    static constexpr std::size_t kMaxQubits = 14;

    explicit StateVector(std::size_t n) : n_(n) {
        if (n > kMaxQubits) throw CapacityError("StateVector: too many qubits");
        amp_.assign(std::size_t(1) << n, {0.0, 0.0});
        amp_[0] = 1.0;
    }

    std::size_t qubits() const { return n_; }

    // (|0...0> + |1...1>)/sqrt(2), assigned directly as an amplitude vector.
    void set_cat() {
        std::fill(amp_.begin(), amp_.end(), std::complex<double>{0.0, 0.0});
        double r = 1.0 / std::sqrt(2.0);
        amp_.front() = r;
        amp_.back() = r;
    }

    void h(std::size_t q) {
        std::size_t bit = std::size_t(1) << q;
        double r = 1.0 / std::sqrt(2.0);
        for (std::size_t s = 0; s < amp_.size(); ++s) {
            if (s & bit) continue;
            auto a0 = amp_[s], a1 = amp_[s | bit];
            amp_[s] = (a0 + a1) * r;
            amp_[s | bit] = (a0 - a1) * r;
        }
    }

    // |1> on qubit q picks up the phase w.
    void phase(std::size_t q, std::complex<double> w) {
        std::size_t bit = std::size_t(1) << q;
        for (std::size_t s = 0; s < amp_.size(); ++s)
            if (s & bit) amp_[s] *= w;
    }

    void cnot(std::size_t control, std::size_t target) {
        std::size_t cb = std::size_t(1) << control, tb = std::size_t(1) << target;
        for (std::size_t s = 0; s < amp_.size(); ++s)
            if ((s & cb) && !(s & tb)) std::swap(amp_[s], amp_[s | tb]);
    }

    double norm_sq() const {
        double s = 0;
        for (const auto& a : amp_) s += std::norm(a);
        return s;
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(amp_.size());
        for (std::size_t s = 0; s < amp_.size(); ++s) p[s] = std::norm(amp_[s]);
        return p;
    }

    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

  private:
    std::size_t n_;
    std::vector<std::complex<double>> amp_;
};

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw ShapeError("total_variation: size mismatch");
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s / 2;
}

} // namespace parityq
