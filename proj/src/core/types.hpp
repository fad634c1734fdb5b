#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace su22 {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Scale-free residual of an identity LHS == RHS.
inline double rel_residual(const Mat& lhs, const Mat& rhs) {
    const double scale = std::max({1.0, lhs.norm(), rhs.norm()});
    return (lhs - rhs).norm() / scale;
}

// Deterministic random stream. All randomness in the library derives from a
// campaign seed through fork(), so re-runs are reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(gen_);
    }

    Cplx box(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

    std::uint64_t raw() { return gen_(); }

    // Derived sub-stream, independent of the draw position in this one.
    Rng fork(std::uint64_t tag) const {
        std::uint64_t x = seed_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
        x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27; x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return Rng(x);
    }

  private:
    std::mt19937_64 gen_;
    std::uint64_t seed_;
};

}  // namespace su22
