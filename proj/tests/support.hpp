#pragma once

#include "vfront/grid.hpp"
#include "vfront/spectral.hpp"

#include <cstdint>
#include <random>

namespace vfront::test {

/// Mean-zero real field with modes 1..band, coefficients decaying like 1/k, unit max.
inline RealField random_field(const TorusGrid& g, int band, std::uint64_t seed, double amplitude = 1.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Spectrum c(g.size(), cplx(0.0));
    for (int k = 1; k <= band; ++k) {
        const cplx a(u(rng) / k, u(rng) / k);
        c[k] = a;
        c[g.size() - k] = std::conj(a);
    }
    RealField f = inverse_real(g, c);
    return (amplitude / max_abs(f)) * f;
}

/// Analytic envelope (positive modes 1..band), coefficients decaying like 1/k^2, unit max.
inline ComplexField random_envelope(const TorusGrid& g, int band, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Spectrum c(g.size(), cplx(0.0));
    for (int k = 1; k <= band; ++k) c[k] = cplx(u(rng), u(rng)) / double(k * k);
    ComplexField f = inverse_complex(g, c);
    return cplx(1.0 / max_abs(f)) * f;
}

} // namespace vfront::test
