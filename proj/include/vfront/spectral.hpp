#pragma once

#include "vfront/grid.hpp"

#include <initializer_list>
#include <type_traits>
#include <vector>

// Fourier-multiplier calculus on the periodic grid.
//
// Spectra are stored as normalized coefficients c_j in FFT slot order, so that
// f(x_i) = sum_j c_j exp(i k_j x_i). The Hilbert transform uses the symbol
// -i sgn(k) with sgn(0) = 0; the Nyquist slot is treated as k = 0 by every odd
// symbol so that real fields stay real.

namespace vfront {

using Spectrum = std::vector<cplx>;

Spectrum forward(const ComplexField& f);
Spectrum forward(const RealField& f);
ComplexField inverse_complex(const TorusGrid& grid, const Spectrum& c);
/// Real part of the inverse transform. Callers guarantee a Hermitian spectrum.
RealField inverse_real(const TorusGrid& grid, const Spectrum& c);

/// Multiply the spectrum of `f` by symbol(j), j the FFT slot.
template <class T, class Symbol>
Field<T> apply_symbol(const Field<T>& f, Symbol&& symbol)
{
    Spectrum c = forward(f);
    for (int j = 0; j < f.size(); ++j) c[j] *= symbol(j);
    if constexpr (std::is_same_v<T, double>)
        return inverse_real(f.grid(), c);
    else
        return inverse_complex(f.grid(), c);
}

RealField hilbert(const RealField& f);
ComplexField hilbert(const ComplexField& f);
RealField abs_dx(const RealField& f);
ComplexField abs_dx(const ComplexField& f);
RealField dx(const RealField& f);
ComplexField dx(const ComplexField& f);
/// n-th spectral derivative (symbol (ik)^n, Nyquist kept only for even n).
RealField dx_n(const RealField& f, int n);

/// exp(tH): each mode multiplied by exp(-i t sgn k). Equals cos(t) f + sin(t) H[f]
/// on mean-zero fields and leaves the mean untouched.
RealField exp_hilbert(const RealField& f, double t);
ComplexField exp_hilbert(const ComplexField& f, double t);

/// P = (I + iH)/2 and Q = (I - iH)/2; the mean is split equally between them.
ComplexField project_P(const RealField& f);
ComplexField project_Q(const RealField& f);
ComplexField project_P(const ComplexField& f);
ComplexField project_Q(const ComplexField& f);

/// Plain pointwise product (no dealiasing).
template <class T>
Field<T> multiply(const Field<T>& a, const Field<T>& b)
{
    a.check_same(b);
    Field<T> out(a.grid());
    for (int i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

/// Band-limited interpolation onto a grid `factor` times finer.
RealField refine(const RealField& f, int factor);
ComplexField refine(const ComplexField& f, int factor);
/// Spectral truncation onto a coarser grid of the same length.
RealField coarsen(const RealField& f, const TorusGrid& coarse);
ComplexField coarsen(const ComplexField& f, const TorusGrid& coarse);

/// Pointwise product of 2 or 3 fields evaluated on a 2x zero-padded grid and
/// truncated back, with the Nyquist mode of the result set to zero. Exact for
/// cubic products of inputs on the same grid.
RealField dealias_product(std::initializer_list<const RealField*> factors);
ComplexField dealias_product(std::initializer_list<const ComplexField*> factors);

inline RealField product(const RealField& a, const RealField& b) { return dealias_product({&a, &b}); }
inline RealField product(const RealField& a, const RealField& b, const RealField& c)
{
    return dealias_product({&a, &b, &c});
}
inline ComplexField product(const ComplexField& a, const ComplexField& b) { return dealias_product({&a, &b}); }
inline ComplexField product(const ComplexField& a, const ComplexField& b, const ComplexField& c)
{
    return dealias_product({&a, &b, &c});
}

double mean(const RealField& f);
cplx mean(const ComplexField& f);
/// Trapezoid inner product, exact (discrete Parseval) for grid functions.
double inner(const RealField& f, const RealField& g);
double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);

/// sqrt(int f^2 + int (d^n f)^2). For n = 0 both terms coincide, giving sqrt(2 int f^2).
/// Throws std::invalid_argument when n > n_points/4.
double sobolev_norm(const RealField& f, int n);
/// int (d^n f)^2 computed by Parseval.
double derivative_energy(const RealField& f, int n);

/// Largest |coefficient| over slots with strictly negative mode (analytic-signal check).
double negative_mode_content(const ComplexField& f);
/// Largest |coefficient| over slots with strictly positive mode.
double positive_mode_content(const ComplexField& f);
/// Highest |mode| whose coefficient exceeds tol (0 for a constant field).
int band_limit(const RealField& f, double tol = 1e-13);

/// Evaluate the trigonometric interpolant of f at an arbitrary point.
double interpolate(const RealField& f, double x);

} // namespace vfront
