#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfront {

using cplx = std::complex<double>;

/// Uniform periodic grid on [0, length). The point count is a power of two, at least 8.
class TorusGrid {
public:
    explicit TorusGrid(int n_points = 256, double length = 2.0 * std::numbers::pi)
        : n_(n_points), length_(length)
    {
        if (n_points < 8 || (n_points & (n_points - 1)) != 0)
            throw std::invalid_argument("TorusGrid: n_points must be a power of two >= 8, got " +
                                        std::to_string(n_points));
        if (!(length > 0.0) || !std::isfinite(length))
            throw std::invalid_argument("TorusGrid: length must be positive and finite");
    }

    int size() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / n_; }
    double x(int i) const { return i * spacing(); }

    /// Signed integer mode index of FFT slot j (Nyquist slot reported as +n/2).
    int mode(int j) const { return j <= n_ / 2 ? j : j - n_; }
    /// Physical wavenumber 2*pi*mode/length of FFT slot j.
    double wavenumber(int j) const { return 2.0 * std::numbers::pi * mode(j) / length_; }
    bool is_nyquist(int j) const { return j == n_ / 2; }

    bool operator==(const TorusGrid& o) const { return n_ == o.n_ && length_ == o.length_; }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }

private:
    int n_;
    double length_;
};

/// Grid function with value semantics. RealField holds fronts and error fields,
/// ComplexField holds envelopes and corrector profiles.
template <class T>
class Field {
public:
    using value_type = T;

    Field() : grid_(), samples_(grid_.size(), T{}) {}
    explicit Field(const TorusGrid& grid) : grid_(grid), samples_(grid.size(), T{}) {}
    Field(const TorusGrid& grid, std::vector<T> samples) : grid_(grid), samples_(std::move(samples))
    {
        if (static_cast<int>(samples_.size()) != grid_.size())
            throw std::invalid_argument("Field: sample count does not match grid");
    }

    static Field from_function(const TorusGrid& grid, const std::function<T(double)>& f)
    {
        Field out(grid);
        for (int i = 0; i < grid.size(); ++i)
            out.samples_[i] = f(grid.x(i));
        return out;
    }

    const TorusGrid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    const std::vector<T>& samples() const { return samples_; }
    std::vector<T>& samples() { return samples_; }
    T& operator[](int i) { return samples_[i]; }
    const T& operator[](int i) const { return samples_[i]; }

    bool all_finite() const
    {
        for (const T& s : samples_)
            if (!std::isfinite(std::abs(s))) return false;
        return true;
    }

    Field& operator+=(const Field& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
        return *this;
    }
    Field& operator-=(const Field& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
        return *this;
    }
    Field& operator*=(T s)
    {
        for (T& v : samples_) v *= s;
        return *this;
    }

    void check_same(const Field& o) const
    {
        if (grid_ != o.grid_) throw std::invalid_argument("Field: grid mismatch");
    }

private:
    TorusGrid grid_;
    std::vector<T> samples_;
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

template <class T>
Field<T> operator+(Field<T> a, const Field<T>& b) { return a += b; }
template <class T>
Field<T> operator-(Field<T> a, const Field<T>& b) { return a -= b; }
template <class T>
Field<T> operator-(Field<T> a) { return a *= T(-1); }
template <class T>
Field<T> operator*(T s, Field<T> a) { return a *= s; }
template <class T>
Field<T> operator*(Field<T> a, T s) { return a *= s; }
inline ComplexField operator*(double s, ComplexField a) { return a *= cplx(s); }
inline ComplexField operator*(ComplexField a, double s) { return a *= cplx(s); }

inline ComplexField to_complex(const RealField& f)
{
    ComplexField out(f.grid());
    for (int i = 0; i < f.size(); ++i) out[i] = f[i];
    return out;
}

inline RealField real_part(const ComplexField& f)
{
    RealField out(f.grid());
    for (int i = 0; i < f.size(); ++i) out[i] = f[i].real();
    return out;
}

inline RealField imag_part(const ComplexField& f)
{
    RealField out(f.grid());
    for (int i = 0; i < f.size(); ++i) out[i] = f[i].imag();
    return out;
}

inline ComplexField conj(const ComplexField& f)
{
    ComplexField out(f.grid());
    for (int i = 0; i < f.size(); ++i) out[i] = std::conj(f[i]);
    return out;
}

template <class T>
double max_abs(const Field<T>& f)
{
    double m = 0.0;
    for (const T& v : f.samples()) m = std::max(m, std::abs(v));
    return m;
}

} // namespace vfront
