#include "vfront/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace vfront {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
public:
    struct Plans {
        fftw_plan fwd;
        fftw_plan bwd;
    };

    static PlanCache& instance()
    {
        static PlanCache cache;
        return cache;
    }

    Plans get(int n)
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> a(n), b(n);
        auto* in = reinterpret_cast<fftw_complex*>(a.data());
        auto* out = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        Plans p{fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, flags),
                fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags)};
        plans_.emplace(n, p);
        return p;
    }

    ~PlanCache()
    {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
        }
    }

private:
    std::mutex mu_;
    std::map<int, Plans> plans_;
};

void execute(fftw_plan plan, std::vector<cplx>& in, std::vector<cplx>& out)
{
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

Spectrum forward_raw(std::vector<cplx> data)
{
    const int n = static_cast<int>(data.size());
    Spectrum out(n);
    execute(PlanCache::instance().get(n).fwd, data, out);
    const double inv = 1.0 / n;
    for (cplx& c : out) c *= inv;
    return out;
}

std::vector<cplx> inverse_raw(Spectrum c)
{
    const int n = static_cast<int>(c.size());
    std::vector<cplx> out(n);
    execute(PlanCache::instance().get(n).bwd, c, out);
    return out;
}

double sgn(int m) { return m > 0 ? 1.0 : (m < 0 ? -1.0 : 0.0); }

// Odd symbols vanish at the Nyquist slot.
int odd_mode(const TorusGrid& g, int j) { return g.is_nyquist(j) ? 0 : g.mode(j); }

template <class T>
Field<T> hilbert_impl(const Field<T>& f)
{
    const TorusGrid& g = f.grid();
    return apply_symbol(f, [&](int j) { return cplx(0.0, -sgn(odd_mode(g, j))); });
}

template <class T>
Field<T> abs_dx_impl(const Field<T>& f)
{
    const TorusGrid& g = f.grid();
    return apply_symbol(f, [&](int j) { return cplx(std::abs(g.wavenumber(j)), 0.0); });
}

template <class T>
Field<T> dx_impl(const Field<T>& f)
{
    const TorusGrid& g = f.grid();
    const double k0 = 2.0 * std::numbers::pi / g.length();
    return apply_symbol(f, [&](int j) { return cplx(0.0, k0 * odd_mode(g, j)); });
}

template <class T>
Field<T> exp_hilbert_impl(const Field<T>& f, double t)
{
    const TorusGrid& g = f.grid();
    const cplx rot = std::polar(1.0, -t);
    return apply_symbol(f, [&](int j) {
        const int m = odd_mode(g, j);
        return m > 0 ? rot : (m < 0 ? std::conj(rot) : cplx(1.0));
    });
}

// P symbol: 1 on positive modes, 1/2 on the mean and Nyquist, 0 on negative modes.
double p_symbol(const TorusGrid& g, int j)
{
    const int m = odd_mode(g, j);
    return m > 0 ? 1.0 : (m < 0 ? 0.0 : 0.5);
}

Spectrum pad_spectrum(const TorusGrid& g, const Spectrum& c, int big)
{
    const int n = g.size();
    Spectrum padded(big, cplx(0.0));
    for (int j = 0; j < n; ++j) {
        if (g.is_nyquist(j)) {
            padded[n / 2] += 0.5 * c[j];
            padded[big - n / 2] += 0.5 * c[j];
            continue;
        }
        const int m = g.mode(j);
        padded[m >= 0 ? m : big + m] = c[j];
    }
    return padded;
}

Spectrum truncate_spectrum(const TorusGrid& g, const Spectrum& fine, bool keep_nyquist = true)
{
    const int n = g.size();
    const int big = static_cast<int>(fine.size());
    Spectrum out(n, cplx(0.0));
    for (int j = 0; j < n; ++j) {
        if (g.is_nyquist(j)) {
            if (keep_nyquist) out[j] = fine[n / 2] + fine[big - n / 2];
            continue;
        }
        const int m = g.mode(j);
        out[j] = fine[m >= 0 ? m : big + m];
    }
    return out;
}

template <class T>
Field<T> from_spectrum(const TorusGrid& g, const Spectrum& c)
{
    if constexpr (std::is_same_v<T, double>)
        return inverse_real(g, c);
    else
        return inverse_complex(g, c);
}

template <class T>
Field<T> refine_impl(const Field<T>& f, int factor)
{
    if (factor < 1 || (factor & (factor - 1)) != 0) throw std::invalid_argument("refine: factor must be a power of two");
    const TorusGrid& g = f.grid();
    const TorusGrid fine(g.size() * factor, g.length());
    return from_spectrum<T>(fine, pad_spectrum(g, forward(f), fine.size()));
}

template <class T>
Field<T> coarsen_impl(const Field<T>& f, const TorusGrid& coarse)
{
    if (f.grid().length() != coarse.length() || f.size() < coarse.size())
        throw std::invalid_argument("coarsen: target grid is not coarser");
    return from_spectrum<T>(coarse, truncate_spectrum(coarse, forward(f)));
}

template <class T>
Field<T> dealias_impl(std::initializer_list<const Field<T>*> factors)
{
    if (factors.size() < 2 || factors.size() > 3)
        throw std::invalid_argument("dealias_product: expects 2 or 3 factors");
    const TorusGrid& g = (*factors.begin())->grid();
    for (const Field<T>* f : factors)
        if (f->grid() != g) throw std::invalid_argument("dealias_product: grid mismatch");

    const int big = 2 * g.size();
    std::vector<cplx> acc(big, cplx(1.0));
    for (const Field<T>* f : factors) {
        std::vector<cplx> values = inverse_raw(pad_spectrum(g, forward(*f), big));
        for (int i = 0; i < big; ++i) acc[i] *= values[i];
    }
    // The +-n/2 pair of a product cannot be held by one real Nyquist mode; it is dropped.
    return from_spectrum<T>(g, truncate_spectrum(g, forward_raw(std::move(acc)), false));
}

} // namespace

Spectrum forward(const ComplexField& f) { return forward_raw(f.samples()); }

Spectrum forward(const RealField& f)
{
    std::vector<cplx> data(f.samples().begin(), f.samples().end());
    return forward_raw(std::move(data));
}

ComplexField inverse_complex(const TorusGrid& grid, const Spectrum& c)
{
    if (static_cast<int>(c.size()) != grid.size())
        throw std::invalid_argument("inverse_complex: spectrum size mismatch");
    return ComplexField(grid, inverse_raw(c));
}

RealField inverse_real(const TorusGrid& grid, const Spectrum& c)
{
    if (static_cast<int>(c.size()) != grid.size())
        throw std::invalid_argument("inverse_real: spectrum size mismatch");
    std::vector<cplx> v = inverse_raw(c);
    std::vector<double> r(v.size());
    std::transform(v.begin(), v.end(), r.begin(), [](cplx z) { return z.real(); });
    return RealField(grid, std::move(r));
}

RealField hilbert(const RealField& f) { return hilbert_impl(f); }
ComplexField hilbert(const ComplexField& f) { return hilbert_impl(f); }
RealField abs_dx(const RealField& f) { return abs_dx_impl(f); }
ComplexField abs_dx(const ComplexField& f) { return abs_dx_impl(f); }
RealField dx(const RealField& f) { return dx_impl(f); }
ComplexField dx(const ComplexField& f) { return dx_impl(f); }

RealField dx_n(const RealField& f, int n)
{
    if (n < 0) throw std::invalid_argument("dx_n: negative order");
    const TorusGrid& g = f.grid();
    return apply_symbol(f, [&](int j) {
        if (n % 2 == 1 && g.is_nyquist(j)) return cplx(0.0);
        return std::pow(cplx(0.0, g.wavenumber(j)), n);
    });
}

RealField exp_hilbert(const RealField& f, double t) { return exp_hilbert_impl(f, t); }
ComplexField exp_hilbert(const ComplexField& f, double t) { return exp_hilbert_impl(f, t); }

ComplexField project_P(const ComplexField& f)
{
    const TorusGrid& g = f.grid();
    return apply_symbol(f, [&](int j) { return cplx(p_symbol(g, j)); });
}

ComplexField project_Q(const ComplexField& f)
{
    const TorusGrid& g = f.grid();
    return apply_symbol(f, [&](int j) { return cplx(1.0 - p_symbol(g, j)); });
}

ComplexField project_P(const RealField& f) { return project_P(to_complex(f)); }
ComplexField project_Q(const RealField& f) { return project_Q(to_complex(f)); }

RealField refine(const RealField& f, int factor) { return refine_impl(f, factor); }
ComplexField refine(const ComplexField& f, int factor) { return refine_impl(f, factor); }
RealField coarsen(const RealField& f, const TorusGrid& coarse) { return coarsen_impl(f, coarse); }
ComplexField coarsen(const ComplexField& f, const TorusGrid& coarse) { return coarsen_impl(f, coarse); }

RealField dealias_product(std::initializer_list<const RealField*> factors) { return dealias_impl(factors); }
ComplexField dealias_product(std::initializer_list<const ComplexField*> factors)
{
    return dealias_impl(factors);
}

double mean(const RealField& f)
{
    double s = 0.0;
    for (double v : f.samples()) s += v;
    return s / f.size();
}

cplx mean(const ComplexField& f)
{
    cplx s = 0.0;
    for (cplx v : f.samples()) s += v;
    return s / static_cast<double>(f.size());
}

double inner(const RealField& f, const RealField& g)
{
    f.check_same(g);
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.grid().spacing();
}

double l2_norm(const RealField& f) { return std::sqrt(inner(f, f)); }

double l2_norm(const ComplexField& f)
{
    double s = 0.0;
    for (cplx v : f.samples()) s += std::norm(v);
    return std::sqrt(s * f.grid().spacing());
}

double derivative_energy(const RealField& f, int n)
{
    const TorusGrid& g = f.grid();
    const Spectrum c = forward(f);
    double s = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double k = std::abs(g.wavenumber(j));
        s += std::pow(k, 2 * n) * std::norm(c[j]);
    }
    return s * g.length();
}

double sobolev_norm(const RealField& f, int n)
{
    if (n < 0 || n > f.size() / 4)
        throw std::invalid_argument("sobolev_norm: order " + std::to_string(n) + " too large for grid of " +
                                    std::to_string(f.size()) + " points");
    return std::sqrt(derivative_energy(f, 0) + derivative_energy(f, n));
}

double negative_mode_content(const ComplexField& f)
{
    const Spectrum c = forward(f);
    double m = 0.0;
    for (int j = 0; j < f.size(); ++j)
        if (!f.grid().is_nyquist(j) && f.grid().mode(j) < 0) m = std::max(m, std::abs(c[j]));
    return m;
}

double positive_mode_content(const ComplexField& f)
{
    const Spectrum c = forward(f);
    double m = 0.0;
    for (int j = 0; j < f.size(); ++j)
        if (!f.grid().is_nyquist(j) && f.grid().mode(j) > 0) m = std::max(m, std::abs(c[j]));
    return m;
}

int band_limit(const RealField& f, double tol)
{
    const Spectrum c = forward(f);
    int band = 0;
    for (int j = 0; j < f.size(); ++j)
        if (std::abs(c[j]) > tol) band = std::max(band, std::abs(f.grid().mode(j)));
    return band;
}

double interpolate(const RealField& f, double x)
{
    const TorusGrid& g = f.grid();
    const Spectrum c = forward(f);
    double s = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double k = g.wavenumber(j);
        if (g.is_nyquist(j))
            s += (c[j] * std::cos(k * x)).real();
        else
            s += (c[j] * std::polar(1.0, k * x)).real();
    }
    return s;
}

} // namespace vfront
