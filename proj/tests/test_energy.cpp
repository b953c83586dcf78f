#include "vfront/energy.hpp"

#include "vfront/asymptotics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace vfront;
using vfront::test::random_field;

namespace {

double binomial(int n, int k)
{
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// int of a pointwise product, evaluated on a 4x grid.
double integral(std::initializer_list<const RealField*> fs)
{
    std::vector<RealField> fine;
    for (const RealField* f : fs) fine.push_back(refine(*f, 4));
    double s = 0.0;
    for (int i = 0; i < fine[0].size(); ++i) {
        double p = 1.0;
        for (const auto& f : fine) p *= f[i];
        s += p;
    }
    return s * fine[0].grid().spacing();
}

// Integration-by-parts form of 2 eps rho int d^{n+1} H[H[V] H[R]] d^n R.
double quadratic_twin(const RealField& R, const RealField& V, double eps, int n, double rho)
{
    const RealField hv = hilbert(V), hr = hilbert(R);
    const RealField dn_hr = dx_n(hr, n);
    const RealField hvx = hilbert(dx(V));
    double t = eps * rho * integral({&hvx, &dn_hr, &dn_hr});
    for (int j = 0; j <= n; ++j) {
        const RealField a = dx_n(hv, n + 1 - j);
        const RealField b = dx_n(hr, j);
        t -= 2.0 * eps * rho * binomial(n + 1, j) * integral({&a, &b, &dn_hr});
    }
    return t;
}

} // namespace

TEST_SUITE("energy_diag") {

TEST_CASE("scaled error field")
{
    const TorusGrid g(64);
    const double eps = 0.1;
    const AsymptoticProfiles pr = build_profiles(project_P(random_field(g, 6, 1)), euler_params(1));
    const RealField eps_v = assemble_V(pr, 0.5, eps);
    CHECK(max_abs(error_field(eps_v, eps_v, eps)) == 0.0);
    const RealField c1 = RealField::from_function(g, [](double x) { return std::cos(x); });
    CHECK(max_abs(error_field(eps_v + (eps * eps) * c1, eps_v, eps) - c1) < 1e-12);
    const RealField p = random_field(g, 8, 2);
    const RealField r1 = error_field(eps_v + p, eps_v, eps);
    const RealField r2 = error_field(eps_v + 2.0 * p, eps_v, eps);
    CHECK(max_abs(r2 - 2.0 * r1) < 1e-12 * max_abs(r2));
    CHECK_THROWS_AS(error_field(eps_v, eps_v, 0.0), std::invalid_argument);
}

TEST_CASE("modified energy special cases")
{
    const TorusGrid g(128);
    const RealField V = random_field(g, 8, 3);
    const EnergyReport zero = modified_energy(RealField(g), V, 0.1, 3, euler_params(1));
    CHECK(zero.E == 0.0);
    CHECK(zero.ratio == 0.0);

    const RealField R = random_field(g, 8, 4);
    const EnergyReport flat = modified_energy(R, V, 0.0, 3, euler_params(1));
    CHECK(flat.E == doctest::Approx(inner(R, R) + inner(dx_n(R, 3), dx_n(R, 3))).epsilon(1e-13));
    CHECK(flat.ratio == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(flat.E == doctest::Approx(flat.E0 + flat.En).epsilon(1e-15));

    CHECK_THROWS_AS(modified_energy(R, V, 0.1, 2, euler_params(1)), std::invalid_argument);
    CHECK_NOTHROW(modified_energy(R, V, 0.1, 2, bh_params(1)));
    CHECK_THROWS_AS(modified_energy(R, V, 0.1, 1, bh_params(1)), std::invalid_argument);
}

TEST_CASE("quadratic correction equals its integration-by-parts twin")
{
    const TorusGrid g(128);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const RealField R = random_field(g, 12, seed);
        const RealField V = random_field(g, 12, seed + 50);
        for (int n : {0, 2, 3}) {
            const double eps = 0.1, rho = 1.3;
            // The eps^2 term is even in eps, so the odd part isolates the quadratic correction.
            const double odd = 0.5 * (energy_component(R, V, eps, n, rho) - energy_component(R, V, -eps, n, rho));
            const double twin = quadratic_twin(R, V, eps, n, rho);
            CHECK(std::abs(odd - twin) < 1e-10 * std::max(1.0, std::abs(twin)));
        }
    }
}

TEST_CASE("energy is equivalent to the squared norm")
{
    const TorusGrid g(128);
    const int n = 3;
    double prev_spread = 1e300;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        double lo = 1e300, hi = 0.0;
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            RealField V = random_field(g, 6, seed);
            RealField R = random_field(g, 6, seed + 100);
            V = (0.5 / sobolev_norm(V, n + 2)) * V;
            R = (0.5 / sobolev_norm(R, 2)) * R;
            const EnergyReport rep = modified_energy(R, V, eps, n, euler_params(1));
            lo = std::min(lo, rep.ratio);
            hi = std::max(hi, rep.ratio);
        }
        CHECK(lo > 0.5);
        CHECK(hi < 2.0);
        const double spread = std::max(hi - 1.0, 1.0 - lo);
        CHECK(spread < prev_spread);
        if (eps == 0.05) CHECK(spread < 10.0 * eps);
        prev_spread = spread;
    }
}

}
