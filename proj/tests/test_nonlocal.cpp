#include "vfront/nonlocal.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace vfront;
using vfront::test::random_field;

namespace {

RealField cosine(const TorusGrid& g, double a, int k = 1)
{
    return RealField::from_function(g, [=](double x) { return a * std::cos(k * x); });
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    }
    return sxy / sxx;
}

RealField shift(const RealField& f, int s)
{
    RealField out(f.grid());
    for (int i = 0; i < f.size(); ++i) out[i] = f[(i + s) % f.size()];
    return out;
}

} // namespace

TEST_SUITE("nonlocal_ops") {

TEST_CASE("cubic term examples")
{
    const TorusGrid g(64);
    CHECK(max_abs(cubic_term(RealField(g))) == 0.0);
    const RealField expect = RealField::from_function(g, [](double x) { return -0.25 * std::sin(x); });
    CHECK(max_abs(cubic_term(cosine(g, 1.0)) - expect) < 1e-13);
    CHECK(max_abs(cubic_term(cosine(g, 0.1)) - 1e-3 * expect) < 1e-16);
}

TEST_CASE("cubic term is homogeneous of degree three with zero mean")
{
    const TorusGrid g(128);
    const RealField f = random_field(g, 20, 9);
    const RealField c = cubic_term(f);
    for (double lam : {-1.0, 2.0, 0.5})
        CHECK(max_abs(cubic_term(lam * f) - (lam * lam * lam) * c) < 1e-12 * max_abs(c) * std::abs(lam * lam * lam));
    CHECK(std::abs(mean(c)) < 1e-12);
}

TEST_CASE("quadrature of the nonlocal term")
{
    const TorusGrid g(128);
    CHECK(max_abs(n_quadrature(RealField(g))) == 0.0);
    CHECK(max_abs(n_quadrature(RealField::from_function(g, [](double) { return 0.4; }))) == 0.0);

    const RealField phi = cosine(g, 0.1);
    const double gap = max_abs(n_quadrature(phi) - cubic_term(phi));
    CHECK(gap < 1.0 * std::pow(0.1, 5));
    CHECK(gap > 1e-3 * std::pow(0.1, 5));

    const RealField f = random_field(g, 12, 2, 0.2);
    const RealField nf = n_quadrature(f);
    CHECK(max_abs(n_quadrature(-1.0 * f) + nf) < 1e-15);
    CHECK(std::abs(mean(nf)) < 1e-12);
    CHECK(max_abs(n_quadrature(shift(f, 5)) - shift(nf, 5)) < 1e-15);
}

TEST_CASE("image sum converges to the closed-form periodization")
{
    const TorusGrid g(128);
    const RealField f = random_field(g, 8, 4, 0.3);
    const RealField exact = n_quadrature(f);
    double prev = 1e300, first = 0.0;
    for (int images : {2, 8, 32}) {
        QuadratureConfig cfg;
        cfg.kernel = KernelSum::image_sum;
        cfg.n_images = images;
        const double err = max_abs(n_quadrature(f, cfg) - exact);
        CHECK(err < prev);
        if (images == 2) first = err;
        prev = err;
    }
    CHECK(prev < 1e-2 * max_abs(exact));
    CHECK(first / prev > 8.0);  // truncation error decays like 1 / n_images
}

TEST_CASE("series evaluator")
{
    const TorusGrid g(128);
    const RealField small = cosine(g, 0.05);
    CHECK(max_abs(n_series(small, 1) - cubic_term(small)) < 1e-6);

    RealField steep = cosine(g, 0.3, 4);  // max |phi_x| = 1.2
    CHECK_THROWS_AS(n_series(steep, 2), std::domain_error);

    // The k-th series term is homogeneous of degree 2k+1.
    std::vector<double> eps{0.2, 0.1, 0.05}, diff;
    for (double e : eps) {
        const RealField phi = cosine(g, e);
        diff.push_back(sobolev_norm(n_series(phi, 3) - n_series(phi, 2), 1));
    }
    CHECK(loglog_slope(eps, diff) == doctest::Approx(7.0).epsilon(0.01));

    const RealField f = random_field(g, 10, 6, 0.2);
    CHECK(std::abs(mean(n_series(f, 3))) < 1e-12);
    CHECK(max_abs(n_series(-1.0 * f, 3) + n_series(f, 3)) < 1e-15);
    CHECK(max_abs(n_series(shift(f, 3), 2) - shift(n_series(f, 2), 3)) < 1e-15);
}

TEST_CASE("series and quadrature agree for small fronts")
{
    const TorusGrid g(128);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        RealField f = random_field(g, 6, seed, 1.0);
        f = (0.3 / sobolev_norm(f, 3)) * f;
        const double gap = l2_norm(n_quadrature(f) - n_series(f, 4));
        CHECK(gap <= std::max(1e-6, 10.0 * std::pow(sobolev_norm(f, 3), 9)));
    }
}

TEST_CASE("quintic remainder scales like the fifth power")
{
    const TorusGrid g(256);
    CHECK(max_abs(quintic_remainder(RealField(g))) == 0.0);
    std::vector<double> eps{0.2, 0.1, 0.05};
    for (auto shape : {0, 1}) {
        std::vector<double> norms;
        for (double e : eps) {
            const RealField phi = RealField::from_function(
                g, [=](double x) { return e * (std::cos(x) + (shape ? 0.5 * std::cos(2.0 * x) : 0.0)); });
            norms.push_back(sobolev_norm(quintic_remainder(phi), 1));
        }
        CHECK(loglog_slope(eps, norms) == doctest::Approx(5.0).epsilon(0.06));
    }
}

TEST_CASE("evaluation counter and config validation")
{
    const TorusGrid g(32);
    const auto before = nonlocal_evaluation_count();
    n_quadrature(cosine(g, 0.1));
    CHECK(nonlocal_evaluation_count() == before + 1);
    QuadratureConfig bad;
    bad.n_images = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}
