#include <cmath>

#include <doctest.h>

#include "qbraid/specfun.hpp"

using namespace qbraid;

namespace {

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Trapezoid rule, h = 0.01 on [-80, 30], for exp(-i/(2pi) int softplus(-theta u) logistic(x + u) du).
cplx trapezoid_v(const PlanckParam& p, double x) {
    const double h = 0.01;
    const int m = static_cast<int>(std::lround(110.0 / h));
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double u = -80.0 + i * h;
        const double w = (i == 0 || i == m) ? 0.5 : 1.0;
        acc += w * softplus(-p.theta * u) * logistic(x + u);
    }
    return std::exp(cplx(0.0, -acc * h / (2.0 * kPi)));
}

}  // namespace

TEST_SUITE("specfun") {
    TEST_CASE("planck parameters") {
        const PlanckParam p = make_planck(0, 1);
        CHECK(p.hbar == doctest::Approx(kPi / 3.0));
        CHECK(p.theta == doctest::Approx(6.0));
        CHECK(p.parity() == 1);
        CHECK(make_planck(1, 1).parity() == -1);
        const double phase = kPi / 4.0 + p.hbar / 24.0 + kPi * kPi / (6.0 * p.hbar);
        CHECK(std::abs(p.c_prime - std::polar(1.0, phase)) < 1e-15);
        CHECK_THROWS_AS(make_planck(-1, 1), DomainError);
        CHECK_THROWS_AS(make_planck(0, 2), DomainError);
    }

    TEST_CASE("V matches a trapezoid oracle") {
        const PlanckParam p = make_planck(0, 1);
        for (double x : {-3.0, 0.0, 2.0}) CHECK(std::abs(vtheta(p, x) - trapezoid_v(p, x)) < 1e-8);
        const PlanckParam q = make_planck(2, 1);
        CHECK(std::abs(vtheta(q, 1.5) - trapezoid_v(q, 1.5)) < 1e-8);
    }

    TEST_CASE("unit modulus on the real line") {
        const PlanckParam p = make_planck(0, 1);
        for (int i = 0; i < 50; ++i) CHECK(std::abs(std::abs(vtheta(p, -10.0 + 20.0 * i / 49.0)) - 1.0) < 1e-9);
    }

    TEST_CASE("lower edge: principal value against extrapolation") {
        const PlanckParam p = make_planck(0, 1);
        for (double y : {-2.0, 0.0, 1.0}) {
            const LowerEdge e = vtheta_lower_edge_both(p, y);
            CHECK(e.discrepancy < 1e-10);
            CHECK(std::abs(e.pv) == doctest::Approx(std::exp(-0.5 * softplus(p.theta * y))).epsilon(1e-12));
        }
    }

    TEST_CASE("dressed lower edge") {
        const PlanckParam p = make_planck(1, 1);
        for (double y : {-1.0, 0.3, 2.0}) {
            const cplx d = vtheta_lower_edge_dressed(p, y);
            CHECK(std::abs(d - std::exp(0.5 * p.theta * y) * vtheta_lower_edge_pv(p, y)) < 1e-12);
        }
    }

    TEST_CASE("reflection identities") {
        for (int k : {0, 1, 3}) {
            const PlanckParam p = make_planck(k, 1);
            for (double t : {0.05, 0.7, 1.0, 3.0, 20.0}) {
                CHECK(reflection_residual(p, t) < 1e-7);
                CHECK(lower_reflection_residual(p, t) < 1e-6);
            }
        }
    }

    TEST_CASE("reflection pins theta") {
        const PlanckParam p = with_theta(make_planck(0, 1), 6.0 * 1.01);
        CHECK(reflection_residual(p, 3.0) > 1e-3);
    }

    TEST_CASE("F on Delta_real") {
        const PlanckParam p = make_planck(0, 1);
        for (int rho : {-1, 0, 1}) CHECK(fh_scalar(p, {0.0, rho}) == cplx(1.0, 0.0));
        for (double r : {0.1, 1.0, 5.0}) {
            CHECK(std::abs(std::abs(fh_scalar(p, {r, 0})) - 1.0) < 1e-9);
            for (int rho : {-1, 1}) CHECK(std::abs(std::abs(fh_scalar(p, {-r, rho})) - 1.0) < 1e-9);
        }
        CHECK(std::abs(fh_scalar(p, {5e-5, 0}) - 1.0) < 1e-3);
        CHECK(std::abs(fh_scalar(p, {-5e-5, 1}) - 1.0) < 1e-3);
    }

    TEST_CASE("F pieces reassemble fh_scalar") {
        const PlanckParam p = make_planck(0, 1);
        for (double r : {-3.0, -0.2}) {
            const FhPieces f = fh_pieces(p, r);
            for (int rho : {-1, 1}) CHECK(std::abs(f.even + cplx(0.0, rho) * f.odd - fh_scalar(p, {r, rho})) < 1e-10);
        }
        const FhPieces pos = fh_pieces(p, 2.0);
        CHECK(pos.odd == cplx(0.0, 0.0));
    }

    TEST_CASE("domain errors") {
        const PlanckParam p = make_planck(0, 1);
        CHECK_THROWS_AS(fh_scalar(p, {1.0, 1}), DomainError);
        CHECK_THROWS_AS(fh_scalar(p, {-1.0, 0}), DomainError);
        CHECK_THROWS_AS(fh_scalar(p, {-1.0, 2}), DomainError);
        CHECK_THROWS_AS(vtheta(make_planck(0, -1), 0.0), DomainError);
        CHECK_THROWS_AS(reflection_residual(p, -1.0), DomainError);
    }
}
