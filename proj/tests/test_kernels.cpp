#include <cmath>

#include <doctest.h>

#include "qbraid/kernels.hpp"

using namespace qbraid;

namespace {

// Fresnel integral of the plane waves, done by hand.
cplx omega_psi_closed(double r, double t, const PlanckParam& p) {
    const double c = 1.0 / std::sqrt(2.0 * kPi * p.hbar);
    const double l = std::log(t / r);
    return c * std::polar(1.0, kPi / 4.0 - l * l / (2.0 * p.hbar));
}

}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("closed forms") {
        const PlanckParam p = make_planck(0, 1);
        const double c = 1.0 / std::sqrt(2.0 * kPi * p.hbar);
        CHECK(std::abs(overlap(KernelKind::OmegaPhi, 1.0, 1.0, p) - c) < 1e-15);
        for (double a : {0.3, 1.0, 4.0})
            for (double b : {0.5, 2.0}) {
                CHECK(std::abs(overlap(KernelKind::OmegaPsi, a, b, p) - omega_psi_closed(a, b, p)) < 1e-13);
                for (auto k : {KernelKind::OmegaPhi, KernelKind::PsiPhi, KernelKind::OmegaPsi})
                    CHECK(std::abs(overlap(k, a, b, p)) == doctest::Approx(c));
            }
        CHECK_THROWS_AS(overlap(KernelKind::OmegaPhi, -1.0, 1.0, p), DomainError);
    }

    TEST_CASE("quadrature against the closed form") {
        const PlanckParam p = make_planck(0, 1);
        CHECK(std::abs(overlap_omega_psi_quadrature(1.0, 2.0, p) - omega_psi_closed(1.0, 2.0, p)) < 1e-6);
        CHECK(std::abs(overlap_omega_psi_quadrature(0.5, 0.5, p) - omega_psi_closed(0.5, 0.5, p)) < 1e-6);
    }

    TEST_CASE("pointwise identities") {
        const PlanckParam p = make_planck(0, 1);
        CHECK(identity_omfi_residual(2.0, 0.5, p) < 1e-12);
        CHECK(identity_pom1_residual(1.0, 1.0, 1.0, p) < 1e-12);
        CHECK(identity_pom1_residual(0.4, 2.5, 1.3, p) < 1e-12);
        CHECK(identity_pom20_residual(0.4, 2.5, 1.3, p) < 1e-9);
        auto f = [](double x) { return cplx(std::cos(x), std::sin(2.0 * x)); };
        CHECK(identity_pom2_residual(f, 0.7, 1.1, 2.0, p) < 1e-12);
        CHECK_THROWS_AS(identity_sweep(p, 1), DomainError);
    }

    TEST_CASE("grid operator identity sharpens with resolution") {
        const PlanckParam p = make_planck(0, 1);
        const double coarse = identity_ef_matrix_residual(p, make_grid(128, 24.0), EfVariant::Ef);
        const double fine = identity_ef_matrix_residual(p, make_grid(256, 24.0), EfVariant::Ef);
        CHECK(fine < 1e-6);
        CHECK(fine < 0.5 * coarse);
    }
}
