#include <doctest.h>

#include "qbraid/braidops.hpp"

using namespace qbraid;

TEST_SUITE("braidops") {
    TEST_CASE("fh of a scalar pair matches fh_scalar") {
        const PlanckParam p = make_planck(0, 1);
        RVec d(4);
        d << -2.0, -0.5, 0.0, 1.5;
        const HermitianSpectral a = HermitianSpectral::diagonal(d);
        Mat nu = Mat::Zero(4, 4);
        nu(0, 0) = 1.0;
        nu(1, 1) = -1.0;
        const Mat f = fh_of_pair(p, a, nu);
        CHECK(std::abs(f(0, 0) - fh_scalar(p, {-2.0, 1})) < 1e-10);
        CHECK(std::abs(f(1, 1) - fh_scalar(p, {-0.5, -1})) < 1e-10);
        CHECK(std::abs(f(2, 2) - 1.0) < 1e-14);
        CHECK(std::abs(f(3, 3) - fh_scalar(p, {1.5, 0})) < 1e-10);
        CHECK(unitarity_residual(f) < 1e-9);
        CHECK_THROWS_AS(fh_of_pair(p, a, Mat::Identity(3, 3)), DimensionMismatch);
    }

    TEST_CASE("closed block form against joint calculus") {
        for (int k : {0, 1}) {
            const PlanckParam p = make_planck(k, 1);
            const BlockSystem sys = build_N2_standard(p, make_grid(64, 24.0));
            const Mat closed = fh_block(sys);
            const Mat generic = fh_of_pair(p, sys.T, sys.reflection);
            CHECK((closed - generic).cwiseAbs().maxCoeff() < 1e-8);
            CHECK(unitarity_residual(closed) < 1e-8);
        }
    }

    TEST_CASE("composite of the standard pair") {
        const PlanckParam p = make_planck(0, 1);
        const Grid g = make_grid(64, 24.0);
        const BlockSystem sys = build_N2_standard(p, g);
        const ExtensionData e = op_N(sys);
        const auto probes = make_probes(g, p, 4, 9, 4);
        CHECK(e.unitarity < 1e-8);
        CHECK(validate_N(e.result(), probes, 1e-6).passed());
        CHECK(homomorphism_residual_N_to_A(sys) < 1e-10);
    }

    TEST_CASE("M composite needs an M system") {
        const PlanckParam p = make_planck(0, 1);
        const BlockSystem sys = build_N2_standard(p, make_grid(64, 24.0));
        CHECK_THROWS_AS(op_M(sys), DomainError);
        const BlockSystem m = build_M2_standard(p, make_grid(64, 24.0));
        CHECK(op_M(m).unitarity < 1e-8);
    }
}
