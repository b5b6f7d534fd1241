#include <doctest.h>

#include "qbraid/reps.hpp"

using namespace qbraid;

namespace {

Mat diag2(double a, double b) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_SUITE("reps") {
    TEST_CASE("carrier validation") {
        Mat x = Mat::Zero(2, 2);
        x(0, 1) = x(1, 0) = 1.0;
        CHECK_NOTHROW(make_rep_spec(diag2(1, -1), diag2(1, -1)));
        CHECK_THROWS_AS(make_rep_spec(diag2(1, -1), x), DomainError);
        CHECK_THROWS_AS(make_rep_spec(diag2(1, 0), diag2(0, 1)), DomainError);
        CHECK_THROWS_AS(make_rep_spec(Mat::Identity(9, 9), Mat::Identity(9, 9)), DimensionMismatch);
        CHECK_NOTHROW(make_rep_spec_m(diag2(1, -1), x));
        CHECK_THROWS_AS(make_rep_spec_m(diag2(1, -1), diag2(1, 1)), DomainError);
    }

    TEST_CASE("joint basis") {
        const JointBasis b = joint_basis(make_rep_spec(diag2(2, -1), diag2(1, -1)));
        REQUIRE(b.m.size() == 2);
        CHECK(unitarity_residual(b.vectors) < 1e-12);
    }

    TEST_CASE("eigenspace build equals the tensor formula") {
        const PlanckParam p = make_planck(0, 1);
        const Grid g = make_grid(64, 24.0);
        const BlockSystem sys = build_N2_standard(p, g);
        const RepSpec spec = make_rep_spec(diag2(1, -1), diag2(1, -1));
        const Mat built = rep_N_build(p, spec, sys.first());
        const Mat formula = rep_N_formula(p, spec.generator, sys.first());
        CHECK((built - formula).cwiseAbs().maxCoeff() < 1e-9);
        const auto probes = make_probes(g, p, 3, 4, 8);
        CHECK(probe_residual(act(built), rep_N_action(p, spec, sys.first()), probes) < 1e-9);
    }

    TEST_CASE("M representation is the N one on the mapped pair") {
        const PlanckParam p = make_planck(0, 1);
        const Grid g = make_grid(64, 24.0);
        const BlockSystem sys = build_M2_standard(p, g);
        Mat gamma = Mat::Zero(2, 2);
        gamma(0, 1) = gamma(1, 0) = 1.0;
        const RepSpecM spec = make_rep_spec_m(diag2(1, -1), gamma);
        RVec one(1);
        one << 1.0;
        const NPair unit{HermitianSpectral::diagonal(one), Mat::Identity(1, 1)};
        const Mat lhs = rep_M_build(p, spec, sys.first_m());
        const Mat rhs = rep_N_formula(p, unit, map_M_to_N_tensor(spec.generator, sys.first_m()));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("V1 V2 decomposition") {
        const PlanckParam p = make_planck(0, 1);
        RVec d(2);
        d << 1.0, -1.0;
        const NPair carrier{HermitianSpectral::diagonal(d), diag2(1, -1)};
        const Mat vp = rep_scalar(p, carrier, -0.7, 1);
        const Mat vm = rep_scalar(p, carrier, -0.7, -1);
        const V1V2 parts = decompose_V1_V2(vp, vm);
        CHECK((reconstruct(parts, 1) - vp).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((reconstruct(parts, -1) - vm).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(commutation_suite(p, carrier, default_magnitudes()).passed());
    }

    TEST_CASE("one-dimensional classification") {
        const PlanckParam p = make_planck(0, 1);
        const auto mags = default_magnitudes();
        CHECK(mags.size() == 9);

        const Dim1Result pos = dim1_classify(p, sample_family(p, 1.7, 1, mags));
        CHECK(pos.kind == Dim1Case::PositiveM);
        CHECK(pos.m == doctest::Approx(1.7).epsilon(1e-6));
        CHECK(pos.mu == 1);

        const Dim1Result neg = dim1_classify(p, sample_family(p, -0.6, -1, mags));
        CHECK(neg.kind == Dim1Case::NegativeM);
        CHECK(neg.m == doctest::Approx(-0.6).epsilon(1e-6));
        CHECK(neg.mu == -1);

        CHECK(dim1_classify(p, sample_family(p, 0.0, 1, mags)).kind == Dim1Case::Trivial);
        CHECK(dim1_classify(p, sample_v1_only(p, 1.0, mags)).kind == Dim1Case::Reject);
        CHECK(std::string(to_string(Dim1Case::Reject)) == "reject");
    }

    TEST_CASE("a candidate off the family fails the fit") {
        const PlanckParam p = make_planck(0, 1);
        Dim1Samples s = sample_family(p, 1.0, 1, default_magnitudes());
        for (size_t i = 0; i < s.r.size(); ++i) {
            const cplx twist = std::polar(1.0, 0.3 * s.r[i] * s.r[i]);
            s.plus[i] *= twist;
            s.minus[i] *= twist;
        }
        CHECK_THROWS_AS(dim1_classify(p, s), FitFailure);
    }
}
