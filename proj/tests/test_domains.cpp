#include <doctest.h>

#include "qbraid/domains.hpp"

using namespace qbraid;

TEST_SUITE("domains") {
    TEST_CASE("block pattern") {
        const Mat m = block_pattern({{1, 2}, {2, 1}, {3, 3}}, 2, {1.0, 1.0, -1.0});
        CHECK(m.rows() == 8);
        CHECK(m(0, 2) == cplx(1.0));
        CHECK(m(2, 0) == cplx(1.0));
        CHECK(m(4, 4) == cplx(-1.0));
        CHECK(m(6, 6) == cplx(0.0));
        CHECK(hermiticity_residual(m) == 0.0);
    }

    TEST_CASE("single pairs") {
        RVec d(4);
        d << -1.0, -1.0, 0.0, 3.0;
        const HermitianSpectral r = HermitianSpectral::diagonal(d);
        std::vector<Vec> probes = {Vec::Ones(4).normalized(), Vec::LinSpaced(4, 1.0, 4.0).normalized()};

        Mat rho = Mat::Zero(4, 4);
        rho(0, 1) = rho(1, 0) = 1.0;
        rho(3, 3) = -1.0;
        CHECK(validate_N({r, rho}, probes).passed());

        Mat rho_hat = rho;
        rho_hat(3, 3) = 0.0;
        CHECK(validate_A({r, rho_hat}, probes).passed());
        CHECK_FALSE(validate_A({r, rho}, probes).passed());

        Mat bad = rho;
        bad(2, 2) = 1.0;
        const Validation v = validate_N({r, bad}, probes);
        CHECK_FALSE(v.passed());
        CHECK(v.at("rho^2 = chi(R!=0)").residual > 0.1);
        CHECK_THROWS(v.at("no such item"));
    }

    TEST_CASE("anticommuting pair") {
        RVec d(2);
        d << -1.0, 1.0;
        Mat beta = Mat::Zero(2, 2);
        beta(0, 1) = beta(1, 0) = 1.0;
        std::vector<Vec> probes = {Vec::Ones(2).normalized(), Vec::Unit(2, 0)};
        CHECK(validate_M({HermitianSpectral::diagonal(d), beta}, probes).passed());
        CHECK_FALSE(validate_M({HermitianSpectral::diagonal(d), Mat::Identity(2, 2)}, probes).passed());
    }

    TEST_CASE("standard N2 and M2 systems") {
        const PlanckParam p = make_planck(0, 1);
        const Grid g = make_grid(128, 24.0);
        const BlockSystem n = build_N2_standard(p, g);
        const auto probes = make_probes(g, p, 4, 11, 4);
        CHECK(n.R.dim() == 512);
        CHECK(validate_N2(p, n.first(), n.second(), probes).passed());

        const BlockSystem m = build_M2_standard(p, g);
        CHECK(validate_M2(p, m.first_m(), m.second_m(), probes).passed());

        const HplusBlocks h = extract_hplus(n);
        CHECK(h.Rp.rows() == 128);
    }

    TEST_CASE("maps between domains") {
        const PlanckParam p = make_planck(0, 1);
        const Grid g = make_grid(64, 24.0);
        const BlockSystem n = build_N2_standard(p, g);
        const auto probes = make_probes(g, p, 3, 2, 4);
        CHECK(validate_A(map_N_to_A(n.first()), probes).passed());
        const MPair m = map_N_to_M(n.first());
        CHECK(m.b.dim() == 512);
        CHECK(validate_M(m, make_probes(g, p, 3, 2, 8)).passed());
    }

    TEST_CASE("M to N tensor map") {
        RVec d(2);
        d << -1.0, 1.0;
        Mat gamma = Mat::Zero(2, 2);
        gamma(0, 1) = gamma(1, 0) = 1.0;
        const MPair carrier{HermitianSpectral::diagonal(d), gamma};
        const MPair pair{HermitianSpectral::diagonal(d), gamma};
        const NPair out = map_M_to_N_tensor(carrier, pair);
        CHECK(out.R.dim() == 4);
        std::vector<Vec> probes = {Vec::Ones(4).normalized(), Vec::LinSpaced(4, -1.0, 2.0).normalized()};
        CHECK(validate_N(out, probes).passed());

        RVec big = RVec::Ones(9);
        const MPair wide{HermitianSpectral::diagonal(big), Mat::Identity(9, 9)};
        CHECK_THROWS_AS(map_M_to_N_tensor(wide, pair), DimensionMismatch);
    }
}
