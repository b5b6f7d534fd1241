#include "qbraid/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbraid/braidops.hpp"
#include "qbraid/kernels.hpp"
#include "qbraid/reps.hpp"

namespace qbraid {

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> s = {"specfun",   "weyl", "fourier", "domains",          "braidops-N",
                                               "braidops-M", "reps", "kernels", "negative-controls"};
    return s;
}

const std::vector<CheckSpec>& check_registry() {
    static const std::vector<CheckSpec> r = {
        {"specfun.unit_modulus.vtheta", "specfun", "|V(x)| = 1 for real x", 1e-9},
        {"specfun.unit_modulus.fh", "specfun", "|F(r,rho)| = 1 on Delta_real", 1e-9},
        {"specfun.reflection.upper", "specfun", "conj V(log t) = e^{-i pi/4} c' e^{i log^2 t/2hbar} V(-log t)", 1e-7},
        {"specfun.reflection.lower", "specfun",
         "conj V(y-i pi) = i(-1)^k c' e^{-i pi/4} e^{i y^2/2hbar} e^{-pi y/hbar} V(-y-i pi)", 1e-6},
        {"specfun.lower_edge.methods", "specfun", "principal value against eps -> 0 extrapolation of V(y-i pi)", 1e-8},
        {"specfun.fh.zero", "specfun", "F(0,rho) = 1", 0.0},
        {"specfun.fh.continuity", "specfun", "|F(r,rho) - 1| for 0 < |r| < 1e-4", 1e-3},
        {"weyl.canonical", "weyl", "|R|^{il}|S|^{ik} = e^{i hbar l k}|S|^{ik}|R|^{il}", 1e-8},
        {"weyl.signed_pair", "weyl", "Weyl relation for (u (x) e^p, v (x) e^q)", 1e-8},
        {"weyl.quotient", "weyl", "T^{is} = e^{i hbar s^2/2} R^{is} S^{-is}", 1e-8},
        {"fourier.unitarity", "fourier", "F* F = I", 1e-9},
        {"fourier.defF", "fourier", "e^{i pi/4} e^{-i log^2 S/hbar} e^{-i log^2 T/2hbar} is the Fourier transform", 1e-5},
        {"fourier.fr", "fourier", "F R F* = S, F S F* = R^{-1}", 1e-5},
        {"fourier.fj", "fourier", "F J = J F*", 1e-5},
        {"fourier.ftf", "fourier", "J T J = F T^{-1} F*", 1e-5},
        {"fourier.jrj", "fourier", "J R J = R^{-1}", 1e-8},
        {"domains.N2", "domains", "(R,rho), (S,sigma) in N, R -o S, S rho = -rho S, R sigma = -sigma R", 1e-8},
        {"domains.M2", "domains", "(b,beta), (d,delta) in M, b -o d, b delta = delta b, d beta = beta d", 1e-8},
        {"domains.N_to_A", "domains", "tau chi(T<0) = (-1)^k (rho^ sigma^ + sigma^ rho^)", 1e-10},
        {"domains.N_to_M", "domains", "phi of the image pair = I_2 (x) tau chi(T<0)", 1e-10},
        {"braidops.N.unitarity", "braidops-N", "F(T, tau chi(T<0)) unitary", 1e-9},
        {"braidops.N.oexp", "braidops-N", "F([R+S], sigma~) = F(R,rho) F(S,sigma)", 1e-5},
        {"braidops.N.oexp_halving", "braidops-N", "oexp residual at n/2 over residual at n", 10.0},
        {"braidops.N.extension", "braidops-N", "<w|[R+S]v> = <w|Rv> + <w|Sv>", 1e-4},
        {"braidops.M.unitarity", "braidops-M", "F(f, phi) unitary", 1e-9},
        {"braidops.M.extension", "braidops-M", "<w|[b+d]v> = <w|bv> + <w|dv>", 1e-4},
        {"braidops.M.M_to_N", "braidops-M", "(g,gamma) (x) ((b,beta) o_M (d,delta)) = images composed in N", 1e-6},
        {"reps.K1", "reps", "V(R,rho) V(S,sigma) = V((R,rho) o_N (S,sigma)), K = C", 1e-5},
        {"reps.K2", "reps", "V(R,rho) V(S,sigma) = V((R,rho) o_N (S,sigma)), K = C^2", 1e-4},
        {"reps.przemN", "reps", "V(r,rho) V(s,sigma) = V(s,sigma) V(r,rho), ten relations", 1e-5},
        {"reps.przemN.zero", "reps", "V2(r) V2(-s) = 0 = V2(-s) V2(r)", 1e-9},
        {"reps.decompose", "reps", "V(R,rho) = V1(R) + rho V2(R)", 1e-12},
        {"reps.rep_M.unitarity", "reps", "U(b,beta) = F(g (x) b, (gamma (x) beta) chi(g (x) b < 0)) unitary", 1e-8},
        {"reps.dim1.positive", "reps", "V0 = F(2r, rho chi(2r<0)) recovers (2, +1)", 1e-6},
        {"reps.dim1.negative", "reps", "V0 = F(-r/2, -rho chi(-r/2<0)) recovers (-0.5, -1)", 1e-6},
        {"reps.dim1.trivial", "reps", "V0 = 1 recovers M = 0", 1e-6},
        {"reps.dim1.v1_only_rejected", "reps", "V0 with V2 = 0 on both half-lines is rejected", 0.0},
        {"kernels.unit_phase", "kernels", "|<Omega|Phi>| = |<Psi|Phi>| = |<Omega|Psi>| = (2 pi hbar)^{-1/2}", 1e-14},
        {"kernels.omfi", "kernels", "<Omega_r|Phi_s> = <Omega_s|Phi_r>", 0.0},
        {"kernels.pom1", "kernels",
         "e^{-i pi/4} e^{i log^2 t/2hbar} <Omega_r|Psi_t><Psi_t|Phi_s> = e^{-i log^2 r/hbar} <Phi_r|Psi_t><Psi_t|Phi_s>",
         1e-10},
        {"kernels.pom20", "kernels", "pom2 with f = V", 1e-10},
        {"kernels.pom2", "kernels",
         "f(log t) <Phi_s|Psi_t><Psi_t|Phi_r> = f(-log t) e^{-i log^2 r/hbar} e^{i log^2 s/hbar} <Psi_t|Phi_s><Phi_r|Psi_t>",
         1e-10},
        {"kernels.omega_psi", "kernels", "<Omega_r|Psi_t> closed form against regularized quadrature", 1e-6},
        {"kernels.ef", "kernels", "<Omega_r|V(log T)*|Phi_s> = c' e^{-i log^2 s/hbar} <Phi_s|V(log T)|Phi_r>", 1e-3},
        {"kernels.efw", "kernels",
         "<Omega_r|V(log T-i pi)*|Phi_s> = i(-1)^k c' e^{-i log^2 s/hbar} <Phi_s|T^{pi/hbar} V(log T-i pi)|Phi_r>", 1e-3},
        {"kernels.efwt", "kernels",
         "<Omega_r|T^{pi/hbar} V(log T-i pi)*|Phi_s> = i(-1)^k c' e^{-i log^2 s/hbar} <Phi_s|V(log T-i pi)|Phi_r>", 1e-3},
        {"kernels.ef_convergence", "kernels", "matrix-element error at n over error at n/2", 0.5},
        {"control.theta_perturbed", "negative-controls", "reflection identity with theta scaled by 1.01", 1e-3, true},
        {"control.oexp_tau_flip", "negative-controls", "exponential equation with tau replaced by -tau", 1e-2, true},
        {"control.rep_v1_only", "negative-controls", "V = V1 is not a representation", 0.05, true},
        {"control.przemN_mutation", "negative-controls", "ten relations with a non-commuting carrier mu", 1e-2, true},
    };
    return r;
}

namespace {

const CheckSpec& spec_of(const std::string& name) {
    for (const auto& c : check_registry())
        if (c.name == name) return c;
    throw std::logic_error("unregistered check " + name);
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.k < 0) throw ConfigError("k must be nonnegative");
    if (cfg.sign != 1 && cfg.sign != -1) throw ConfigError("sign must be +1 or -1");
    if (cfg.grid_n < 64 || cfg.grid_n > 1024 || cfg.grid_n % 2 != 0)
        throw ConfigError("grid-n must be even and within [64, 1024]");
    if (!(cfg.grid_length > 0.0) || !std::isfinite(cfg.grid_length)) throw ConfigError("grid-length must be positive");
    if (cfg.report_format != "json" && cfg.report_format != "text") throw ConfigError("report must be json or text");
    for (const auto& s : cfg.suites)
        if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
            throw ConfigError("unknown suite " + s);
    for (const auto& [name, tol] : cfg.tol_overrides) {
        const auto& reg = check_registry();
        if (std::none_of(reg.begin(), reg.end(), [&](const CheckSpec& c) { return c.name == name; }))
            throw ConfigError("unknown check in tolerance override: " + name);
        if (!(tol >= 0.0)) throw ConfigError("tolerance override must be nonnegative: " + name);
    }
}

namespace {

class Context {
  public:
    explicit Context(const RunConfig& cfg)
        : cfg_(cfg), p_(make_planck(cfg.k, cfg.sign)), grid_(make_grid(cfg.grid_n, cfg.grid_length)) {}

    const RunConfig& cfg() const { return cfg_; }
    const PlanckParam& p() const { return p_; }
    const Grid& grid() const { return grid_; }

    std::vector<Vec> probes(int count, int blocks, std::uint64_t offset) const {
        return make_probes(grid_, p_, count, cfg_.rng_seed + offset, blocks);
    }
    std::vector<Vec> probes_on(const Grid& g, int count, int blocks, std::uint64_t offset) const {
        return make_probes(g, p_, count, cfg_.rng_seed + offset, blocks);
    }

    struct NData {
        BlockSystem sys;
        ExtensionData ext;
        HermitianSpectral sum;
    };
    const NData& n_system() {
        if (!n_) n_ = build(grid_);
        return *n_;
    }
    const NData& n_system_half() {
        if (!n_half_) n_half_ = build(make_grid(grid_.n / 2, cfg_.grid_length));
        return *n_half_;
    }
    const BlockSystem& m_system() {
        if (!m_) m_ = std::make_unique<BlockSystem>(build_M2_standard(p_, grid_));
        return *m_;
    }

  private:
    std::unique_ptr<NData> build(const Grid& g) const {
        auto d = std::make_unique<NData>();
        d->sys = build_N2_standard(p_, g);
        d->ext = op_N(d->sys);
        d->sum = independent_sum_spectrum(d->sys, d->ext);
        return d;
    }

    RunConfig cfg_;
    PlanckParam p_;
    Grid grid_;
    std::unique_ptr<NData> n_, n_half_;
    std::unique_ptr<BlockSystem> m_;
};

class Emitter {
  public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

    void run(const std::string& name, const std::function<double()>& f, std::map<std::string, double> extra = {}) {
        const CheckSpec& spec = spec_of(name);
        CheckReport r;
        r.check_name = name;
        r.anchor = spec.anchor;
        r.negative_control = spec.negative_control;
        auto it = cfg_.tol_overrides.find(name);
        r.tolerance = it != cfg_.tol_overrides.end() ? it->second : spec.tolerance;
        r.parameters = {{"k", double(cfg_.k)},
                        {"sign", double(cfg_.sign)},
                        {"grid_n", double(cfg_.grid_n)},
                        {"grid_length", cfg_.grid_length},
                        {"seed", double(cfg_.rng_seed)}};
        for (auto& [key, v] : extra) r.parameters[key] = v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.residual = f();
            r.passed = r.residual <= r.tolerance;
        } catch (const std::exception& e) {
            r.residual = std::numeric_limits<double>::quiet_NaN();
            r.passed = false;
            r.error = e.what();
        }
        if (cfg_.timing)
            r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        reports.push_back(std::move(r));
    }

    std::vector<CheckReport> reports;

  private:
    const RunConfig& cfg_;
};

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1)));
    return out;
}

void suite_specfun(Context& ctx, Emitter& em) {
    const PlanckParam& p = ctx.p();
    em.run("specfun.unit_modulus.vtheta", [&] {
        double w = 0.0;
        for (int i = 0; i < 50; ++i) w = std::max(w, std::abs(std::abs(vtheta(p, -10.0 + 20.0 * i / 49.0)) - 1.0));
        return w;
    });
    em.run("specfun.unit_modulus.fh", [&] {
        double w = 0.0;
        for (double r : log_spaced(std::exp(-4.0), std::exp(4.0), 17)) {
            w = std::max(w, std::abs(std::abs(fh_scalar(p, {r, 0})) - 1.0));
            for (int rho : {-1, 1}) w = std::max(w, std::abs(std::abs(fh_scalar(p, {-r, rho})) - 1.0));
        }
        return w;
    });
    em.run("specfun.reflection.upper", [&] {
        double w = 0.0;
        for (double t : log_spaced(std::exp(-4.0), std::exp(4.0), 25)) w = std::max(w, reflection_residual(p, t));
        return w;
    });
    em.run("specfun.reflection.lower", [&] {
        double w = 0.0;
        for (double t : log_spaced(std::exp(-4.0), std::exp(4.0), 25)) w = std::max(w, lower_reflection_residual(p, t));
        return w;
    });
    em.run("specfun.lower_edge.methods", [&] {
        double w = 0.0;
        for (int i = 0; i <= 12; ++i) w = std::max(w, vtheta_lower_edge_both(p, -3.0 + 0.5 * i).discrepancy);
        return w;
    });
    em.run("specfun.fh.zero", [&] {
        double w = 0.0;
        for (int rho : {-1, 0, 1}) w = std::max(w, std::abs(fh_scalar(p, {0.0, rho}) - 1.0));
        return w;
    });
    em.run("specfun.fh.continuity", [&] {
        double w = 0.0;
        for (double r : {1e-7, 1e-6, 1e-5, 9e-5}) {
            w = std::max(w, std::abs(fh_scalar(p, {r, 0}) - 1.0));
            for (int rho : {-1, 1}) w = std::max(w, std::abs(fh_scalar(p, {-r, rho}) - 1.0));
        }
        return w;
    });
    if (ctx.cfg().csv_dir) {
        std::vector<double> xs;
        for (int i = 0; i <= 200; ++i) xs.push_back(-10.0 + 0.1 * i);
        write_vtheta_csv(*ctx.cfg().csv_dir + "/vtheta.csv", p, xs);
        std::vector<DeltaRealPoint> pts;
        for (double x : xs) {
            const double r = std::exp(0.5 * x);
            pts.push_back({r, 0});
            pts.push_back({-r, 1});
            pts.push_back({-r, -1});
        }
        write_fh_csv(*ctx.cfg().csv_dir + "/fh.csv", p, pts);
    }
}

void suite_weyl(Context& ctx, Emitter& em) {
    const PlanckParam& p = ctx.p();
    const Grid& g = ctx.grid();
    em.run("weyl.canonical", [&] {
        auto c = canonical_zakrzewski_pair(p, g);
        return weyl_residual(p, c.R, c.S, ctx.probes(6, 1, 11));
    });
    em.run("weyl.signed_pair", [&] {
        auto c = canonical_pair_with_signs({1, 1, -1, -1}, {1, -1, 1, -1}, p, g);
        return weyl_residual(p, c.R, c.S, ctx.probes(6, 4, 12));
    });
    em.run("weyl.quotient", [&] {
        auto c = canonical_zakrzewski_pair(p, g);
        auto t = zakrzewski_quotient(c.R, c.S);
        return quotient_consistency(p, c.R, c.S, t, ctx.probes(6, 1, 13));
    });
}

void suite_fourier(Context& ctx, Emitter& em) {
    std::unique_ptr<FourierChecks> fc;
    std::string failure;
    try {
        fc = std::make_unique<FourierChecks>(fourier_checks(ctx.p(), ctx.grid(), ctx.probes(8, 1, 21)));
    } catch (const std::exception& e) {
        failure = e.what();
    }
    auto get = [&](double FourierChecks::*m) {
        return [&fc, &failure, m]() -> double {
            if (!fc) throw std::runtime_error(failure);
            return (*fc).*m;
        };
    };
    em.run("fourier.unitarity", get(&FourierChecks::unitarity));
    em.run("fourier.defF", get(&FourierChecks::defF));
    em.run("fourier.fr", get(&FourierChecks::fr));
    em.run("fourier.fj", get(&FourierChecks::fj));
    em.run("fourier.ftf", get(&FourierChecks::ftf));
    em.run("fourier.jrj", get(&FourierChecks::jrj));
}

void suite_domains(Context& ctx, Emitter& em) {
    const PlanckParam& p = ctx.p();
    em.run("domains.N2", [&] {
        const BlockSystem& sys = ctx.n_system().sys;
        return validate_N2(p, sys.first(), sys.second(), ctx.probes(6, 4, 31)).worst();
    });
    em.run("domains.M2", [&] {
        const BlockSystem& sys = ctx.m_system();
        return validate_M2(p, sys.first_m(), sys.second_m(), ctx.probes(6, 4, 32)).worst();
    });
    em.run("domains.N_to_A", [&] { return homomorphism_residual_N_to_A(ctx.n_system().sys); });
    em.run("domains.N_to_M", [&] {
        return homomorphism_residual_N_to_M(ctx.n_system().sys, ctx.probes(6, 8, 33));
    });
}

void suite_braidops_n(Context& ctx, Emitter& em) {
    const PlanckParam& p = ctx.p();
    em.run("braidops.N.unitarity", [&] { return ctx.n_system().ext.unitarity; });
    double full = std::numeric_limits<double>::quiet_NaN();
    em.run("braidops.N.oexp", [&] {
        const auto& d = ctx.n_system();
        full = exp_equation_residual(p, d.sys, d.ext, d.sum, ctx.probes(6, 4, 41));
        return full;
    });
    em.run(
        "braidops.N.oexp_halving",
        [&] {
            const auto& d = ctx.n_system_half();
            const auto pr = ctx.probes_on(d.sys.grid, 6, 4, 41);
            const double half = exp_equation_residual(p, d.sys, d.ext, d.sum, pr);
            if (!std::isfinite(full)) throw std::runtime_error("full-grid oexp residual unavailable");
            return half / full;
        },
        {{"half_grid_n", double(ctx.grid().n / 2)}});
    em.run("braidops.N.extension", [&] {
        const auto& d = ctx.n_system();
        return extension_consistency(d.sys, d.ext, ctx.probes(4, 4, 42));
    });
}

// The M to N intertwining works on C^2 (x) H, twice the M system; it runs on
// the half grid to keep the dense eigensolves small.
void suite_braidops_m(Context& ctx, Emitter& em) {
    em.run("braidops.M.unitarity", [&] { return op_M(ctx.m_system()).unitarity; });
    em.run("braidops.M.extension", [&] {
        const BlockSystem& sys = ctx.m_system();
        return extension_consistency(sys, op_M(sys), ctx.probes(4, 4, 51));
    });
    const int half = ctx.grid().n / 2;
    em.run(
        "braidops.M.M_to_N",
        [&] {
            const Grid g = make_grid(half, ctx.cfg().grid_length);
            const BlockSystem sys = build_M2_standard(ctx.p(), g);
            Mat gmat = Mat::Zero(2, 2), gamma = Mat::Zero(2, 2);
            gmat(0, 0) = 1.0;
            gmat(1, 1) = -1.0;
            gamma(0, 1) = gamma(1, 0) = 1.0;
            const MPair carrier{HermitianSpectral::diagonal(gmat.diagonal().real()), gamma};
            return homomorphism_residual_M_to_N(carrier, sys, ctx.probes_on(g, 4, 8, 52));
        },
        {{"intertwining_grid_n", double(half)}});
}

NPair diagonal_carrier(double a, double b, const Mat& mu) {
    RVec d(2);
    d << a, b;
    return {HermitianSpectral::diagonal(d), mu};
}

void suite_reps(Context& ctx, Emitter& em) {
    const PlanckParam& p = ctx.p();
    Mat m2 = Mat::Zero(2, 2);
    m2(0, 0) = 1.0;
    m2(1, 1) = -1.0;
    em.run("reps.K1", [&] {
        const auto& d = ctx.n_system();
        const RepSpec one = make_rep_spec(Mat::Identity(1, 1), Mat::Identity(1, 1));
        return rep_equation_residual(p, one, d.sys, d.ext, d.sum, ctx.probes(6, 4, 61));
    });
    em.run("reps.K2", [&] {
        const auto& d = ctx.n_system();
        const RepSpec two = make_rep_spec(m2, m2);
        return rep_equation_residual(p, two, d.sys, d.ext, d.sum, ctx.probes(6, 8, 62));
    });
    const NPair carrier = diagonal_carrier(1.0, -1.0, m2);
    std::unique_ptr<Validation> suite;
    std::string failure;
    try {
        suite = std::make_unique<Validation>(commutation_suite(p, carrier, default_magnitudes()));
    } catch (const std::exception& e) {
        failure = e.what();
    }
    em.run("reps.przemN", [&] {
        if (!suite) throw std::runtime_error(failure);
        double w = 0.0;
        for (const auto& it : suite->items)
            if (it.name != "||V2(r) V2(-s)||") w = std::max(w, it.residual);
        return w;
    });
    em.run("reps.przemN.zero", [&] {
        if (!suite) throw std::runtime_error(failure);
        return suite->at("||V2(r) V2(-s)||").residual;
    });
    em.run("reps.decompose", [&] {
        double w = 0.0;
        for (double r : {-2.0, -0.5, 0.5, 2.0}) {
            const Mat vp = rep_scalar(p, carrier, r, 1);
            const Mat vm = rep_scalar(p, carrier, r, -1);
            const V1V2 parts = decompose_V1_V2(vp, vm);
            w = std::max({w, (reconstruct(parts, 1) - vp).cwiseAbs().maxCoeff(),
                          (reconstruct(parts, -1) - vm).cwiseAbs().maxCoeff()});
        }
        return w;
    });
    const int half = ctx.grid().n / 2;
    em.run(
        "reps.rep_M.unitarity",
        [&] {
            const BlockSystem sys = build_M2_standard(p, make_grid(half, ctx.cfg().grid_length));
            Mat gamma = Mat::Zero(2, 2);
            gamma(0, 1) = gamma(1, 0) = 1.0;
            const RepSpecM spec = make_rep_spec_m(m2, gamma);
            return unitarity_residual(rep_M_build(p, spec, sys.first_m()));
        },
        {{"rep_grid_n", double(half)}});

    auto round_trip = [&](double m, int mu) {
        return [&p, m, mu]() {
            const Dim1Result r = dim1_classify(p, sample_family(p, m, mu, default_magnitudes()));
            const Dim1Case expect = m > 0 ? Dim1Case::PositiveM : (m < 0 ? Dim1Case::NegativeM : Dim1Case::Trivial);
            if (r.kind != expect) return 1.0;
            if (m != 0.0 && r.mu != mu) return 1.0;
            return std::max(r.residual, std::abs(r.m - m));
        };
    };
    em.run("reps.dim1.positive", round_trip(2.0, 1));
    em.run("reps.dim1.negative", round_trip(-0.5, -1));
    em.run("reps.dim1.trivial", round_trip(0.0, 1));
    em.run("reps.dim1.v1_only_rejected", [&] {
        const Dim1Result r = dim1_classify(p, sample_v1_only(p, 2.0, default_magnitudes()));
        return r.kind == Dim1Case::Reject ? 0.0 : 1.0;
    });
}

void suite_kernels(Context& ctx, Emitter& em) {
    const PlanckParam& p = ctx.p();
    em.run("kernels.unit_phase", [&] {
        const double c = 1.0 / std::sqrt(2.0 * kPi * std::abs(p.hbar));
        double w = 0.0;
        for (double a : log_spaced(0.05, 20.0, 7))
            for (double b : log_spaced(0.05, 20.0, 7))
                for (KernelKind k : {KernelKind::OmegaPhi, KernelKind::PsiPhi, KernelKind::OmegaPsi})
                    w = std::max(w, std::abs(std::abs(overlap(k, a, b, p)) - c) / c);
        return w;
    });
    std::unique_ptr<IdentitySweep> sweep;
    std::string failure;
    try {
        sweep = std::make_unique<IdentitySweep>(identity_sweep(p, 5, 1.0));
    } catch (const std::exception& e) {
        failure = e.what();
    }
    auto get = [&](double IdentitySweep::*m) {
        return [&sweep, &failure, m]() -> double {
            if (!sweep) throw std::runtime_error(failure);
            return (*sweep).*m;
        };
    };
    em.run("kernels.omfi", get(&IdentitySweep::omfi));
    em.run("kernels.pom1", get(&IdentitySweep::pom1));
    em.run("kernels.pom20", get(&IdentitySweep::pom20));
    em.run("kernels.pom2", get(&IdentitySweep::pom2));
    em.run("kernels.omega_psi", [&] {
        double w = 0.0;
        for (auto [r, t] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{3.0, 0.7}})
            w = std::max(w, std::abs(overlap(KernelKind::OmegaPsi, r, t, p) - overlap_omega_psi_quadrature(r, t, p)));
        return w;
    });
    std::map<EfVariant, double> full;
    for (EfVariant v : {EfVariant::Ef, EfVariant::Efw, EfVariant::Efwt}) {
        em.run(std::string("kernels.") + to_string(v), [&, v] {
            full[v] = identity_ef_matrix_residual(p, ctx.grid(), v);
            return full[v];
        });
    }
    const int half = ctx.grid().n / 2;
    em.run(
        "kernels.ef_convergence",
        [&] {
            const Grid g = make_grid(half, ctx.cfg().grid_length);
            double w = 0.0;
            for (EfVariant v : {EfVariant::Ef, EfVariant::Efw, EfVariant::Efwt}) {
                if (!full.count(v)) throw std::runtime_error("full-grid residual unavailable");
                w = std::max(w, full[v] / identity_ef_matrix_residual(p, g, v));
            }
            return w;
        },
        {{"half_grid_n", double(half)}});
    if (ctx.cfg().csv_dir) {
        const auto axis = log_spaced(0.1, 10.0, 21);
        const std::string& dir = *ctx.cfg().csv_dir;
        write_kernel_csv(dir + "/kernel_omega_phi.csv", p, KernelKind::OmegaPhi, axis, axis);
        write_kernel_csv(dir + "/kernel_psi_phi.csv", p, KernelKind::PsiPhi, axis, axis);
        write_kernel_csv(dir + "/kernel_omega_psi.csv", p, KernelKind::OmegaPsi, axis, axis);
        write_identity_csv(dir + "/identities.csv", p, 5, 1.0);
    }
}

void suite_controls(Context& ctx, Emitter& em) {
    const PlanckParam& p = ctx.p();
    em.run("control.theta_perturbed", [&] {
        const PlanckParam q = with_theta(p, 1.01 * p.theta);
        double w = 0.0;
        for (double t : log_spaced(std::exp(-4.0), std::exp(4.0), 25)) w = std::max(w, reflection_residual(q, t));
        return w;
    });
    em.run("control.oexp_tau_flip", [&] {
        const auto& d = ctx.n_system();
        const ExtensionData flipped = op_N(d.sys, -1.0);
        return exp_equation_residual(p, d.sys, flipped, ctx.probes(6, 4, 41));
    });
    em.run("control.rep_v1_only", [&] {
        const auto& d = ctx.n_system();
        return rep_equation_residual_v1_only(p, d.sys, d.sum, ctx.probes(6, 4, 61));
    });
    em.run("control.przemN_mutation", [&] {
        Mat mu = Mat::Zero(2, 2);
        mu(0, 1) = mu(1, 0) = 1.0;
        return commutation_suite(p, diagonal_carrier(1.0, -1.0, mu), default_magnitudes()).worst();
    });
}

}  // namespace

RunResult run_suite(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.csv_dir) std::filesystem::create_directories(*cfg.csv_dir);
    Context ctx(cfg);
    Emitter em(cfg);
    const std::vector<std::string>& suites = cfg.suites.empty() ? known_suites() : cfg.suites;
    auto wanted = [&](const char* s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };
    if (wanted("specfun")) suite_specfun(ctx, em);
    if (wanted("weyl")) suite_weyl(ctx, em);
    if (wanted("fourier")) suite_fourier(ctx, em);
    if (wanted("domains")) suite_domains(ctx, em);
    if (wanted("braidops-N")) suite_braidops_n(ctx, em);
    if (wanted("braidops-M")) suite_braidops_m(ctx, em);
    if (wanted("reps")) suite_reps(ctx, em);
    if (wanted("kernels")) suite_kernels(ctx, em);
    if (wanted("negative-controls")) suite_controls(ctx, em);

    RunResult out;
    out.reports = std::move(em.reports);
    std::sort(out.reports.begin(), out.reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.check_name < b.check_name; });
    const bool ok = std::all_of(out.reports.begin(), out.reports.end(), [](const CheckReport& r) { return r.satisfied(); });
    out.exit_code = ok ? 0 : 1;
    return out;
}

std::string to_json(const RunConfig& cfg, const RunResult& result) {
    using nlohmann::json;
    json config = {{"k", cfg.k},
                   {"sign", cfg.sign},
                   {"grid_n", cfg.grid_n},
                   {"grid_length", cfg.grid_length},
                   {"suites", cfg.suites.empty() ? known_suites() : cfg.suites},
                   {"tol_overrides", cfg.tol_overrides},
                   {"report_format", cfg.report_format},
                   {"rng_seed", cfg.rng_seed}};
    config["csv_dir"] = cfg.csv_dir ? json(*cfg.csv_dir) : json(nullptr);
    json reports = json::array();
    for (const auto& r : result.reports) {
        json j = {{"check_name", r.check_name},
                  {"anchor", r.anchor},
                  {"tolerance", r.tolerance},
                  {"passed", r.passed},
                  {"negative_control", r.negative_control},
                  {"runtime_ms", r.runtime_ms},
                  {"parameters", r.parameters}};
        j["residual"] = std::isfinite(r.residual) ? json(r.residual) : json(nullptr);
        if (!r.error.empty()) j["error"] = r.error;
        reports.push_back(std::move(j));
    }
    json top = {{"config", config}, {"reports", reports}, {"exit_code", result.exit_code}};
    return top.dump(2) + "\n";
}

std::string to_text(const RunConfig& cfg, const RunResult& result) {
    std::ostringstream os;
    os << "k=" << cfg.k << " sign=" << cfg.sign << " grid_n=" << cfg.grid_n << " grid_length=" << cfg.grid_length
       << " seed=" << cfg.rng_seed << "\n";
    os.setf(std::ios::scientific);
    os.precision(3);
    for (const auto& r : result.reports) {
        const char* tag = r.negative_control ? (r.satisfied() ? "REJECTED" : "ACCEPTED") : (r.passed ? "PASS" : "FAIL");
        os << tag << "  " << r.check_name << "  residual=" << r.residual << "  tol=" << r.tolerance;
        if (r.negative_control) os << "  (control)";
        if (!r.error.empty()) os << "  error: " << r.error;
        os << "\n";
    }
    os << "exit " << result.exit_code << "\n";
    return os.str();
}

std::string render(const RunConfig& cfg, const RunResult& result) {
    return cfg.report_format == "text" ? to_text(cfg, result) : to_json(cfg, result);
}

}  // namespace qbraid
