#include "qbraid/braidops.hpp"

#include <cmath>
#include <map>

namespace qbraid {

FhSpectrum fh_spectrum(const PlanckParam& p, const HermitianSpectral& a, double tol, double scale) {
    const Index n = a.dim();
    FhSpectrum out{Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
    std::map<double, FhPieces> seen;
    for (Index i = 0; i < n; ++i) {
        const int s = a.sign_of(i);
        const double l = (s == 0 || scale == 0.0) ? 0.0 : scale * a.eigenvalues()[i];
        auto it = seen.find(l);
        if (it == seen.end()) it = seen.emplace(l, fh_pieces(p, l, tol)).first;
        out.even[i] = it->second.even;
        out.odd[i] = it->second.odd;
    }
    return out;
}

Mat fh_of_pair(const PlanckParam& p, const HermitianSpectral& a, const Mat& nu, double tol) {
    if (nu.rows() != a.dim()) throw DimensionMismatch("fh_of_pair: reflection dimension");
    FhSpectrum v = fh_spectrum(p, a, tol);
    return a.apply_values(v.even) + cplx(0.0, 1.0) * a.apply_values(v.odd) * nu;
}

Action fh_action(const HermitianSpectral& a, const FhSpectrum& values, const Mat& nu) {
    Action even = act_values(a, values.even);
    Action odd = act_values(a, values.odd);
    const Mat* pn = &nu;
    return [even, odd, pn](const Vec& w) -> Vec { return even(w) + cplx(0.0, 1.0) * odd((*pn) * w); };
}

Action fh_action(const PlanckParam& p, const HermitianSpectral& a, const Mat& nu, double tol) {
    if (nu.rows() != a.dim()) throw DimensionMismatch("fh_action: reflection dimension");
    return fh_action(a, fh_spectrum(p, a, tol), nu);
}

Mat fh_block(const BlockSystem& sys, double reflection_sign, double tol) {
    const PlanckParam& p = sys.p;
    const HermitianSpectral& tp = sys.Tp;
    const Index n = tp.dim();
    Eigen::VectorXcd v(n), vl(n), wl(n);
    for (Index i = 0; i < n; ++i) {
        const double y = std::log(tp.eigenvalues()[i]);
        v[i] = std::polar(1.0, vtheta_phase(p, y, tol));
        const double ph = lower_edge_phase(p, y, tol);
        const double s = p.theta * y;
        // |VL|^2 + |WL|^2 = 1 exactly: the moduli are the two logistic roots.
        vl[i] = std::exp(cplx(-0.5 * (std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s)))), ph));
        wl[i] = std::exp(cplx(-0.5 * (std::max(-s, 0.0) + std::log1p(std::exp(-std::abs(s)))), ph));
    }
    const Mat V = tp.apply_values(v);
    const Mat VL = tp.apply_values(vl);
    const Mat off = cplx(0.0, reflection_sign * p.parity()) * tp.apply_values(wl);
    Mat out = Mat::Zero(4 * n, 4 * n);
    out.block(0, 0, n, n) = V;
    out.block(n, n, n, n) = VL;
    out.block(2 * n, 2 * n, n, n) = VL;
    out.block(3 * n, 3 * n, n, n) = V;
    out.block(n, 2 * n, n, n) = off;
    out.block(2 * n, n, n, n) = off;
    return out;
}

namespace {

ExtensionData conjugate_by(ExtensionData ext, const HermitianSpectral& s, const Mat& sigma) {
    ext.unitarity = unitarity_residual(ext.fh);
    const Mat fa = ext.fh.adjoint();
    HermitianSpectral sum(s.eigenvalues(), fa * s.eigenvectors());
    sum.set_numerical(s.numerical());
    ext.sum = std::move(sum);
    ext.sigma_tilde = fa * sigma * ext.fh;
    return ext;
}

}  // namespace

ExtensionData op_N(const BlockSystem& sys, double reflection_sign) {
    ExtensionData ext;
    ext.T = sys.T;
    ext.reflection = reflection_sign * sys.reflection;
    ext.fh = fh_block(sys, reflection_sign);
    return conjugate_by(std::move(ext), sys.S, sys.sigma);
}

ExtensionData op_M(const BlockSystem& sys) {
    if (sys.kind != BlockSystem::Kind::M) throw DomainError("op_M needs an M^2 block system");
    // phi has the same block pattern as tau chi(T<0), so the block form applies.
    return op_N(sys, 1.0);
}

namespace {

ExtensionData generic(const PlanckParam& p, const HermitianSpectral& r, const Mat& rho, const HermitianSpectral& s,
                      const Mat& sigma) {
    if (r.dim() != s.dim()) throw DimensionMismatch("composition: dimension mismatch");
    ExtensionData ext;
    ext.T = zakrzewski_quotient(r, s);
    ext.reflection = double(p.parity()) * rho * sigma * spectral_projection(ext.T, Region::Negative);
    ext.fh = fh_of_pair(p, ext.T, ext.reflection);
    return conjugate_by(std::move(ext), s, sigma);
}

}  // namespace

ExtensionData op_N(const PlanckParam& p, const NPair& first, const NPair& second) {
    return generic(p, first.R, first.rho, second.R, second.rho);
}

ExtensionData op_M(const PlanckParam& p, const MPair& first, const MPair& second) {
    return generic(p, first.b, first.beta, second.b, second.beta);
}

HermitianSpectral independent_sum_spectrum(const BlockSystem& sys, const ExtensionData& ext) {
    const Mat s = sys.S.matrix();
    return HermitianSpectral::from_matrix(ext.fh.adjoint() * s * ext.fh);
}

double exp_equation_residual(const PlanckParam& p, const BlockSystem& sys, const ExtensionData& ext,
                             const HermitianSpectral& sum, const std::vector<Vec>& probes) {
    const Mat nu = ext.sigma_tilde * spectral_projection(sum, Region::Negative);
    const Mat rho = sys.rho * spectral_projection(sys.R, Region::Negative);
    const Mat sigma = sys.sigma * spectral_projection(sys.S, Region::Negative);
    Action lhs = fh_action(p, sum, nu);
    Action rhs = compose(fh_action(p, sys.R, rho), fh_action(p, sys.S, sigma));
    return probe_residual(lhs, rhs, probes);
}

double exp_equation_residual(const PlanckParam& p, const BlockSystem& sys, const ExtensionData& ext,
                             const std::vector<Vec>& probes) {
    return exp_equation_residual(p, sys, ext, independent_sum_spectrum(sys, ext), probes);
}

double extension_consistency(const BlockSystem& sys, const ExtensionData& ext, const std::vector<Vec>& probes) {
    double worst = 0.0;
    for (const auto& w : probes)
        for (const auto& v : probes) {
            cplx ext_form = spectral_form(ext.sum, w, v);
            cplx sum_form = spectral_form(sys.R, w, v) + spectral_form(sys.S, w, v);
            worst = std::max(worst, std::abs(ext_form - sum_form) / (w.norm() * v.norm()));
        }
    return worst;
}

double homomorphism_residual_N_to_A(const BlockSystem& sys) {
    const Mat rho_hat = sys.rho * spectral_projection(sys.R, Region::Negative);
    const Mat sigma_hat = sys.sigma * spectral_projection(sys.S, Region::Negative);
    const Mat tau_hat = double(sys.p.parity()) * (rho_hat * sigma_hat + sigma_hat * rho_hat);
    return (tau_hat - sys.reflection).cwiseAbs().maxCoeff();
}

double homomorphism_residual_N_to_M(const BlockSystem& sys, const std::vector<Vec>& probes) {
    const MPair b = map_N_to_M(sys.first());
    const MPair d = map_N_to_M(sys.second());
    const Index n = sys.R.dim();
    const double k = sys.p.parity();
    // chi(f<0) = (I - sign d sign b)/2, f = e^{i hbar/2} d^{-1} b.
    Action sb = act_sign(b.b);
    Action sd = act_sign(d.b);
    const Mat* beta = &b.beta;
    const Mat* delta = &d.beta;
    Action phi = [=](const Vec& w) -> Vec {
        Vec neg = 0.5 * (w - sd(sb(w)));
        return k * ((*beta) * ((*delta) * neg));
    };
    const Mat* refl = &sys.reflection;
    Action expected = [refl, n](const Vec& w) -> Vec {
        Vec out(2 * n);
        out.head(n) = (*refl) * w.head(n);
        out.tail(n) = (*refl) * w.tail(n);
        return out;
    };
    return probe_residual(phi, expected, probes);
}

double homomorphism_residual_M_to_N(const MPair& carrier, const BlockSystem& sys, const std::vector<Vec>& probes) {
    if (sys.kind != BlockSystem::Kind::M) throw DomainError("M to N check needs an M^2 block system");
    const ExtensionData m = op_M(sys);
    const NPair first = map_M_to_N_tensor(carrier, sys.first_m());
    const NPair second = map_M_to_N_tensor(carrier, sys.second_m());
    const ExtensionData nx = op_N(sys.p, first, second);

    const Index kdim = carrier.b.dim();
    const Mat id_f = kron(Mat::Identity(kdim, kdim), m.fh);
    const Mat gamma_delta = kron(carrier.beta, m.sigma_tilde);
    const HermitianSpectral g_sum = kron(carrier.b, m.sum);

    double r = probe_residual(act(nx.fh), act(id_f), probes);
    r = std::max(r, probe_residual(act(nx.sigma_tilde), act(gamma_delta), probes));
    r = std::max(r, probe_residual(act_z(nx.sum), act_z(g_sum), probes));
    return r;
}

}  // namespace qbraid
