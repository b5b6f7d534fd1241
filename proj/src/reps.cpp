#include "qbraid/reps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <boost/math/tools/minima.hpp>

namespace qbraid {

namespace {

void require_square(const Mat& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) throw DimensionMismatch(what);
}

double sym_defect(const Mat& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

RepSpec make_rep_spec(const Mat& m, const Mat& mu) {
    require_square(m, "carrier M must be square");
    if (mu.rows() != m.rows() || mu.cols() != m.cols()) throw DimensionMismatch("carrier M and mu differ in size");
    if (m.rows() > 8) throw DimensionMismatch("carrier dimension above 8");
    if (sym_defect(m) > 1e-10 || sym_defect(mu) > 1e-10) throw DomainError("carrier operators must be hermitian");
    RepSpec spec{{HermitianSpectral::from_matrix(m), mu}};
    const Mat comm = m * mu - mu * m;
    if (comm.cwiseAbs().maxCoeff() > 1e-10) throw DomainError("carrier M and mu must commute");
    const Mat sq = mu * mu - spectral_projection(spec.generator.R, Region::NonZero);
    if (sq.cwiseAbs().maxCoeff() > 1e-10) throw DomainError("carrier mu^2 must equal chi(M != 0)");
    return spec;
}

RepSpecM make_rep_spec_m(const Mat& g, const Mat& gamma) {
    require_square(g, "carrier g must be square");
    if (gamma.rows() != g.rows() || gamma.cols() != g.cols()) throw DimensionMismatch("carrier g and gamma differ");
    if (g.rows() > 8) throw DimensionMismatch("carrier dimension above 8");
    if (sym_defect(g) > 1e-10 || sym_defect(gamma) > 1e-10) throw DomainError("carrier operators must be hermitian");
    RepSpecM spec{{HermitianSpectral::from_matrix(g), gamma}};
    const Mat anti = g * gamma + gamma * g;
    if (anti.cwiseAbs().maxCoeff() > 1e-10) throw DomainError("carrier g and gamma must anticommute");
    const Mat sq = gamma * gamma - spectral_projection(spec.generator.b, Region::NonZero);
    if (sq.cwiseAbs().maxCoeff() > 1e-10) throw DomainError("carrier gamma^2 must equal chi(g != 0)");
    return spec;
}

JointBasis joint_basis(const RepSpec& spec) {
    const HermitianSpectral& m = spec.generator.R;
    const Mat& mu = spec.generator.rho;
    const Index k = m.dim();
    JointBasis out{Mat(k, k), {}, {}};
    Index col = 0;
    for (Index start = 0; start < k;) {
        const double scale = std::max(1.0, std::abs(m.eigenvalues()[start]));
        Index end = start + 1;
        while (end < k && std::abs(m.eigenvalues()[end] - m.eigenvalues()[start]) <= 1e-10 * scale) ++end;
        const double mval = m.sign_of(start) == 0 ? 0.0 : m.eigenvalues().segment(start, end - start).mean();
        const Mat u = m.eigenvectors().middleCols(start, end - start);
        const Mat restricted = u.adjoint() * mu * u;
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (restricted + restricted.adjoint()));
        if (es.info() != Eigen::Success) throw EigendecompositionFailure("carrier mu restriction");
        for (Index j = 0; j < end - start; ++j) {
            const double v = es.eigenvalues()[j];
            const double r = std::round(v);
            if (std::abs(v - r) > 1e-8 || std::abs(r) > 1.0) throw DomainError("carrier mu eigenvalue not in {-1,0,1}");
            out.vectors.col(col++) = u * es.eigenvectors().col(j);
            out.m.push_back(mval);
            out.mu.push_back(static_cast<int>(r));
        }
        start = end;
    }
    return out;
}

namespace {

// F(m X, mu0 nu chi(m X < 0)) on one joint eigenspace.
struct Piece {
    FhSpectrum values;
    Mat nu;
    bool identity = false;
};

Piece make_piece(const PlanckParam& p, const HermitianSpectral& x, const Mat& nu, double m, int mu0) {
    Piece out;
    if (m == 0.0) {
        out.identity = true;
        return out;
    }
    out.values = fh_spectrum(p, x, kDefaultTol, m);
    out.nu = double(mu0) * nu;
    return out;
}

Mat piece_matrix(const HermitianSpectral& x, const Piece& pc) {
    if (pc.identity) return Mat::Identity(x.dim(), x.dim());
    return x.apply_values(pc.values.even) + cplx(0.0, 1.0) * x.apply_values(pc.values.odd) * pc.nu;
}

Vec piece_apply(const HermitianSpectral& x, const Piece& pc, const Vec& w) {
    if (pc.identity) return w;
    const Mat& u = x.eigenvectors();
    const Vec a = u.adjoint() * w;
    const Vec b = u.adjoint() * (pc.nu * w);
    return u * (pc.values.even.cwiseProduct(a) + cplx(0.0, 1.0) * pc.values.odd.cwiseProduct(b));
}

}  // namespace

Mat rep_N_build(const PlanckParam& p, const RepSpec& spec, const NPair& pair) {
    if (pair.rho.rows() != pair.R.dim()) throw DimensionMismatch("rep_N_build: pair dimension");
    const JointBasis jb = joint_basis(spec);
    const Index k = spec.carrier_dim();
    const Index n = pair.R.dim();
    Mat out = Mat::Zero(k * n, k * n);
    for (Index j = 0; j < k; ++j) {
        const Vec e = jb.vectors.col(j);
        const Mat proj = e * e.adjoint();
        out += kron(proj, piece_matrix(pair.R, make_piece(p, pair.R, pair.rho, jb.m[j], jb.mu[j])));
    }
    return out;
}

Action rep_N_action(const PlanckParam& p, const RepSpec& spec, const NPair& pair) {
    if (pair.rho.rows() != pair.R.dim()) throw DimensionMismatch("rep_N_action: pair dimension");
    auto jb = std::make_shared<JointBasis>(joint_basis(spec));
    auto pieces = std::make_shared<std::vector<Piece>>();
    for (size_t j = 0; j < jb->m.size(); ++j) pieces->push_back(make_piece(p, pair.R, pair.rho, jb->m[j], jb->mu[j]));
    const HermitianSpectral* x = &pair.R;
    const Index k = spec.carrier_dim();
    const Index n = pair.R.dim();
    return [jb, pieces, x, k, n](const Vec& w) -> Vec {
        if (w.size() != k * n) throw DimensionMismatch("rep action: vector dimension");
        Vec out = Vec::Zero(k * n);
        for (Index j = 0; j < k; ++j) {
            const Vec e = jb->vectors.col(j);
            Vec c = Vec::Zero(n);
            for (Index a = 0; a < k; ++a) c += std::conj(e[a]) * w.segment(a * n, n);
            const Vec fc = piece_apply(*x, (*pieces)[j], c);
            for (Index a = 0; a < k; ++a) out.segment(a * n, n) += e[a] * fc;
        }
        return out;
    };
}

Mat rep_N_formula(const PlanckParam& p, const NPair& carrier, const NPair& pair) {
    const HermitianSpectral mr = kron(carrier.R, pair.R);
    const Mat nu = kron(carrier.rho, pair.rho);
    FhSpectrum v = fh_spectrum(p, mr);
    return mr.apply_values(v.even) + cplx(0.0, 1.0) * mr.apply_values(v.odd) * nu;
}

Mat rep_M_build(const PlanckParam& p, const RepSpecM& spec, const MPair& pair) {
    const NPair image = map_M_to_N_tensor(spec.generator, pair);
    return fh_of_pair(p, image.R, image.rho);
}

double rep_equation_residual(const PlanckParam& p, const RepSpec& spec, const BlockSystem& sys,
                             const ExtensionData& ext, const HermitianSpectral& sum, const std::vector<Vec>& probes) {
    const NPair first = sys.first();
    const NPair second = sys.second();
    const NPair composite{sum, ext.sigma_tilde};
    Action lhs = compose(rep_N_action(p, spec, first), rep_N_action(p, spec, second));
    Action rhs = rep_N_action(p, spec, composite);
    return probe_residual(lhs, rhs, probes);
}

double rep_equation_residual_v1_only(const PlanckParam& p, const BlockSystem& sys, const HermitianSpectral& sum,
                                     const std::vector<Vec>& probes) {
    // V1(X) = F(X, .) with the reflection term dropped.
    auto even = [&p](const HermitianSpectral& x) { return act_values(x, fh_spectrum(p, x).even); };
    Action lhs = compose(even(sys.R), even(sys.S));
    Action rhs = even(sum);
    return probe_residual(lhs, rhs, probes);
}

V1V2 decompose_V1_V2(const Mat& v_plus, const Mat& v_minus) {
    if (v_plus.rows() != v_minus.rows() || v_plus.cols() != v_minus.cols())
        throw DimensionMismatch("decompose_V1_V2: shape mismatch");
    return {0.5 * (v_plus + v_minus), 0.5 * (v_plus - v_minus)};
}

Mat reconstruct(const V1V2& parts, int rho) { return parts.v1 + double(rho) * parts.v2; }

Mat rep_scalar(const PlanckParam& p, const NPair& carrier, double r, int rho) {
    const HermitianSpectral& m = carrier.R;
    Eigen::VectorXcd even(m.dim()), odd(m.dim());
    for (Index i = 0; i < m.dim(); ++i) {
        const double a = m.sign_of(i) == 0 ? 0.0 : r * m.eigenvalues()[i];
        FhPieces f = fh_pieces(p, a);
        even[i] = f.even;
        odd[i] = f.odd;
    }
    return m.apply_values(even) + cplx(0.0, double(rho)) * m.apply_values(odd) * carrier.rho;
}

std::vector<double> default_magnitudes() {
    std::vector<double> out;
    for (int i = 0; i < 9; ++i) out.push_back(std::exp(-2.0 + 0.5 * i));
    return out;
}

Validation commutation_suite(const PlanckParam& p, const NPair& carrier, const std::vector<double>& magnitudes,
                             double tol, double zero_tol) {
    struct Parts {
        V1V2 pos, neg;
    };
    std::vector<Parts> parts;
    for (double r : magnitudes)
        parts.push_back({decompose_V1_V2(rep_scalar(p, carrier, r, 1), rep_scalar(p, carrier, r, -1)),
                         decompose_V1_V2(rep_scalar(p, carrier, -r, 1), rep_scalar(p, carrier, -r, -1))});

    auto comm = [](const Mat& a, const Mat& b) { return (a * b - b * a).cwiseAbs().maxCoeff(); };
    double c[10] = {};
    double zero = 0.0;
    for (const auto& x : parts)
        for (const auto& y : parts) {
            c[0] = std::max(c[0], comm(x.pos.v1, y.pos.v1));
            c[1] = std::max(c[1], comm(x.neg.v1, y.neg.v1));
            c[2] = std::max(c[2], comm(x.pos.v1, y.neg.v1));
            c[3] = std::max(c[3], comm(x.pos.v2, y.pos.v2));
            c[4] = std::max(c[4], comm(x.neg.v2, y.neg.v2));
            c[5] = std::max({c[5], (x.pos.v2 * y.neg.v2).cwiseAbs().maxCoeff(),
                             (y.neg.v2 * x.pos.v2).cwiseAbs().maxCoeff()});
            c[6] = std::max(c[6], comm(x.pos.v1, y.pos.v2));
            c[7] = std::max(c[7], comm(x.neg.v1, y.neg.v2));
            c[8] = std::max(c[8], comm(x.pos.v1, y.neg.v2));
            c[9] = std::max(c[9], comm(x.neg.v1, y.pos.v2));
            zero = std::max(zero, (x.pos.v2 * y.neg.v2).norm());
        }
    static const char* names[10] = {"[V1(r), V1(s)]",   "[V1(-r), V1(-s)]", "[V1(r), V1(-s)]",  "[V2(r), V2(s)]",
                                    "[V2(-r), V2(-s)]", "V2(r) V2(-s) = 0", "[V1(r), V2(s)]",   "[V1(-r), V2(-s)]",
                                    "[V1(r), V2(-s)]",  "[V1(-r), V2(s)]"};
    Validation v;
    for (int i = 0; i < 10; ++i) v.add(names[i], c[i], tol);
    v.add("||V2(r) V2(-s)||", zero, zero_tol);
    return v;
}

namespace {

cplx model_value(const PlanckParam& p, double m, int mu, double r, int rho) {
    const double a = m * r;
    FhPieces f = fh_pieces(p, a);
    return f.even + cplx(0.0, double(mu * rho)) * f.odd;
}

}  // namespace

Dim1Samples sample_family(const PlanckParam& p, double m, int mu, const std::vector<double>& magnitudes) {
    Dim1Samples s;
    for (double sign : {1.0, -1.0})
        for (double r : magnitudes) {
            s.r.push_back(sign * r);
            s.plus.push_back(model_value(p, m, mu, sign * r, 1));
            s.minus.push_back(model_value(p, m, mu, sign * r, -1));
        }
    return s;
}

Dim1Samples sample_v1_only(const PlanckParam& p, double m, const std::vector<double>& magnitudes) {
    Dim1Samples s = sample_family(p, m, 1, magnitudes);
    for (size_t i = 0; i < s.r.size(); ++i) s.plus[i] = s.minus[i] = 0.5 * (s.plus[i] + s.minus[i]);
    return s;
}

const char* to_string(Dim1Case c) {
    switch (c) {
        case Dim1Case::PositiveM: return "M>0";
        case Dim1Case::NegativeM: return "M<0";
        case Dim1Case::Trivial: return "M=0";
        case Dim1Case::Reject: return "reject";
    }
    return "?";
}

Dim1Result dim1_classify(const PlanckParam& p, const Dim1Samples& samples, double fit_tol) {
    const size_t n = samples.r.size();
    if (n == 0 || samples.plus.size() != n || samples.minus.size() != n)
        throw DimensionMismatch("dim1_classify: sample arrays differ in length");
    constexpr double kZero = 1e-9;
    double v2_pos = 0.0, v2_neg = 0.0, dev_one = 0.0;
    bool has_pos = false, has_neg = false;
    for (size_t i = 0; i < n; ++i) {
        const double v2 = 0.5 * std::abs(samples.plus[i] - samples.minus[i]);
        if (samples.r[i] > 0) {
            v2_pos = std::max(v2_pos, v2);
            has_pos = true;
        } else if (samples.r[i] < 0) {
            v2_neg = std::max(v2_neg, v2);
            has_neg = true;
        }
        dev_one = std::max({dev_one, std::abs(samples.plus[i] - 1.0), std::abs(samples.minus[i] - 1.0)});
    }
    if (!has_pos || !has_neg) throw DomainError("dim1_classify needs samples on both half-lines");

    Dim1Result out;
    const bool zero_pos = v2_pos <= kZero;
    const bool zero_neg = v2_neg <= kZero;
    if (zero_pos && zero_neg) {
        out.kind = dev_one <= kZero ? Dim1Case::Trivial : Dim1Case::Reject;
        out.residual = dev_one;
        return out;
    }
    if (!zero_pos && !zero_neg) {
        out.kind = Dim1Case::Reject;
        out.residual = std::min(v2_pos, v2_neg);
        return out;
    }
    // V2 lives on r < 0 for M > 0 and on r > 0 for M < 0.
    const double sign = zero_pos ? 1.0 : -1.0;

    auto cost = [&](double logm, int mu) {
        const double m = sign * std::exp(logm);
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double a = std::arg(samples.plus[i] * std::conj(model_value(p, m, mu, samples.r[i], 1)));
            const double b = std::arg(samples.minus[i] * std::conj(model_value(p, m, mu, samples.r[i], -1)));
            acc += a * a + b * b;
        }
        return acc / (2.0 * n);
    };

    double best = std::numeric_limits<double>::infinity();
    for (int mu : {1, -1}) {
        constexpr int kScan = 81;
        std::vector<double> grid(kScan), vals(kScan);
        for (int i = 0; i < kScan; ++i) {
            grid[i] = -5.0 + 10.0 * i / (kScan - 1);
            vals[i] = cost(grid[i], mu);
        }
        // Ties go to the smaller |M|: strict comparison keeps the first minimum.
        int arg = 0;
        for (int i = 1; i < kScan; ++i)
            if (vals[i] < vals[arg]) arg = i;
        const double lo = grid[std::max(arg - 1, 0)];
        const double hi = grid[std::min(arg + 1, kScan - 1)];
        auto res = boost::math::tools::brent_find_minima([&](double x) { return cost(x, mu); }, lo, hi, 52);
        const double rms = std::sqrt(res.second);
        if (rms < best) {
            best = rms;
            out.m = sign * std::exp(res.first);
            out.mu = mu;
        }
    }
    out.kind = sign > 0 ? Dim1Case::PositiveM : Dim1Case::NegativeM;
    out.residual = best;
    if (best > fit_tol) throw FitFailure("dim1_classify: fit residual " + std::to_string(best) + " above tolerance");
    return out;
}

}  // namespace qbraid
