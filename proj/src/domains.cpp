#include "qbraid/domains.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbraid {

void Validation::add(std::string name, double residual, double tolerance) {
    items.push_back({std::move(name), residual, tolerance});
}

void Validation::append(const Validation& other, const std::string& prefix) {
    for (const auto& it : other.items) items.push_back({prefix + it.name, it.residual, it.tolerance});
}

bool Validation::passed() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed(); });
}

double Validation::worst() const {
    double w = 0.0;
    for (const auto& it : items) w = std::max(w, it.residual);
    return w;
}

const CheckItem& Validation::at(const std::string& name) const {
    for (const auto& it : items)
        if (it.name == name) return it;
    throw std::out_of_range("no check item " + name);
}

namespace {

void require_dim(Index a, Index b, const char* what) {
    if (a != b) throw DimensionMismatch(what);
}

void require_probes(const std::vector<Vec>& probes, Index n) {
    if (probes.empty()) throw DomainError("validation needs probes");
    for (const auto& w : probes) require_dim(w.size(), n, "probe dimension does not match the operator");
}

}  // namespace

Validation validate_N(const NPair& pair, const std::vector<Vec>& probes, double tol) {
    require_dim(pair.R.dim(), pair.rho.rows(), "NPair: R and rho differ in dimension");
    require_probes(probes, pair.R.dim());
    Validation v;
    v.add("rho hermitian", hermiticity_residual(pair.rho), tol);
    v.add("R rho = rho R", commutation_residual(act_z(pair.R), act(pair.rho), Style::Commute, probes), tol);
    Mat sq = pair.rho * pair.rho;
    v.add("rho^2 = chi(R!=0)", probe_residual(act(sq), act_projection(pair.R, Region::NonZero), probes), tol);
    return v;
}

Validation validate_M(const MPair& pair, const std::vector<Vec>& probes, double tol) {
    require_dim(pair.b.dim(), pair.beta.rows(), "MPair: b and beta differ in dimension");
    require_probes(probes, pair.b.dim());
    Validation v;
    v.add("beta hermitian", hermiticity_residual(pair.beta), tol);
    v.add("beta b = -b beta", commutation_residual(act_z(pair.b), act(pair.beta), Style::Anticommute, probes), tol);
    Mat sq = pair.beta * pair.beta;
    v.add("beta^2 = chi(b!=0)", probe_residual(act(sq), act_projection(pair.b, Region::NonZero), probes), tol);
    return v;
}

Validation validate_A(const APair& pair, const std::vector<Vec>& probes, double tol) {
    require_dim(pair.R.dim(), pair.rho_hat.rows(), "APair: R and rho_hat differ in dimension");
    require_probes(probes, pair.R.dim());
    Validation v;
    v.add("rho_hat hermitian", hermiticity_residual(pair.rho_hat), tol);
    v.add("R rho_hat = rho_hat R", commutation_residual(act_z(pair.R), act(pair.rho_hat), Style::Commute, probes), tol);
    Mat sq = pair.rho_hat * pair.rho_hat;
    v.add("rho_hat^2 = chi(R<0)", probe_residual(act(sq), act_projection(pair.R, Region::Negative), probes), tol);
    return v;
}

double weyl_residual(const PlanckParam& p, const HermitianSpectral& r, const HermitianSpectral& s,
                     const std::vector<Vec>& probes) {
    require_dim(r.dim(), s.dim(), "Weyl check: dimension mismatch");
    require_probes(probes, r.dim());
    double worst = 0.0;
    for (int l : {-2, -1, 1, 2})
        for (int k : {-2, -1, 1, 2}) {
            Action rl = act_imag_power(r, l);
            Action sk = act_imag_power(s, k);
            Action lhs = compose(rl, sk);
            Action rhs = scale(std::polar(1.0, p.hbar * l * k), compose(sk, rl));
            worst = std::max(worst, probe_residual(lhs, rhs, probes));
        }
    return worst;
}

namespace {

// R -o S: signs commute with both operators, imaginary powers satisfy Weyl.
void add_zakrzewski(Validation& v, const PlanckParam& p, const HermitianSpectral& r, const HermitianSpectral& s,
                    const std::vector<Vec>& probes, double tol, const std::string& label) {
    v.add(label + " weyl", weyl_residual(p, r, s, probes), tol);
    v.add(label + " [sign first, second]", commutation_residual(act_sign(r), act_z(s), Style::Commute, probes), tol);
    v.add(label + " [sign second, first]", commutation_residual(act_sign(s), act_z(r), Style::Commute, probes), tol);
}

}  // namespace

Validation validate_N2(const PlanckParam& p, const NPair& first, const NPair& second, const std::vector<Vec>& probes,
                       double tol) {
    require_dim(first.R.dim(), second.R.dim(), "validate_N2: dimension mismatch");
    Validation v;
    v.append(validate_N(first, probes, tol), "first: ");
    v.append(validate_N(second, probes, tol), "second: ");
    add_zakrzewski(v, p, first.R, second.R, probes, tol, "R -o S");
    v.add("S rho = -rho S", commutation_residual(act_z(second.R), act(first.rho), Style::Anticommute, probes), tol);
    v.add("R sigma = -sigma R", commutation_residual(act_z(first.R), act(second.rho), Style::Anticommute, probes), tol);
    v.add("rho sigma = sigma rho", commutation_residual(act(first.rho), act(second.rho), Style::Commute, probes), tol);
    return v;
}

Validation validate_M2(const PlanckParam& p, const MPair& first, const MPair& second, const std::vector<Vec>& probes,
                       double tol) {
    require_dim(first.b.dim(), second.b.dim(), "validate_M2: dimension mismatch");
    Validation v;
    v.append(validate_M(first, probes, tol), "first: ");
    v.append(validate_M(second, probes, tol), "second: ");
    add_zakrzewski(v, p, first.b, second.b, probes, tol, "b -o d");
    v.add("b delta = delta b", commutation_residual(act_z(first.b), act(second.beta), Style::Commute, probes), tol);
    v.add("d beta = beta d", commutation_residual(act_z(second.b), act(first.beta), Style::Commute, probes), tol);
    v.add("beta delta = delta beta", commutation_residual(act(first.beta), act(second.beta), Style::Commute, probes),
          tol);
    return v;
}

Mat block_pattern(const std::vector<std::pair<int, int>>& positions, Index n, const std::vector<cplx>& values) {
    Mat out = Mat::Zero(4 * n, 4 * n);
    for (size_t i = 0; i < positions.size(); ++i) {
        auto [r, c] = positions[i];
        cplx val = values.empty() ? cplx(1.0) : values.at(i);
        out.block((r - 1) * n, (c - 1) * n, n, n).diagonal().setConstant(val);
    }
    return out;
}

namespace {

HermitianSpectral signed_blocks(const HermitianSpectral& a, std::initializer_list<double> signs) {
    std::vector<HermitianSpectral> parts;
    for (double s : signs) parts.push_back(s > 0 ? a : a.scaled(-1.0));
    return direct_sum(parts);
}

BlockSystem assemble(BlockSystem::Kind kind, const PlanckParam& p, const Grid& g) {
    auto base = canonical_zakrzewski_pair(p, g);
    BlockSystem sys;
    sys.kind = kind;
    sys.p = p;
    sys.grid = g;
    sys.Rp = base.R;
    sys.Sp = base.S;
    sys.Tp = zakrzewski_quotient(base.R, base.S);
    sys.quotient_asymmetry = quotient_asymmetry(base.R, base.S);
    const Index n = g.n;
    sys.R = signed_blocks(sys.Rp, {1, 1, -1, -1});
    sys.S = signed_blocks(sys.Sp, {1, -1, 1, -1});
    sys.T = signed_blocks(sys.Tp, {1, -1, -1, 1});
    const Mat swap12 = block_pattern({{1, 2}, {2, 1}, {3, 4}, {4, 3}}, n);
    const Mat swap13 = block_pattern({{1, 3}, {3, 1}, {2, 4}, {4, 2}}, n);
    if (kind == BlockSystem::Kind::N) {
        sys.rho = swap12;
        sys.sigma = swap13;
    } else {
        sys.rho = swap13;  // beta
        sys.sigma = swap12;  // delta
    }
    sys.tau = double(p.parity()) * sys.rho * sys.sigma;
    sys.reflection = sys.tau * spectral_projection(sys.T, Region::Negative);
    return sys;
}

}  // namespace

BlockSystem build_N2_standard(const PlanckParam& p, const Grid& g) { return assemble(BlockSystem::Kind::N, p, g); }

BlockSystem build_M2_standard(const PlanckParam& p, const Grid& g) { return assemble(BlockSystem::Kind::M, p, g); }

HplusBlocks extract_hplus(const BlockSystem& sys) {
    const Index n = sys.hplus_dim();
    return {sys.R.matrix().block(0, 0, n, n), sys.S.matrix().block(0, 0, n, n)};
}

double quotient_consistency(const PlanckParam& p, const HermitianSpectral& r, const HermitianSpectral& s,
                            const HermitianSpectral& t, const std::vector<Vec>& probes) {
    double worst = 0.0;
    for (double e : {-1.0, -0.5, 0.5, 1.0}) {
        Action lhs = act_imag_power(t, e);
        Action rhs = scale(std::polar(1.0, 0.5 * p.hbar * e * e), compose(act_imag_power(r, e), act_imag_power(s, -e)));
        worst = std::max(worst, probe_residual(lhs, rhs, probes));
    }
    return worst;
}

APair map_N_to_A(const NPair& pair) { return {pair.R, pair.rho * spectral_projection(pair.R, Region::Negative)}; }

MPair map_N_to_M(const NPair& pair) {
    const Index n = pair.R.dim();
    Mat beta = Mat::Zero(2 * n, 2 * n);
    beta.block(0, n, n, n) = pair.rho;
    beta.block(n, 0, n, n) = pair.rho;
    return {direct_sum({pair.R, pair.R.scaled(-1.0)}), beta};
}

NPair map_M_to_N_tensor(const MPair& carrier, const MPair& pair) {
    if (carrier.b.dim() > 8) throw DimensionMismatch("carrier dimension above 8");
    return {kron(carrier.b, pair.b), kron(carrier.beta, pair.beta)};
}

}  // namespace qbraid
