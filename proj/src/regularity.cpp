#include "projfeas/regularity.hpp"

#include "projfeas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace projfeas {

std::string_view to_string(EstimateMethod m) {
    return m == EstimateMethod::kExactSubspace ? "exact-subspace" : "sampled";
}

std::string_view to_string(ModulusState s) {
    switch (s) {
    case ModulusState::kFinite: return "finite";
    case ModulusState::kNotStronglyRegular: return "not-strongly-regular";
    case ModulusState::kAllInterior: return "all-interior";
    }
    return "finite";
}

namespace {

double frac(double v) { return v - std::floor(v); }

/// Point i of n on the unit sphere of R^k.  k = 2: equally spaced angles;
/// k = 3: Fibonacci sphere; k >= 4: additive-recurrence (golden-ratio
/// generalization) lattice pushed through Box-Muller and normalized.
Eigen::VectorXd sphere_point(Eigen::Index k, int i, int n) {
    Eigen::VectorXd w(k);
    const double t = static_cast<double>(i);
    if (k == 1) {
        w(0) = (i % 2 == 0) ? 1.0 : -1.0;
    } else if (k == 2) {
        const double a = 2.0 * std::numbers::pi * (t + 0.5) / n;
        w << std::cos(a), std::sin(a);
    } else if (k == 3) {
        const double z = 1.0 - (2.0 * t + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
        const double phi = golden_angle * t;
        w << r * std::cos(phi), r * std::sin(phi), z;
    } else {
        const Eigen::Index dims = k + (k % 2);
        double g = 2.0;
        for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / static_cast<double>(dims + 1));
        Eigen::VectorXd u(dims);
        double alpha = 1.0;
        for (Eigen::Index j = 0; j < dims; ++j) {
            alpha /= g;
            u(j) = std::max(frac(0.5 + (t + 1.0) * alpha), 1e-300);
        }
        for (Eigen::Index j = 0; j < k; j += 2) {
            const double radius = std::sqrt(-2.0 * std::log(u(j)));
            const double angle = 2.0 * std::numbers::pi * u(j + 1);
            w(j) = radius * std::cos(angle);
            if (j + 1 < k) w(j + 1) = radius * std::sin(angle);
        }
        const double nw = w.norm();
        if (nw > 0.0) w /= nw;
    }
    return w;
}

void check_same_base(const NormalCone& a, const NormalCone& b, std::string_view op) {
    if (a.dim() != b.dim()) {
        throw ArgumentError(std::string(op) + ": cones live in different dimensions");
    }
    const double gap = (a.base_point() - b.base_point()).norm();
    if (gap > kMembershipTol * (1.0 + a.base_point().norm())) {
        throw ArgumentError(std::string(op) + ": cones are attached to different points");
    }
}

} // namespace

std::vector<Point> sample_unit_directions(const NormalCone& cone, int count) {
    const ConeGenerators g = generators(cone);
    const Eigen::Index k1 = g.lineal.cols();
    const Eigen::Index k2 = g.rays.cols();
    const Eigen::Index k = k1 + k2;
    std::vector<Point> out;
    if (k == 0) return out;
    for (Eigen::Index j = 0; j < k1; ++j) {
        out.push_back(g.lineal.col(j));
        out.push_back(-g.lineal.col(j));
    }
    for (Eigen::Index j = 0; j < k2; ++j) out.push_back(g.rays.col(j));
    for (int i = 0; i < count; ++i) {
        const Eigen::VectorXd w = sphere_point(k, i, count);
        Point u = Point::Zero(cone.dim());
        if (k1 > 0) u += g.lineal * w.head(k1);
        if (k2 > 0) u += g.rays * w.tail(k2).cwiseAbs();
        const double nu = u.norm();
        if (nu > 0.0) out.push_back(u / nu);
    }
    return out;
}

CbarEstimate cbar_pair(const NormalCone& nf, const NormalCone& nc, const SamplingOptions& opts) {
    check_same_base(nf, nc, "cbar_pair");
    if (is_zero_cone(nf) || is_zero_cone(nc)) return {0.0, EstimateMethod::kExactSubspace};

    const auto qf = linear_basis(nf);
    const auto qc = linear_basis(nc);
    if (qf && qc) {
        const Matrix cross = qf->transpose() * *qc;
        const Eigen::JacobiSVD<Matrix> s(cross);
        return {std::clamp(s.singularValues()(0), 0.0, 1.0), EstimateMethod::kExactSubspace};
    }
    // For a closed convex cone K, max over v in K with |v| <= 1 of <w, v> is
    // |P_K(w)|, so only one side needs sampling.
    const bool sample_f = !qf;
    const NormalCone& sampled = sample_f ? nf : nc;
    const NormalCone& other = sample_f ? nc : nf;
    double best = 0.0;
    for (const auto& u : sample_unit_directions(sampled, opts.directions)) {
        best = std::max(best, project_onto_cone(other, -u).norm());
    }
    return {std::clamp(best, 0.0, 1.0), EstimateMethod::kSampled};
}

ConditionModulus cond_modulus(std::span<const NormalCone> cones, const SamplingOptions& opts) {
    if (cones.size() < 2) throw ArgumentError("cond_modulus: need at least two cones");
    for (std::size_t i = 1; i < cones.size(); ++i) {
        check_same_base(cones[0], cones[i], "cond_modulus");
    }
    const bool all_zero = std::all_of(cones.begin(), cones.end(),
                                      [](const NormalCone& c) { return is_zero_cone(c); });
    if (all_zero) return {ModulusState::kAllInterior, 0.0, EstimateMethod::kExactSubspace};

    std::vector<Matrix> bases;
    bool all_subspace = true;
    for (const auto& c : cones) {
        auto q = linear_basis(c);
        if (!q) {
            all_subspace = false;
            break;
        }
        bases.push_back(std::move(*q));
    }

    const Eigen::Index n = cones[0].dim();
    if (all_subspace) {
        Eigen::Index total = 0;
        for (const auto& b : bases) total += b.cols();
        if (total > n) {
            return {ModulusState::kNotStronglyRegular, 0.0, EstimateMethod::kExactSubspace};
        }
        Matrix g(n, total);
        Eigen::Index col = 0;
        for (const auto& b : bases) {
            g.middleCols(col, b.cols()) = b;
            col += b.cols();
        }
        const double lambda = gram_min_eig(g);
        if (lambda <= kSingularGramTol) {
            return {ModulusState::kNotStronglyRegular, 0.0, EstimateMethod::kExactSubspace};
        }
        return {ModulusState::kFinite, 1.0 / std::sqrt(lambda), EstimateMethod::kExactSubspace};
    }

    // Unit vectors (y_1..y_m) of the product cone; each gives k >= 1/|sum y_i|.
    const NormalCone product = NormalCone::product({cones.begin(), cones.end()});
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& y : sample_unit_directions(product, opts.directions)) {
        Point sum = Point::Zero(n);
        for (std::size_t i = 0; i < cones.size(); ++i) {
            sum += y.segment(static_cast<Eigen::Index>(i) * n, n);
        }
        smallest = std::min(smallest, sum.norm());
    }
    if (smallest <= std::sqrt(kSingularGramTol)) {
        return {ModulusState::kNotStronglyRegular, 0.0, EstimateMethod::kSampled};
    }
    return {ModulusState::kFinite, 1.0 / smallest, EstimateMethod::kSampled};
}

double cbar_avg(int m_sets, double k) {
    if (m_sets < 1) throw ArgumentError("cbar_avg: m_sets must be >= 1");
    if (k == 0.0) return 0.0;
    const double floor = 1.0 / std::sqrt(static_cast<double>(m_sets));
    if (!(k >= floor * (1.0 - 1e-12))) {
        std::ostringstream msg;
        msg << "cbar_avg: condition modulus " << k << " is below the floor 1/sqrt(m) = " << floor;
        throw ArgumentError(msg.str());
    }
    const double c2 = 1.0 - 1.0 / (static_cast<double>(m_sets) * k * k);
    return std::sqrt(std::max(0.0, c2));
}

double cbar_avg(int m_sets, const ConditionModulus& k) {
    switch (k.state) {
    case ModulusState::kNotStronglyRegular: return 1.0;
    case ModulusState::kAllInterior: return 0.0;
    case ModulusState::kFinite: break;
    }
    return cbar_avg(m_sets, k.value);
}

RegModulus reg_modulus_pair(double cbar) {
    if (!(cbar >= 0.0)) throw ArgumentError("reg_modulus_pair: cbar must be nonnegative");
    if (cbar >= 1.0) return {false, std::numeric_limits<double>::infinity()};
    return {true, 1.0 / std::sqrt(1.0 - cbar)};
}

double inexact_rate(double c, double eps) {
    if (!(c >= 0.0 && c <= 1.0)) throw ArgumentError("inexact_rate: c must lie in [0, 1]");
    if (!(eps >= 0.0 && eps < 1.0)) throw ArgumentError("inexact_rate: eps must lie in [0, 1)");
    return std::sqrt(c * std::sqrt(1.0 - eps * eps) + eps * std::sqrt(1.0 - c * c));
}

std::pair<NormalCone, NormalCone> product_space_pair(std::span<const NormalCone> cones) {
    if (cones.size() < 2) throw ArgumentError("product_space_pair: need at least two cones");
    const Eigen::Index n = cones[0].dim();
    for (const auto& c : cones) {
        if (c.dim() != n) throw ArgumentError("product_space_pair: dimension mismatch");
    }
    const int m = static_cast<int>(cones.size());
    const DiagonalLift diagonal(n, m);
    NormalCone complement = diagonal.normal_cone(diagonal.lift(cones[0].base_point()));
    return {NormalCone::product({cones.begin(), cones.end()}), std::move(complement)};
}

namespace {

double resolve_c(std::optional<double> supplied, double cbar, std::string_view which) {
    if (supplied) {
        const double c = *supplied;
        if (!(c > cbar && c < 1.0)) {
            std::ostringstream msg;
            msg << "predicted_rates: " << which << " constant c = " << c
                << " must lie in (cbar, 1) with cbar = " << cbar;
            throw ArgumentError(msg.str());
        }
        return c;
    }
    return std::min(cbar + 1e-6, 1.0);
}

} // namespace

RegularityReport predicted_rates(const RateInputs& in) {
    if (in.m_sets < 2) throw ArgumentError("predicted_rates: m_sets must be >= 2");
    if (!(in.cbar_pairwise >= 0.0 && in.cbar_pairwise <= 1.0)) {
        throw ArgumentError("predicted_rates: cbar must lie in [0, 1]");
    }
    RegularityReport r;
    r.cbar_pairwise = in.cbar_pairwise;
    r.cond = in.cond;
    r.m_sets = in.m_sets;
    r.method = in.method;
    r.cbar_avg = cbar_avg(in.m_sets, in.cond);
    r.reg_modulus = reg_modulus_pair(in.cbar_pairwise);

    r.c_alternating = resolve_c(in.c_alternating, in.cbar_pairwise, "alternating");
    r.c_averaged = resolve_c(in.c_averaged, r.cbar_avg, "averaged");
    r.rate_alternating = std::sqrt(r.c_alternating);
    r.rate_alternating_both_super = r.c_alternating;
    r.rate_averaged = r.c_averaged;
    r.rate_averaged_super = r.c_averaged * r.c_averaged;

    const double m = static_cast<double>(in.m_sets);
    switch (in.cond.state) {
    case ModulusState::kAllInterior: r.qlinear_factor = 0.0; break;
    case ModulusState::kNotStronglyRegular: r.qlinear_factor = 1.0; break;
    case ModulusState::kFinite: {
        const double k = in.cond.value;
        r.qlinear_factor = 1.0 - 1.0 / (k * k * m);
        if (in.m_sets == 2) {
            r.bound_averaged_kappa = 1.0 - 1.0 / (2.0 * k * k);
            r.bound_alternating_kappa = 1.0 - 1.0 / (k * k);
        }
        break;
    }
    }
    return r;
}

RegularityReport analyze_regularity(std::span<const SetPtr> sets, const Point& xbar,
                                    const SamplingOptions& opts) {
    if (sets.size() < 2) throw ArgumentError("analyze_regularity: need at least two sets");
    std::vector<NormalCone> cones;
    cones.reserve(sets.size());
    for (const auto& s : sets) cones.push_back(s->normal_cone(xbar));

    CbarEstimate pair;
    if (cones.size() == 2) {
        pair = cbar_pair(cones[0], cones[1], opts);
    } else {
        const auto [product, complement] = product_space_pair(cones);
        pair = cbar_pair(product, complement, opts);
    }
    const ConditionModulus cond = cond_modulus(cones, opts);

    RateInputs in;
    in.cbar_pairwise = pair.value;
    in.cond = cond;
    in.m_sets = static_cast<int>(sets.size());
    in.method = (pair.method == EstimateMethod::kSampled || cond.method == EstimateMethod::kSampled)
                    ? EstimateMethod::kSampled
                    : EstimateMethod::kExactSubspace;
    return predicted_rates(in);
}

} // namespace projfeas
