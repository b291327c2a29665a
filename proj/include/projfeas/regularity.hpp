#pragma once

// Regularity constants of a set system at a common point and the linear
// rates they predict.
//
//   cbar (two sets)  max <u, v> over unit-ball normals u in N_F, v in -N_C
//   cond (m sets)    smallest k with sqrt(sum |y_i|^2) <= k |sum y_i|, y_i in N_i
//   cbar (averaged)  sqrt(1 - 1 / (m cond^2))
//   reg              1 / sqrt(1 - cbar)
//
// When every cone is a linear subspace the values are exact (singular values
// and Gram eigenvalues).  Otherwise they are maxima over deterministic
// direction samples, so they are lower bounds and carry EstimateMethod::kSampled.

#include "projfeas/normal_cone.hpp"
#include "projfeas/sets.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace projfeas {

enum class EstimateMethod { kExactSubspace, kSampled };
std::string_view to_string(EstimateMethod m);

enum class ModulusState {
    kFinite,
    kNotStronglyRegular,  // a nonzero choice of normals sums to zero
    kAllInterior,         // every cone is {0}; the modulus is zero
};
std::string_view to_string(ModulusState s);

struct SamplingOptions {
    int directions = 512;
};

/// Gram eigenvalues at or below this value are read as singular.
inline constexpr double kSingularGramTol = 1e-12;

struct CbarEstimate {
    double value = 0.0;  // in [0, 1]
    EstimateMethod method = EstimateMethod::kExactSubspace;
};

struct ConditionModulus {
    ModulusState state = ModulusState::kFinite;
    double value = 0.0;  // meaningful unless state == kNotStronglyRegular
    EstimateMethod method = EstimateMethod::kExactSubspace;

    bool finite() const { return state != ModulusState::kNotStronglyRegular; }
};

struct RegModulus {
    bool finite = true;
    double value = 1.0;
};

CbarEstimate cbar_pair(const NormalCone& nf, const NormalCone& nc,
                       const SamplingOptions& opts = {});

ConditionModulus cond_modulus(std::span<const NormalCone> cones,
                              const SamplingOptions& opts = {});

/// sqrt(1 - 1/(m k^2)); k = 0 gives 0.  Throws ArgumentError when k lies
/// strictly between 0 and the floor 1/sqrt(m).
double cbar_avg(int m_sets, double k);
/// Infinite modulus maps to 1.
double cbar_avg(int m_sets, const ConditionModulus& k);

RegModulus reg_modulus_pair(double cbar);

/// sqrt(c sqrt(1 - eps^2) + eps sqrt(1 - c^2)), the inexact alternating rate.
double inexact_rate(double c, double eps);

/// The two-set constant of the product reformulation: the product of the
/// cones against the complement of the diagonal.
std::pair<NormalCone, NormalCone> product_space_pair(std::span<const NormalCone> cones);

/// Directions sampled from the unit sphere of the cone; always includes the
/// generators themselves.
std::vector<Point> sample_unit_directions(const NormalCone& cone, int count);

struct RateInputs {
    double cbar_pairwise = 0.0;
    ConditionModulus cond;
    int m_sets = 2;
    std::optional<double> c_alternating;  // defaults to cbar_pairwise + 1e-6
    std::optional<double> c_averaged;     // defaults to cbar_avg + 1e-6
    EstimateMethod method = EstimateMethod::kExactSubspace;
};

struct RegularityReport {
    double cbar_pairwise = 0.0;
    ConditionModulus cond;
    double cbar_avg = 0.0;
    RegModulus reg_modulus;
    int m_sets = 2;
    double c_alternating = 0.0;
    double c_averaged = 0.0;
    double rate_alternating = 1.0;             // sqrt(c)
    double rate_alternating_both_super = 1.0;  // c
    double rate_averaged = 1.0;                // c
    double rate_averaged_super = 1.0;          // c^2
    double qlinear_factor = 1.0;               // 1 - 1/(k^2 m)
    // Two-set comparison with kappa = cond: averaged <= 1 - 1/(2 kappa^2),
    // alternating <= 1 - 1/kappa^2.
    std::optional<double> bound_averaged_kappa;
    std::optional<double> bound_alternating_kappa;
    EstimateMethod method = EstimateMethod::kExactSubspace;

    double rate_inexact(double eps) const { return inexact_rate(c_alternating, eps); }
};

RegularityReport predicted_rates(const RateInputs& in);

/// Normal cones of every set at xbar, then the full report.
RegularityReport analyze_regularity(std::span<const SetPtr> sets, const Point& xbar,
                                    const SamplingOptions& opts = {});

} // namespace projfeas
