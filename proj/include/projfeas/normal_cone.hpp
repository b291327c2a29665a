#pragma once

#include "projfeas/numkernel.hpp"

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace projfeas {

enum class ConeKind { kSubspace, kRaySpan, kSingleRay, kSymmetricConjugation, kProduct };

std::string_view to_string(ConeKind kind);

class NormalCone;

/// Linear subspace spanned by orthonormal columns.  Zero columns means {0}.
struct SubspaceCone {
    Matrix basis;
};

/// Nonnegative span of mutually orthogonal unit rays.
struct RaySpanCone {
    Matrix rays;
};

/// span{direction} when two-sided, the closed half-line through it otherwise.
struct SingleRayCone {
    Point direction;  // unit
    bool two_sided = true;
};

/// {A * base : A symmetric d x d} inside R^{d x m}, with base having orthonormal rows.
struct SymmetricConjugationCone {
    Matrix base;
};

struct ProductCone {
    std::vector<NormalCone> blocks;
};

/// Exact description of the (limiting) normal cone of a concrete set at a point.
class NormalCone {
public:
    using Data = std::variant<SubspaceCone, RaySpanCone, SingleRayCone,
                              SymmetricConjugationCone, ProductCone>;

    NormalCone(Data data, Point base_point);

    static NormalCone subspace(Matrix basis, Point base_point);
    static NormalCone ray_span(Matrix rays, Point base_point);
    static NormalCone single_ray(const Point& direction, bool two_sided, Point base_point);
    static NormalCone symmetric_conjugation(Matrix base);
    static NormalCone product(std::vector<NormalCone> blocks);

    const Data& data() const { return data_; }
    ConeKind kind() const;
    const Point& base_point() const { return base_point_; }
    Eigen::Index dim() const { return base_point_.size(); }

    /// Same cone attached to a different base point (used for translates).
    NormalCone rebased(Point base_point) const;

private:
    Data data_;
    Point base_point_;
};

/// Orthogonal decomposition cone = span(lineal) + cone+(rays), with all
/// columns orthonormal and rays orthogonal to lineal.
struct ConeGenerators {
    Matrix lineal;
    Matrix rays;
};

ConeGenerators generators(const NormalCone& cone);

/// Orthonormal basis when the cone is a linear subspace, nullopt otherwise.
std::optional<Matrix> linear_basis(const NormalCone& cone);

bool is_zero_cone(const NormalCone& cone);

/// Nearest point of the cone to v.
Point project_onto_cone(const NormalCone& cone, const Point& v);

/// Euclidean distance from v to the cone.
double normal_cone_distance(const NormalCone& cone, const Point& v);

} // namespace projfeas
