#pragma once

#include "projfeas/normal_cone.hpp"
#include "projfeas/numkernel.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace projfeas {

/// User-declared niceness class of a set.  Used to pick which rate guarantee
/// applies; it is metadata and is never verified numerically.
enum class RegularityClass { kConvex, kProxRegular, kSuperRegularOnly, kUnclassified };

std::string_view to_string(RegularityClass c);

/// The weaker of two classes (convex > prox-regular > super-regular > unclassified).
RegularityClass weakest(RegularityClass a, RegularityClass b);

/// Relative membership tolerance: x is in S when d_S(x) <= kMembershipTol * (1 + |x|).
inline constexpr double kMembershipTol = 1e-9;

struct Projection {
    Point point;
    bool degenerate = false;  // nearest point not unique; deterministic representative
};

/// A closed subset of a Euclidean space with a computable nearest-point map.
class ProjectableSet {
public:
    virtual ~ProjectableSet() = default;

    virtual Eigen::Index ambient_dim() const = 0;
    virtual RegularityClass regularity_class() const = 0;
    virtual std::string name() const = 0;

    /// A nearest point of the set to x, flagged when the choice was a tie-break.
    virtual Projection projection(const Point& x) const = 0;

    Point project(const Point& x) const { return projection(x).point; }
    virtual double distance(const Point& x) const;
    bool contains(const Point& x) const;

    /// Normal cone at a member point; throws DomainError for non-members.
    NormalCone normal_cone(const Point& x) const;

protected:
    void check_dim(const Point& x, std::string_view op) const;
    virtual NormalCone normal_cone_at(const Point& x) const = 0;
};

using SetPtr = std::shared_ptr<const ProjectableSet>;

/// anchor + span(directions).
class AffineSubspace final : public ProjectableSet {
public:
    AffineSubspace(Point anchor, const std::vector<Point>& directions);

    /// Line through anchor with the given direction.
    static std::shared_ptr<AffineSubspace> line(Point anchor, const Point& direction);

    Eigen::Index ambient_dim() const override { return anchor_.size(); }
    RegularityClass regularity_class() const override { return RegularityClass::kConvex; }
    std::string name() const override;
    Projection projection(const Point& x) const override;

    const Point& anchor() const { return anchor_; }
    const Matrix& direction_basis() const { return basis_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    Point anchor_;
    Matrix basis_;
    Matrix complement_;
};

/// {(x, ..., x)} inside E^copies, the diagonal of the product space.
class DiagonalLift final : public ProjectableSet {
public:
    DiagonalLift(Eigen::Index base_dim, int copies);

    Eigen::Index ambient_dim() const override { return base_dim_ * copies_; }
    RegularityClass regularity_class() const override { return RegularityClass::kConvex; }
    std::string name() const override;
    Projection projection(const Point& x) const override;

    /// The diagonal embedding x -> (x, ..., x).
    Point lift(const Point& x) const;
    /// Mean of the blocks; the inverse of lift on the diagonal.
    Point collapse(const Point& z) const;

    Eigen::Index base_dim() const { return base_dim_; }
    int copies() const { return copies_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    Eigen::Index base_dim_;
    int copies_;
};

/// Cartesian product of component sets, coordinates concatenated in order.
class ProductSet final : public ProjectableSet {
public:
    explicit ProductSet(std::vector<SetPtr> components);

    Eigen::Index ambient_dim() const override { return dim_; }
    RegularityClass regularity_class() const override;
    std::string name() const override;
    Projection projection(const Point& x) const override;

    const std::vector<SetPtr>& components() const { return components_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    std::vector<SetPtr> components_;
    Eigen::Index dim_ = 0;
};

/// shift + base.
class Translate final : public ProjectableSet {
public:
    Translate(SetPtr base, Point shift);

    Eigen::Index ambient_dim() const override { return base_->ambient_dim(); }
    RegularityClass regularity_class() const override { return base_->regularity_class(); }
    std::string name() const override;
    Projection projection(const Point& x) const override;
    double distance(const Point& x) const override;

    const Point& shift() const { return shift_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    SetPtr base_;
    Point shift_;
};

/// {x : |x_i| <= alpha for all i}.
class LinfBall final : public ProjectableSet {
public:
    LinfBall(Eigen::Index dim, double alpha);

    Eigen::Index ambient_dim() const override { return dim_; }
    RegularityClass regularity_class() const override { return RegularityClass::kConvex; }
    std::string name() const override;
    Projection projection(const Point& x) const override;

    double alpha() const { return alpha_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    Eigen::Index dim_;
    double alpha_;
};

/// d x m matrices with U U^T = I (flattened row-major); requires d <= m.
class OrthonormalRows final : public ProjectableSet {
public:
    OrthonormalRows(Eigen::Index rows, Eigen::Index cols);

    Eigen::Index ambient_dim() const override { return rows_ * cols_; }
    RegularityClass regularity_class() const override { return RegularityClass::kProxRegular; }
    std::string name() const override;
    Projection projection(const Point& x) const override;

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    Eigen::Index rows_;
    Eigen::Index cols_;
};

/// {U = P W} for a fixed n x m dictionary W: d x m matrices whose rows lie in
/// the row space of W.
class RowSpace final : public ProjectableSet {
public:
    RowSpace(Matrix dictionary, Eigen::Index rows, double rank_tol = kDefaultRankTol);

    Eigen::Index ambient_dim() const override { return rows_ * dictionary_.cols(); }
    RegularityClass regularity_class() const override { return RegularityClass::kConvex; }
    std::string name() const override;
    Projection projection(const Point& x) const override;

    const Matrix& dictionary() const { return dictionary_; }
    /// W^+ W, the orthogonal projector onto the row space of W.
    const Matrix& row_projector() const { return row_projector_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    Matrix dictionary_;
    Eigen::Index rows_;
    Matrix row_projector_;
};

/// What Sphere::projection does at the center, where every sphere point is nearest.
enum class CenterPolicy { kThrow, kFirstAxis };

class Sphere final : public ProjectableSet {
public:
    Sphere(Point center, double radius, CenterPolicy policy = CenterPolicy::kThrow);

    Eigen::Index ambient_dim() const override { return center_.size(); }
    RegularityClass regularity_class() const override { return RegularityClass::kProxRegular; }
    std::string name() const override;
    Projection projection(const Point& x) const override;
    double distance(const Point& x) const override;

    const Point& center() const { return center_; }
    double radius() const { return radius_; }

protected:
    NormalCone normal_cone_at(const Point& x) const override;

private:
    Point center_;
    double radius_;
    CenterPolicy policy_;
};

} // namespace projfeas
