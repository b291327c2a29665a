#include "projfeas/sets.hpp"

#include "projfeas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace projfeas {

std::string_view to_string(RegularityClass c) {
    switch (c) {
    case RegularityClass::kConvex: return "convex";
    case RegularityClass::kProxRegular: return "prox-regular";
    case RegularityClass::kSuperRegularOnly: return "super-regular-only";
    case RegularityClass::kUnclassified: return "unclassified";
    }
    return "unclassified";
}

RegularityClass weakest(RegularityClass a, RegularityClass b) {
    // Enum order runs from strongest to weakest.
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

// ---------------------------------------------------------------------------

double ProjectableSet::distance(const Point& x) const {
    check_dim(x, "distance");
    return (x - project(x)).norm();
}

bool ProjectableSet::contains(const Point& x) const {
    return distance(x) <= kMembershipTol * (1.0 + x.norm());
}

NormalCone ProjectableSet::normal_cone(const Point& x) const {
    check_dim(x, "normal_cone");
    if (!contains(x)) {
        throw DomainError("normal_cone: point is not a member of " + name());
    }
    return normal_cone_at(x);
}

void ProjectableSet::check_dim(const Point& x, std::string_view op) const {
    if (x.size() != ambient_dim()) {
        std::ostringstream msg;
        msg << name() << "::" << op << ": point has dimension " << x.size()
            << ", expected " << ambient_dim();
        throw ArgumentError(msg.str());
    }
}

// ---------------------------------------------------------------------------

AffineSubspace::AffineSubspace(Point anchor, const std::vector<Point>& directions)
    : anchor_(std::move(anchor)) {
    const Eigen::Index n = anchor_.size();
    for (const auto& d : directions) {
        if (d.size() != n) throw ArgumentError("AffineSubspace: direction dimension mismatch");
    }
    const auto q = orthonormal_basis(directions);
    basis_ = stack_columns(q, n);

    std::vector<Point> extended = q;
    for (Eigen::Index i = 0; i < n; ++i) extended.push_back(Point::Unit(n, i));
    const auto full = orthonormal_basis(extended, 1e-10);
    std::vector<Point> complement(full.begin() + static_cast<std::ptrdiff_t>(q.size()),
                                  full.end());
    complement_ = stack_columns(complement, n);
}

std::shared_ptr<AffineSubspace> AffineSubspace::line(Point anchor, const Point& direction) {
    return std::make_shared<AffineSubspace>(std::move(anchor), std::vector<Point>{direction});
}

std::string AffineSubspace::name() const {
    std::ostringstream s;
    s << "AffineSubspace(dim=" << basis_.cols() << " in R^" << anchor_.size() << ")";
    return s.str();
}

Projection AffineSubspace::projection(const Point& x) const {
    check_dim(x, "project");
    if (basis_.cols() == 0) return {anchor_, false};
    return {anchor_ + basis_ * (basis_.transpose() * (x - anchor_)), false};
}

NormalCone AffineSubspace::normal_cone_at(const Point& x) const {
    return NormalCone::subspace(complement_, x);
}

// ---------------------------------------------------------------------------

DiagonalLift::DiagonalLift(Eigen::Index base_dim, int copies)
    : base_dim_(base_dim), copies_(copies) {
    if (base_dim < 1 || copies < 1) {
        throw ArgumentError("DiagonalLift: base_dim and copies must be >= 1");
    }
}

std::string DiagonalLift::name() const {
    std::ostringstream s;
    s << "DiagonalLift(" << copies_ << " x R^" << base_dim_ << ")";
    return s.str();
}

Point DiagonalLift::lift(const Point& x) const {
    if (x.size() != base_dim_) throw ArgumentError("DiagonalLift::lift: dimension mismatch");
    return x.replicate(copies_, 1);
}

Point DiagonalLift::collapse(const Point& z) const {
    check_dim(z, "collapse");
    Point mean = Point::Zero(base_dim_);
    for (int i = 0; i < copies_; ++i) mean += z.segment(i * base_dim_, base_dim_);
    return mean / static_cast<double>(copies_);
}

Projection DiagonalLift::projection(const Point& x) const {
    return {lift(collapse(x)), false};
}

NormalCone DiagonalLift::normal_cone_at(const Point& x) const {
    // Helmert rows span the complement of the all-ones vector in R^copies;
    // tensoring with the identity gives {(u_1..u_m) : sum u_i = 0}.
    const Eigen::Index n = base_dim_;
    Matrix basis = Matrix::Zero(n * copies_, n * (copies_ - 1));
    for (int k = 1; k < copies_; ++k) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::Index col = (k - 1) * n + j;
            for (int i = 0; i < k; ++i) basis(i * n + j, col) = scale;
            basis(k * n + j, col) = -static_cast<double>(k) * scale;
        }
    }
    return NormalCone::subspace(std::move(basis), x);
}

// ---------------------------------------------------------------------------

ProductSet::ProductSet(std::vector<SetPtr> components) : components_(std::move(components)) {
    if (components_.empty()) throw ArgumentError("ProductSet: no components");
    for (const auto& c : components_) {
        if (!c) throw ArgumentError("ProductSet: null component");
        dim_ += c->ambient_dim();
    }
}

RegularityClass ProductSet::regularity_class() const {
    RegularityClass r = RegularityClass::kConvex;
    for (const auto& c : components_) r = weakest(r, c->regularity_class());
    return r;
}

std::string ProductSet::name() const {
    std::ostringstream s;
    s << "ProductSet(";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) s << " x ";
        s << components_[i]->name();
    }
    s << ")";
    return s.str();
}

Projection ProductSet::projection(const Point& x) const {
    check_dim(x, "project");
    Projection out{Point(dim_), false};
    Eigen::Index offset = 0;
    for (const auto& c : components_) {
        const Eigen::Index n = c->ambient_dim();
        Projection part = c->projection(x.segment(offset, n));
        out.point.segment(offset, n) = part.point;
        out.degenerate = out.degenerate || part.degenerate;
        offset += n;
    }
    return out;
}

NormalCone ProductSet::normal_cone_at(const Point& x) const {
    std::vector<NormalCone> blocks;
    blocks.reserve(components_.size());
    Eigen::Index offset = 0;
    for (const auto& c : components_) {
        const Eigen::Index n = c->ambient_dim();
        blocks.push_back(c->normal_cone(x.segment(offset, n)));
        offset += n;
    }
    return NormalCone::product(std::move(blocks));
}

// ---------------------------------------------------------------------------

Translate::Translate(SetPtr base, Point shift) : base_(std::move(base)), shift_(std::move(shift)) {
    if (!base_) throw ArgumentError("Translate: null base set");
    if (shift_.size() != base_->ambient_dim()) {
        throw ArgumentError("Translate: shift dimension mismatch");
    }
}

std::string Translate::name() const { return "Translate(" + base_->name() + ")"; }

Projection Translate::projection(const Point& x) const {
    check_dim(x, "project");
    Projection p = base_->projection(x - shift_);
    p.point += shift_;
    return p;
}

double Translate::distance(const Point& x) const {
    check_dim(x, "distance");
    return base_->distance(x - shift_);
}

NormalCone Translate::normal_cone_at(const Point& x) const {
    return base_->normal_cone(x - shift_).rebased(x);
}

// ---------------------------------------------------------------------------

LinfBall::LinfBall(Eigen::Index dim, double alpha) : dim_(dim), alpha_(alpha) {
    if (dim < 1) throw ArgumentError("LinfBall: dimension must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ArgumentError("LinfBall: alpha must be positive and finite");
    }
}

std::string LinfBall::name() const {
    std::ostringstream s;
    s << "LinfBall(alpha=" << alpha_ << ", R^" << dim_ << ")";
    return s.str();
}

Projection LinfBall::projection(const Point& x) const {
    check_dim(x, "project");
    return {x.cwiseMax(-alpha_).cwiseMin(alpha_), false};
}

NormalCone LinfBall::normal_cone_at(const Point& x) const {
    const double active = alpha_ - kMembershipTol * (1.0 + alpha_);
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < dim_; ++i) {
        if (std::abs(x(i)) >= active) idx.push_back(i);
    }
    Matrix rays = Matrix::Zero(dim_, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
        rays(idx[k], static_cast<Eigen::Index>(k)) = x(idx[k]) > 0.0 ? 1.0 : -1.0;
    }
    return NormalCone::ray_span(std::move(rays), x);
}

// ---------------------------------------------------------------------------

OrthonormalRows::OrthonormalRows(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw ArgumentError("OrthonormalRows: empty shape");
    if (rows > cols) {
        throw ArgumentError("OrthonormalRows: need rows <= cols for U U^T = I");
    }
}

std::string OrthonormalRows::name() const {
    std::ostringstream s;
    s << "OrthonormalRows(" << rows_ << "x" << cols_ << ")";
    return s.str();
}

Projection OrthonormalRows::projection(const Point& x) const {
    check_dim(x, "project");
    const ThinSvd f = thin_svd(unflatten(x, rows_, cols_));
    // Replacing every singular value by one; with r = rows this is left * right^T.
    const double smax = f.singulars(0);
    const double smin = f.singulars(f.singulars.size() - 1);
    const bool degenerate = smax == 0.0 || smin <= kDefaultRankTol * smax;
    return {flatten(f.left * f.right.transpose()), degenerate};
}

NormalCone OrthonormalRows::normal_cone_at(const Point& x) const {
    return NormalCone::symmetric_conjugation(unflatten(x, rows_, cols_));
}

// ---------------------------------------------------------------------------

RowSpace::RowSpace(Matrix dictionary, Eigen::Index rows, double rank_tol)
    : dictionary_(std::move(dictionary)), rows_(rows) {
    if (rows < 1 || dictionary_.size() == 0) {
        throw ArgumentError("RowSpace: empty dictionary or row count");
    }
    if (!all_finite(dictionary_)) throw ArgumentError("RowSpace: non-finite dictionary");
    row_projector_ = pseudo_inverse(dictionary_, rank_tol) * dictionary_;
}

std::string RowSpace::name() const {
    std::ostringstream s;
    s << "RowSpace(" << rows_ << "x" << dictionary_.cols() << ", W " << dictionary_.rows()
      << "x" << dictionary_.cols() << ")";
    return s.str();
}

Projection RowSpace::projection(const Point& x) const {
    check_dim(x, "project");
    const Matrix u = unflatten(x, rows_, dictionary_.cols());
    return {flatten(u * row_projector_), false};
}

NormalCone RowSpace::normal_cone_at(const Point& x) const {
    // Rows orthogonal to the row space of W: the trailing right singular vectors.
    const Eigen::Index m = dictionary_.cols();
    const SvdResult f = svd(dictionary_);
    const double cutoff =
        f.singulars.size() > 0 ? kDefaultRankTol * f.singulars(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < f.singulars.size() && f.singulars(rank) > cutoff) ++rank;
    const Eigen::Index nullity = m - rank;
    Matrix basis = Matrix::Zero(rows_ * m, rows_ * nullity);
    for (Eigen::Index i = 0; i < rows_; ++i) {
        for (Eigen::Index k = 0; k < nullity; ++k) {
            basis.col(i * nullity + k).segment(i * m, m) = f.right.col(rank + k);
        }
    }
    return NormalCone::subspace(std::move(basis), x);
}

// ---------------------------------------------------------------------------

Sphere::Sphere(Point center, double radius, CenterPolicy policy)
    : center_(std::move(center)), radius_(radius), policy_(policy) {
    if (center_.size() < 1) throw ArgumentError("Sphere: empty center");
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ArgumentError("Sphere: radius must be positive and finite");
    }
}

std::string Sphere::name() const {
    std::ostringstream s;
    s << "Sphere(r=" << radius_ << ", R^" << center_.size() << ")";
    return s.str();
}

Projection Sphere::projection(const Point& x) const {
    check_dim(x, "project");
    const Point offset = x - center_;
    const double n = offset.norm();
    if (n == 0.0) {
        if (policy_ == CenterPolicy::kThrow) {
            throw TieBreakError("Sphere::project: point is the center; projection is not unique");
        }
        return {center_ + radius_ * Point::Unit(center_.size(), 0), true};
    }
    return {center_ + (radius_ / n) * offset, false};
}

double Sphere::distance(const Point& x) const {
    check_dim(x, "distance");
    return std::abs((x - center_).norm() - radius_);
}

NormalCone Sphere::normal_cone_at(const Point& x) const {
    return NormalCone::single_ray(x - center_, true, x);
}

} // namespace projfeas
