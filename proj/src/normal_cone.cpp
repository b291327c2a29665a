#include "projfeas/normal_cone.hpp"

#include "projfeas/errors.hpp"

#include <cmath>

namespace projfeas {

std::string_view to_string(ConeKind kind) {
    switch (kind) {
    case ConeKind::kSubspace: return "subspace";
    case ConeKind::kRaySpan: return "ray-span";
    case ConeKind::kSingleRay: return "single-ray";
    case ConeKind::kSymmetricConjugation: return "symmetric-conjugation";
    case ConeKind::kProduct: return "product";
    }
    return "unknown";
}

NormalCone::NormalCone(Data data, Point base_point)
    : data_(std::move(data)), base_point_(std::move(base_point)) {}

NormalCone NormalCone::subspace(Matrix basis, Point base_point) {
    if (basis.rows() != base_point.size()) {
        throw ArgumentError("subspace cone: basis rows differ from ambient dimension");
    }
    return NormalCone(SubspaceCone{std::move(basis)}, std::move(base_point));
}

NormalCone NormalCone::ray_span(Matrix rays, Point base_point) {
    if (rays.rows() != base_point.size()) {
        throw ArgumentError("ray cone: generator rows differ from ambient dimension");
    }
    return NormalCone(RaySpanCone{std::move(rays)}, std::move(base_point));
}

NormalCone NormalCone::single_ray(const Point& direction, bool two_sided, Point base_point) {
    const double n = direction.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw ArgumentError("single-ray cone: direction must be finite and nonzero");
    }
    return NormalCone(SingleRayCone{direction / n, two_sided}, std::move(base_point));
}

NormalCone NormalCone::symmetric_conjugation(Matrix base) {
    Point bp = flatten(base);
    return NormalCone(SymmetricConjugationCone{std::move(base)}, std::move(bp));
}

NormalCone NormalCone::product(std::vector<NormalCone> blocks) {
    Eigen::Index total = 0;
    for (const auto& b : blocks) total += b.dim();
    Point bp(total);
    Eigen::Index offset = 0;
    for (const auto& b : blocks) {
        bp.segment(offset, b.dim()) = b.base_point();
        offset += b.dim();
    }
    return NormalCone(ProductCone{std::move(blocks)}, std::move(bp));
}

ConeKind NormalCone::kind() const {
    return static_cast<ConeKind>(data_.index());
}

NormalCone NormalCone::rebased(Point base_point) const {
    if (base_point.size() != dim()) {
        throw ArgumentError("rebased: dimension mismatch");
    }
    return NormalCone(data_, std::move(base_point));
}

namespace {

Matrix symmetric_part(const Matrix& a) { return 0.5 * (a + a.transpose()); }

Matrix symmetric_conjugation_basis(const Matrix& base) {
    const Eigen::Index d = base.rows();
    std::vector<Point> vecs;
    vecs.reserve(static_cast<std::size_t>(d * (d + 1) / 2));
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            Matrix e = Matrix::Zero(d, d);
            if (i == j) {
                e(i, i) = 1.0;
            } else {
                e(i, j) = e(j, i) = std::sqrt(0.5);
            }
            vecs.push_back(flatten(e * base));
        }
    }
    return stack_columns(orthonormal_basis(vecs), base.size());
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    Eigen::Index rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix out = Matrix::Zero(rows, cols);
    Eigen::Index r = 0, c = 0;
    for (const auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

struct GeneratorVisitor {
    Eigen::Index dim;

    ConeGenerators operator()(const SubspaceCone& s) const {
        return {s.basis, Matrix(dim, 0)};
    }
    ConeGenerators operator()(const RaySpanCone& r) const {
        return {Matrix(dim, 0), r.rays};
    }
    ConeGenerators operator()(const SingleRayCone& s) const {
        Matrix col = s.direction;
        if (s.two_sided) return {col, Matrix(dim, 0)};
        return {Matrix(dim, 0), col};
    }
    ConeGenerators operator()(const SymmetricConjugationCone& s) const {
        return {symmetric_conjugation_basis(s.base), Matrix(dim, 0)};
    }
    ConeGenerators operator()(const ProductCone& p) const {
        std::vector<Matrix> lineals, rays;
        for (const auto& b : p.blocks) {
            auto g = generators(b);
            lineals.push_back(std::move(g.lineal));
            rays.push_back(std::move(g.rays));
        }
        return {block_diagonal(lineals), block_diagonal(rays)};
    }
};

struct ProjectVisitor {
    const Point& v;

    Point operator()(const SubspaceCone& s) const {
        if (s.basis.cols() == 0) return Point::Zero(v.size());
        return s.basis * (s.basis.transpose() * v);
    }
    Point operator()(const RaySpanCone& r) const {
        Point out = Point::Zero(v.size());
        for (Eigen::Index j = 0; j < r.rays.cols(); ++j) {
            const double a = r.rays.col(j).dot(v);
            if (a > 0.0) out += a * r.rays.col(j);
        }
        return out;
    }
    Point operator()(const SingleRayCone& s) const {
        double a = s.direction.dot(v);
        if (!s.two_sided && a < 0.0) a = 0.0;
        return a * s.direction;
    }
    Point operator()(const SymmetricConjugationCone& s) const {
        const Matrix vm = unflatten(v, s.base.rows(), s.base.cols());
        const Matrix a = symmetric_part(vm * s.base.transpose());
        return flatten(a * s.base);
    }
    Point operator()(const ProductCone& p) const {
        Point out(v.size());
        Eigen::Index offset = 0;
        for (const auto& b : p.blocks) {
            out.segment(offset, b.dim()) = project_onto_cone(b, v.segment(offset, b.dim()));
            offset += b.dim();
        }
        return out;
    }
};

} // namespace

ConeGenerators generators(const NormalCone& cone) {
    return std::visit(GeneratorVisitor{cone.dim()}, cone.data());
}

std::optional<Matrix> linear_basis(const NormalCone& cone) {
    ConeGenerators g = generators(cone);
    if (g.rays.cols() > 0) return std::nullopt;
    return std::move(g.lineal);
}

bool is_zero_cone(const NormalCone& cone) {
    const ConeGenerators g = generators(cone);
    return g.lineal.cols() == 0 && g.rays.cols() == 0;
}

Point project_onto_cone(const NormalCone& cone, const Point& v) {
    if (v.size() != cone.dim()) {
        throw ArgumentError("normal cone: vector dimension mismatch");
    }
    return std::visit(ProjectVisitor{v}, cone.data());
}

double normal_cone_distance(const NormalCone& cone, const Point& v) {
    return (v - project_onto_cone(cone, v)).norm();
}

} // namespace projfeas
