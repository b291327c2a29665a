#include "projfeas/numkernel.hpp"

#include "projfeas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace projfeas {

bool all_finite(const Matrix& m) { return m.allFinite(); }

namespace {

template <int Options>
Eigen::JacobiSVD<Matrix> run_jacobi(const Matrix& m) {
    if (!m.allFinite()) {
        throw DecompositionError("svd: input contains non-finite entries");
    }
    Eigen::JacobiSVD<Matrix> solver(m, Options);
    if (solver.info() != Eigen::Success) {
        throw DecompositionError("svd: Jacobi sweeps did not converge");
    }
    return solver;
}

} // namespace

SvdResult svd(const Matrix& m) {
    if (m.size() == 0) {
        return {Matrix::Identity(m.rows(), m.rows()), Eigen::VectorXd(0),
                Matrix::Identity(m.cols(), m.cols())};
    }
    auto solver = run_jacobi<Eigen::ComputeFullU | Eigen::ComputeFullV>(m);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

ThinSvd thin_svd(const Matrix& m) {
    if (m.size() == 0) {
        return {Matrix(m.rows(), 0), Eigen::VectorXd(0), Matrix(m.cols(), 0)};
    }
    auto solver = run_jacobi<Eigen::ComputeThinU | Eigen::ComputeThinV>(m);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix pseudo_inverse(const Matrix& m, double rank_tol) {
    if (!(rank_tol > 0.0)) {
        throw ArgumentError("pseudo_inverse: rank_tol must be positive");
    }
    Matrix result = Matrix::Zero(m.cols(), m.rows());
    if (m.size() == 0) return result;
    const ThinSvd f = thin_svd(m);
    const double sigma_max = f.singulars.size() > 0 ? f.singulars(0) : 0.0;
    if (sigma_max == 0.0) return result;
    const double cutoff = rank_tol * sigma_max;
    for (Eigen::Index i = 0; i < f.singulars.size(); ++i) {
        const double s = f.singulars(i);
        if (s <= cutoff) break;
        result.noalias() += (f.right.col(i) / s) * f.left.col(i).transpose();
    }
    return result;
}

std::vector<Point> orthonormal_basis(const std::vector<Point>& vectors, double rank_tol) {
    std::vector<Point> basis;
    if (vectors.empty()) return basis;
    const Eigen::Index dim = vectors.front().size();
    double scale = 0.0;
    for (const auto& v : vectors) {
        if (v.size() != dim) {
            throw ArgumentError("orthonormal_basis: vectors differ in dimension");
        }
        scale = std::max(scale, v.norm());
    }
    if (scale == 0.0) return basis;
    const double cutoff = std::max(rank_tol, 1e-14) * scale;
    for (const auto& v : vectors) {
        Point r = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) r -= q.dot(r) * q;
        }
        const double nr = r.norm();
        if (nr > cutoff) basis.push_back(r / nr);
    }
    return basis;
}

Matrix stack_columns(const std::vector<Point>& columns, Eigen::Index dim) {
    Matrix g(dim, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != dim) {
            throw ArgumentError("stack_columns: column dimension mismatch");
        }
        g.col(static_cast<Eigen::Index>(j)) = columns[j];
    }
    return g;
}

double gram_min_eig(const Matrix& g) {
    if (g.cols() == 0) throw ArgumentError("gram_min_eig: empty column list");
    const Matrix gram = g.transpose() * g;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        throw DecompositionError("gram_min_eig: eigen solver failed");
    }
    // G^T G is positive semidefinite; negative values are rounding.
    return std::max(0.0, eig.eigenvalues()(0));
}

double gram_min_eig(const std::vector<Point>& columns) {
    if (columns.empty()) throw ArgumentError("gram_min_eig: empty column list");
    return gram_min_eig(stack_columns(columns, columns.front().size()));
}

double uniform_unit(std::uint64_t raw) {
    return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

double NormalSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = 1.0 - uniform_unit(engine_());
    const double u2 = uniform_unit(engine_());
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Point gaussian_vector(Eigen::Index n, std::mt19937_64& engine) {
    Point out(n);
    for (Eigen::Index i = 0; i < n; i += 2) {
        const double u1 = 1.0 - uniform_unit(engine());
        const double u2 = uniform_unit(engine());
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out(i) = radius * std::cos(angle);
        if (i + 1 < n) out(i + 1) = radius * std::sin(angle);
    }
    return out;
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) {
        throw ArgumentError("gaussian_matrix: rows and cols must be >= 1");
    }
    NormalSampler sampler(seed);
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = sampler.next();
    }
    return out;
}

Point fd_gradient(const std::function<double(const Point&)>& h, const Point& x,
                  double step) {
    if (!(step > 0.0)) throw ArgumentError("fd_gradient: step must be positive");
    Point grad(x.size());
    Point probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe(i) = x(i) + step;
        const double up = h(probe);
        probe(i) = x(i) - step;
        const double down = h(probe);
        probe(i) = x(i);
        grad(i) = (up - down) / (2.0 * step);
    }
    return grad;
}

Point flatten(const Matrix& m) {
    Point p(m.size());
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        p.data(), m.rows(), m.cols()) = m;
    return p;
}

Matrix unflatten(const Point& p, Eigen::Index rows, Eigen::Index cols) {
    if (p.size() != rows * cols) {
        throw ArgumentError("unflatten: size does not match rows * cols");
    }
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(p.data(), rows, cols);
}

} // namespace projfeas
