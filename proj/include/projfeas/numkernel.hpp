#pragma once

// Dense linear algebra and sampling primitives shared by the set, algorithm
// and analysis layers.  Matrices that live inside the Euclidean space E are
// flattened row-major, so the Frobenius inner product becomes the plain dot
// product of the flat vectors.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace projfeas {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default relative cutoff for numerical rank: singular values below
/// kDefaultRankTol * sigma_max are treated as zero.
inline constexpr double kDefaultRankTol = 1e-12;

struct SvdResult {
    Matrix left;                // d x d orthogonal
    Eigen::VectorXd singulars;  // min(d, m), nonincreasing
    Matrix right;               // m x m orthogonal
};

/// Thin factors: left is d x r, right is m x r with r = min(d, m).
struct ThinSvd {
    Matrix left;
    Eigen::VectorXd singulars;
    Matrix right;
};

/// Full singular value decomposition M = left * diag(singulars) * right^T.
/// Throws DecompositionError on non-finite input or failed convergence.
SvdResult svd(const Matrix& m);

ThinSvd thin_svd(const Matrix& m);

/// Moore-Penrose inverse; singular values below rank_tol * sigma_max are dropped.
Matrix pseudo_inverse(const Matrix& m, double rank_tol = kDefaultRankTol);

/// Modified Gram-Schmidt with one re-orthogonalization pass.  Vectors whose
/// residual norm falls below rank_tol * (largest input norm) are skipped.
std::vector<Point> orthonormal_basis(const std::vector<Point>& vectors,
                                     double rank_tol = kDefaultRankTol);

/// Stacks the columns of an orthonormalized set into a dim x k matrix.
Matrix stack_columns(const std::vector<Point>& columns, Eigen::Index dim);

/// Smallest eigenvalue of G^T G, G the matrix whose columns are `columns`.
double gram_min_eig(const std::vector<Point>& columns);
double gram_min_eig(const Matrix& g);

/// Uniform double in [0, 1) built from the top 53 bits of one mt19937_64 draw.
double uniform_unit(std::uint64_t raw);

/// Standard-normal sampler: std::mt19937_64 seeded with `seed`, basic
/// Box-Muller transform producing pairs (cos branch first, then sin branch).
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
    double next();
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Box-Muller draws straight from an external engine (no cached spare).
Point gaussian_vector(Eigen::Index n, std::mt19937_64& engine);

/// rows x cols matrix of i.i.d. N(0,1) entries filled in row-major order.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Central-difference gradient of a scalar field.
Point fd_gradient(const std::function<double(const Point&)>& h, const Point& x,
                  double step);

/// Row-major flattening of a matrix into a point of E.
Point flatten(const Matrix& m);
Matrix unflatten(const Point& p, Eigen::Index rows, Eigen::Index cols);

bool all_finite(const Matrix& m);

} // namespace projfeas
