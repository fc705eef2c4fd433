#pragma once

// Affine-invariant geometry on the cone of symmetric positive-definite
// matrices: spectral matrix functions, exponential/logarithm maps,
// geodesics, distance, Frechet mean and tangent-space statistics.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "manifoldnet/error.hpp"

namespace manifoldnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kEigFloor = 1e-12;
// Relative (to the Frobenius norm) asymmetry tolerated before a matrix is
// rejected as non-symmetric.
inline constexpr double kSymmetryTol = 1e-8;

/// Returns `m` with its strictly symmetric part; throws NonSymmetric when
/// max |m_ij - m_ji| exceeds kSymmetryTol * ||m||_F.
Matrix symmetrized(const Matrix& m);

struct EigenPair {
    Matrix rotation;  // orthogonal, columns are eigenvectors
    Vector values;    // ascending

    Matrix reconstruct() const;
};

EigenPair spd_eig(const Matrix& s);

class MatrixFunction {
public:
    enum class Kind { Power, Log, Exp };

    static MatrixFunction power(double exponent) { return {Kind::Power, exponent}; }
    static MatrixFunction log() { return {Kind::Log, 0.0}; }
    static MatrixFunction exp(double scale = 1.0) { return {Kind::Exp, scale}; }

    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }

    // log and non-integer or negative powers are only defined on the open cone.
    bool needs_positive_spectrum() const noexcept;
    double operator()(double eigenvalue) const;

private:
    MatrixFunction(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}

    Kind kind_;
    double parameter_;
};

Matrix spd_fn(const Matrix& s, const MatrixFunction& f);
Matrix spd_fn(const EigenPair& eig, const MatrixFunction& f);

/// A point on the manifold. Construction symmetrizes (within tolerance),
/// checks the spectrum against the eigenvalue floor, and keeps the
/// eigendecomposition so square roots and logarithms are cheap afterwards.
class SPDPoint {
public:
    explicit SPDPoint(const Matrix& entries, double eig_floor = kEigFloor);

    static SPDPoint identity(Eigen::Index dim);
    static SPDPoint diagonal(const Vector& values);

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    const EigenPair& eigen() const noexcept { return eig_; }
    double trace() const { return entries_.trace(); }

    Matrix sqrt() const;
    Matrix inv_sqrt() const;
    Matrix log() const;

private:
    Matrix entries_;
    EigenPair eig_;
};

/// Symmetric matrix living in the tangent space at some point.
class TangentVector {
public:
    explicit TangentVector(const Matrix& entries);

    static TangentVector zero(Eigen::Index dim);

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }

    // Only meaningful when working on the unit-trace slice of the cone.
    bool traceless(double tol = 1e-10) const { return std::abs(entries_.trace()) <= tol; }

private:
    Matrix entries_;
};

SPDPoint exp_map(const SPDPoint& rho, const TangentVector& chi);
TangentVector log_map(const SPDPoint& rho0, const SPDPoint& rho1);

/// Point at parameter t in [0, 1] along the geodesic from rho0 to rho1.
SPDPoint geodesic(const SPDPoint& rho0, const SPDPoint& rho1, double t);

/// Velocity of t -> exp(t chi), written as exp(t chi)^(1/2) chi exp(t chi)^(1/2).
Matrix geodesic_speed(const TangentVector& chi, double t);

/// Affine-invariant distance: Frobenius norm of log(rho0^(-1/2) rho1 rho0^(-1/2)).
double riem_dist(const SPDPoint& rho0, const SPDPoint& rho1);

double frobenius_dist(const Matrix& m0, const Matrix& m1);

/// Upper-triangle coordinates in row-major order, off-diagonals scaled by
/// sqrt(2) so that the Euclidean norm equals the Frobenius norm.
Vector vec_at_identity(const Matrix& a);

/// Tangent coordinates of `rho` at `mean` after whitening by mean^(-1/2).
Vector vec_at(const SPDPoint& mean, const SPDPoint& rho);

struct FrechetOptions {
    double tol = 1e-9;
    int max_iter = 100;
};

struct FrechetResult {
    SPDPoint mean;
    int iterations;
    double gradient_norm;
};

FrechetResult frechet_mean(std::span<const SPDPoint> points, const FrechetOptions& options = {});

Matrix cohort_covariance(std::span<const SPDPoint> points, const SPDPoint& mean);

/// Mean and tangent-space covariance of a cohort, plus the spectral data of
/// the covariance needed by the Mahalanobis distance and Gaussian density.
class CohortStats {
public:
    CohortStats(SPDPoint mean, const Matrix& covariance, std::size_t count);

    const SPDPoint& mean() const noexcept { return mean_; }
    const Matrix& covariance() const noexcept { return covariance_; }
    std::size_t count() const noexcept { return count_; }

    const Matrix& pseudo_inverse() const noexcept { return pinv_; }
    std::size_t rank() const noexcept { return rank_; }
    double log_pseudo_determinant() const noexcept { return log_pdet_; }
    bool degenerate() const noexcept { return rank_ < static_cast<std::size_t>(covariance_.rows()); }

private:
    SPDPoint mean_;
    Matrix covariance_;
    std::size_t count_;
    Matrix pinv_;
    std::size_t rank_ = 0;
    double log_pdet_ = 0.0;
};

CohortStats cohort_stats(std::span<const SPDPoint> points, const FrechetOptions& options = {});

double mahalanobis(const CohortStats& stats, const SPDPoint& rho);

struct Density {
    double value;
    std::size_t rank;
    bool degenerate;  // covariance rank below d; value is on the support subspace
};

Density gaussian_density(const CohortStats& stats, const SPDPoint& rho);

}  // namespace manifoldnet
