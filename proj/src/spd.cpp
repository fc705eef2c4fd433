#include "manifoldnet/spd.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace manifoldnet {
namespace {

Matrix sym_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::DimMismatch, std::string(what) + " must be a non-empty square matrix, got " +
                                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_same_dim(Eigen::Index a, Eigen::Index b) {
    if (a != b) {
        throw Error(ErrorKind::DimMismatch, "dimensions " + std::to_string(a) + " and " + std::to_string(b));
    }
}

bool is_integer(double x) { return std::floor(x) == x; }

// log(rho0^(-1/2) rho1 rho0^(-1/2)), the whitened logarithm shared by the
// log map, the tangent coordinates and the mean iteration.
Matrix whitened_log(const Matrix& inv_sqrt0, const Matrix& rho1) {
    return spd_fn(sym_part(inv_sqrt0 * rho1 * inv_sqrt0), MatrixFunction::log());
}

}  // namespace

Matrix symmetrized(const Matrix& m) {
    require_square(m, "matrix");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol * m.norm()) {
        throw Error(ErrorKind::NonSymmetric,
                    "max |a_ij - a_ji| = " + std::to_string(asym) + " exceeds tolerance");
    }
    return sym_part(m);
}

Matrix EigenPair::reconstruct() const { return rotation * values.asDiagonal() * rotation.transpose(); }

EigenPair spd_eig(const Matrix& s) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(s));
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "symmetric eigensolver failed");
    }
    return {solver.eigenvectors(), solver.eigenvalues()};
}

bool MatrixFunction::needs_positive_spectrum() const noexcept {
    switch (kind_) {
        case Kind::Log: return true;
        case Kind::Power: return parameter_ < 0.0 || !is_integer(parameter_);
        case Kind::Exp: return false;
    }
    return false;
}

double MatrixFunction::operator()(double eigenvalue) const {
    switch (kind_) {
        case Kind::Log: return std::log(eigenvalue);
        case Kind::Power: return std::pow(eigenvalue, parameter_);
        case Kind::Exp: return std::exp(parameter_ * eigenvalue);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

Matrix spd_fn(const EigenPair& eig, const MatrixFunction& f) {
    if (f.needs_positive_spectrum() && eig.values.size() > 0 && eig.values(0) <= kEigFloor) {
        throw Error(ErrorKind::NotPositiveDefinite,
                    "smallest eigenvalue " + std::to_string(eig.values(0)) + " is not above the floor");
    }
    const Vector mapped = eig.values.unaryExpr([&f](double v) { return f(v); });
    return sym_part(eig.rotation * mapped.asDiagonal() * eig.rotation.transpose());
}

Matrix spd_fn(const Matrix& s, const MatrixFunction& f) { return spd_fn(spd_eig(s), f); }

SPDPoint::SPDPoint(const Matrix& entries, double eig_floor) : entries_(symmetrized(entries)) {
    eig_ = spd_eig(entries_);
    if (!(eig_.values(0) > eig_floor)) {
        throw Error(ErrorKind::NotPositiveDefinite,
                    "smallest eigenvalue " + std::to_string(eig_.values(0)) + " <= " + std::to_string(eig_floor));
    }
}

SPDPoint SPDPoint::identity(Eigen::Index dim) { return SPDPoint(Matrix::Identity(dim, dim)); }

SPDPoint SPDPoint::diagonal(const Vector& values) { return SPDPoint(Matrix(values.asDiagonal())); }

Matrix SPDPoint::sqrt() const { return spd_fn(eig_, MatrixFunction::power(0.5)); }
Matrix SPDPoint::inv_sqrt() const { return spd_fn(eig_, MatrixFunction::power(-0.5)); }
Matrix SPDPoint::log() const { return spd_fn(eig_, MatrixFunction::log()); }

TangentVector::TangentVector(const Matrix& entries) : entries_(symmetrized(entries)) {}

TangentVector TangentVector::zero(Eigen::Index dim) { return TangentVector(Matrix::Zero(dim, dim)); }

SPDPoint exp_map(const SPDPoint& rho, const TangentVector& chi) {
    require_same_dim(rho.dim(), chi.dim());
    const Matrix root = rho.sqrt();
    const Matrix inv_root = rho.inv_sqrt();
    const Matrix inner = spd_fn(sym_part(inv_root * chi.matrix() * inv_root), MatrixFunction::exp());
    return SPDPoint(sym_part(root * inner * root));
}

TangentVector log_map(const SPDPoint& rho0, const SPDPoint& rho1) {
    require_same_dim(rho0.dim(), rho1.dim());
    const Matrix root = rho0.sqrt();
    return TangentVector(sym_part(root * whitened_log(rho0.inv_sqrt(), rho1.matrix()) * root));
}

SPDPoint geodesic(const SPDPoint& rho0, const SPDPoint& rho1, double t) {
    require_same_dim(rho0.dim(), rho1.dim());
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "geodesic parameter t=" + std::to_string(t) + " outside [0, 1]");
    }
    if (t == 0.0) return rho0;
    const Matrix root = rho0.sqrt();
    const Matrix inv_root = rho0.inv_sqrt();
    const Matrix stepped =
        spd_fn(sym_part(inv_root * rho1.matrix() * inv_root), MatrixFunction::power(t));
    return SPDPoint(sym_part(root * stepped * root));
}

Matrix geodesic_speed(const TangentVector& chi, double t) {
    const EigenPair eig = spd_eig(chi.matrix());
    const Matrix half = spd_fn(eig, MatrixFunction::exp(0.5 * t));
    return sym_part(half * chi.matrix() * half);
}

double riem_dist(const SPDPoint& rho0, const SPDPoint& rho1) {
    require_same_dim(rho0.dim(), rho1.dim());
    if (rho0.matrix() == rho1.matrix()) return 0.0;
    // rho0 = L L^T; L^-1 rho1 L^-T is orthogonally similar to the
    // symmetric whitening rho0^(-1/2) rho1 rho0^(-1/2), so the spectra agree.
    Eigen::LLT<Matrix> llt(rho0.matrix());
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::NotPositiveDefinite, "Cholesky factorization failed");
    }
    const auto lower = llt.matrixL();
    Matrix w = lower.solve(rho1.matrix());
    w = lower.solve(Matrix(w.transpose()));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym_part(w), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "symmetric eigensolver failed");
    }
    const Vector& lambda = solver.eigenvalues();
    if (lambda(0) <= 0.0) {
        throw Error(ErrorKind::NotPositiveDefinite, "relative spectrum is not positive");
    }
    return std::sqrt(lambda.array().log().square().sum());
}

double frobenius_dist(const Matrix& m0, const Matrix& m1) {
    if (m0.rows() != m1.rows() || m0.cols() != m1.cols()) {
        throw Error(ErrorKind::DimMismatch, "matrices " + std::to_string(m0.rows()) + "x" +
                                                std::to_string(m0.cols()) + " and " + std::to_string(m1.rows()) +
                                                "x" + std::to_string(m1.cols()));
    }
    return (m0 - m1).norm();
}

Vector vec_at_identity(const Matrix& a) {
    const Matrix s = symmetrized(a);
    const Eigen::Index n = s.rows();
    Vector out(n * (n + 1) / 2);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        out(k++) = s(i, i);
        for (Eigen::Index j = i + 1; j < n; ++j) out(k++) = std::numbers::sqrt2 * s(i, j);
    }
    return out;
}

Vector vec_at(const SPDPoint& mean, const SPDPoint& rho) {
    require_same_dim(mean.dim(), rho.dim());
    return vec_at_identity(whitened_log(mean.inv_sqrt(), rho.matrix()));
}

FrechetResult frechet_mean(std::span<const SPDPoint> points, const FrechetOptions& options) {
    if (points.empty()) throw Error(ErrorKind::EmptyCohort, "Frechet mean of an empty cohort");
    const Eigen::Index n = points.front().dim();
    Matrix average = Matrix::Zero(n, n);
    for (const auto& p : points) {
        require_same_dim(n, p.dim());
        average += p.matrix();
    }
    SPDPoint mean(average / static_cast<double>(points.size()));

    const double inv_count = 1.0 / static_cast<double>(points.size());
    for (int iteration = 0;; ++iteration) {
        const Matrix inv_root = mean.inv_sqrt();
        Matrix gradient = Matrix::Zero(n, n);
        for (const auto& p : points) gradient += whitened_log(inv_root, p.matrix());
        gradient *= inv_count;

        const double norm = gradient.norm();
        if (norm <= options.tol) return {std::move(mean), iteration, norm};
        if (iteration >= options.max_iter) {
            throw Error(ErrorKind::NoConvergence, "Frechet mean gradient norm " + std::to_string(norm) +
                                                      " after " + std::to_string(iteration) + " iterations");
        }
        const Matrix root = mean.sqrt();
        mean = SPDPoint(sym_part(root * spd_fn(gradient, MatrixFunction::exp()) * root));
    }
}

Matrix cohort_covariance(std::span<const SPDPoint> points, const SPDPoint& mean) {
    if (points.size() < 2) {
        throw Error(ErrorKind::CohortTooSmall, "covariance needs at least 2 points, got " +
                                                   std::to_string(points.size()));
    }
    const Eigen::Index d = mean.dim() * (mean.dim() + 1) / 2;
    Matrix sigma = Matrix::Zero(d, d);
    for (const auto& p : points) {
        const Vector v = vec_at(mean, p);
        sigma.noalias() += v * v.transpose();
    }
    sigma /= static_cast<double>(points.size() - 1);
    return sym_part(sigma);
}

CohortStats::CohortStats(SPDPoint mean, const Matrix& covariance, std::size_t count)
    : mean_(std::move(mean)), count_(count) {
    const Eigen::Index d = mean_.dim() * (mean_.dim() + 1) / 2;
    if (covariance.rows() != d || covariance.cols() != d) {
        throw Error(ErrorKind::DimMismatch, "covariance must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    covariance_ = symmetrized(covariance);

    const EigenPair eig = spd_eig(covariance_);
    const double scale = covariance_.norm();
    if (eig.values(0) < -1e-10 * scale) {
        throw Error(ErrorKind::NotPositiveDefinite,
                    "covariance has eigenvalue " + std::to_string(eig.values(0)));
    }
    const double top = eig.values(d - 1);
    const double cutoff = static_cast<double>(d) * std::numeric_limits<double>::epsilon() * top;
    pinv_ = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double lambda = eig.values(i);
        if (top <= 0.0 || lambda <= cutoff) continue;
        const Vector q = eig.rotation.col(i);
        pinv_.noalias() += (q / lambda) * q.transpose();
        log_pdet_ += std::log(lambda);
        ++rank_;
    }
}

CohortStats cohort_stats(std::span<const SPDPoint> points, const FrechetOptions& options) {
    FrechetResult result = frechet_mean(points, options);
    Matrix sigma = cohort_covariance(points, result.mean);
    return CohortStats(std::move(result.mean), sigma, points.size());
}

double mahalanobis(const CohortStats& stats, const SPDPoint& rho) {
    require_same_dim(stats.mean().dim(), rho.dim());
    const Vector v = vec_at(stats.mean(), rho);
    return std::max(0.0, v.dot(stats.pseudo_inverse() * v));
}

Density gaussian_density(const CohortStats& stats, const SPDPoint& rho) {
    const double xi = mahalanobis(stats, rho);
    const double rank = static_cast<double>(stats.rank());
    const double log_norm = -0.5 * (rank * std::log(2.0 * std::numbers::pi) + stats.log_pseudo_determinant());
    return {std::exp(log_norm - 0.5 * xi), stats.rank(), stats.degenerate()};
}

}  // namespace manifoldnet
