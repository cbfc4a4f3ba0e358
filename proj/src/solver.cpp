#include "curlstokes/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

namespace curlstokes {

namespace {

using Eigen::Index;
using Eigen::VectorXd;

// Block-diagonal SPD preconditioner diag(H, S, s) for MINRES: H is the
// velocity #-norm Gram matrix, S the pressure stiffness plus mass, s the
// multiplier Schur value meanᵀS⁻¹mean.
class BlockPreconditioner {
 public:
  BlockPreconditioner() = default;

  template <typename MatrixType>
  BlockPreconditioner& analyzePattern(const MatrixType&) { return *this; }
  template <typename MatrixType>
  BlockPreconditioner& factorize(const MatrixType&) { return *this; }
  template <typename MatrixType>
  BlockPreconditioner& compute(const MatrixType&) { return *this; }

  void setup(const SparseMatrix& velocity, const SparseMatrix& pressure, const VectorXd& mean) {
    nu_ = velocity.rows();
    nq_ = pressure.rows();
    velocity_.compute(velocity);
    pressure_.compute(pressure);
    if (velocity_.info() != Eigen::Success || pressure_.info() != Eigen::Success) {
      throw SolverError("preconditioner factorization failed", {});
    }
    const VectorXd sm = pressure_.solve(mean);
    multiplier_ = mean.dot(sm);
    if (!(multiplier_ > 0.0)) multiplier_ = 1.0;
  }

  VectorXd solve(const VectorXd& r) const {
    VectorXd z(r.size());
    z.head(nu_) = velocity_.solve(r.head(nu_));
    z.segment(nu_, nq_) = pressure_.solve(r.segment(nu_, nq_));
    z(nu_ + nq_) = r(nu_ + nq_) / multiplier_;
    return z;
  }

  Eigen::ComputationInfo info() const { return Eigen::Success; }

 private:
  Index nu_ = 0;
  Index nq_ = 0;
  Eigen::SimplicialLDLT<SparseMatrix> velocity_;
  Eigen::SimplicialLDLT<SparseMatrix> pressure_;
  double multiplier_ = 1.0;
};

VectorXd augmented_rhs(const SaddleSystem& s) {
  const Index nu = s.a.rows();
  const Index nq = s.b.cols();
  VectorXd rhs = VectorXd::Zero(nu + nq + 1);
  rhs.head(nu) = s.rhs_u;
  rhs.segment(nu, nq) = s.rhs_q;
  return rhs;
}

double relative_residual(const SparseMatrix& k, const VectorXd& x, const VectorXd& rhs) {
  const double scale = rhs.norm();
  const double r = (rhs - k * x).norm();
  return scale > 0.0 ? r / scale : r;
}

void unpack(const SaddleSystem& s, const VectorXd& x, SolveReport& report) {
  const Index nu = s.a.rows();
  const Index nq = s.b.cols();
  report.velocity = x.head(nu);
  report.pressure = x.segment(nu, nq);
  report.multiplier = x(nu + nq);
  report.pressure_mean = s.mean.dot(report.pressure);
}

void mark_singular(const SaddleSystem& s, SolveReport& report) {
  report.singular = true;
  report.velocity = VectorXd::Zero(s.a.rows());
  report.pressure = VectorXd::Zero(s.b.cols());
  report.multiplier = 0.0;
  report.pressure_mean = 0.0;
  if (s.velocity_size() + s.pressure_size() <= 2000) report.kernel = kernel_probe(s);
}

SolveReport solve_dense(const SaddleSystem& s, const SparseMatrix& k, const VectorXd& rhs, double tol) {
  SolveReport report;
  report.method = "dense";
  const Eigen::MatrixXd dense(k);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(dense);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    mark_singular(s, report);
    return report;
  }
  VectorXd x = lu.solve(rhs);
  for (int step = 0; step < 3 && relative_residual(k, x, rhs) > tol; ++step) x += lu.solve(rhs - k * x);
  report.relative_residual = relative_residual(k, x, rhs);
  unpack(s, x, report);
  return report;
}

// Sparse LU of the saddle matrix with one pressure dof pinned instead of
// the dense mean row and column, which ruin the fill-reducing ordering.
// Since B annihilates constants, the multiplier is Σrhs_q / Σmean, and the
// pinned solution shifted by a constant to zero mean solves the bordered
// system exactly.
class BorderedLu {
 public:
  explicit BorderedLu(const SaddleSystem& s) : nu_(s.a.rows()), nq_(s.b.cols()), mean_(s.mean) {
    Index j = 0;
    mean_.cwiseAbs().maxCoeff(&j);
    pin_ = nu_ + j;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(s.a.nonZeros() + 2 * s.b.nonZeros() + 1));
    for (Index c = 0; c < s.a.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(s.a, c); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    }
    for (Index c = 0; c < s.b.outerSize(); ++c) {
      if (nu_ + c == pin_) continue;
      for (SparseMatrix::InnerIterator it(s.b, c); it; ++it) {
        t.emplace_back(it.row(), nu_ + c, it.value());
        t.emplace_back(nu_ + c, it.row(), it.value());
      }
    }
    t.emplace_back(pin_, pin_, 1.0);
    SparseMatrix k(nu_ + nq_, nu_ + nq_);
    k.setFromTriplets(t.begin(), t.end());
    k.makeCompressed();
    lu_.analyzePattern(k);
    lu_.factorize(k);
    mean_sum_ = mean_.sum();
  }

  bool ok() const { return lu_.info() == Eigen::Success && mean_sum_ != 0.0; }

  VectorXd solve(const VectorXd& rhs) const {
    const double lambda = rhs.segment(nu_, nq_).sum() / mean_sum_;
    VectorXd r = rhs.head(nu_ + nq_);
    r.segment(nu_, nq_) -= lambda * mean_;
    r(pin_) = 0.0;
    VectorXd y = lu_.solve(r);
    const double shift = mean_.dot(y.segment(nu_, nq_)) / mean_sum_;
    y.segment(nu_, nq_).array() -= shift;
    VectorXd x(nu_ + nq_ + 1);
    x.head(nu_ + nq_) = y;
    x(nu_ + nq_) = lambda;
    return x;
  }

 private:
  Index nu_;
  Index nq_;
  Index pin_ = 0;
  VectorXd mean_;
  double mean_sum_ = 0.0;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

SolveReport solve_direct(const SaddleSystem& s, const SparseMatrix& k, const VectorXd& rhs, double tol) {
  SolveReport report;
  report.method = "sparse-lu";
  const BorderedLu lu(s);
  if (!lu.ok()) {
    mark_singular(s, report);
    return report;
  }
  VectorXd x = lu.solve(rhs);
  std::vector<double> history{relative_residual(k, x, rhs)};
  for (int step = 0; step < 4 && history.back() > tol; ++step) {
    x += lu.solve(rhs - k * x);
    history.push_back(relative_residual(k, x, rhs));
  }
  report.relative_residual = history.back();
  report.iterations = static_cast<int>(history.size()) - 1;
  if (!std::isfinite(report.relative_residual) || report.relative_residual > 1e-6) {
    mark_singular(s, report);
    report.relative_residual = history.back();
    return report;
  }
  if (report.relative_residual > tol) {
    throw SolverError("direct solve stalled at relative residual " + std::to_string(report.relative_residual),
                      history);
  }
  unpack(s, x, report);
  return report;
}

SolveReport solve_minres(const SaddleSystem& s, const SparseMatrix& k, const VectorXd& rhs,
                         const SolveOptions& options) {
  SolveReport report;
  report.method = "minres";
  const Index nq = s.b.cols();
  if (s.velocity_norm.rows() != s.a.rows() || s.pressure_norm.rows() != nq) {
    throw std::invalid_argument("MINRES needs the velocity and pressure norm matrices");
  }
  Eigen::MINRES<SparseMatrix, Eigen::Lower | Eigen::Upper, BlockPreconditioner> minres;
  minres.compute(k);
  minres.preconditioner().setup(s.velocity_norm, s.pressure_norm, s.mean);
  minres.setTolerance(options.tol);
  minres.setMaxIterations(options.max_iterations);
  VectorXd x = minres.solve(rhs);
  report.iterations = static_cast<int>(minres.iterations());
  report.relative_residual = relative_residual(k, x, rhs);
  if (minres.info() != Eigen::Success || report.relative_residual > 1e3 * options.tol) {
    throw SolverError("MINRES did not converge after " + std::to_string(report.iterations) +
                          " iterations (relative residual " + std::to_string(report.relative_residual) + ")",
                      {minres.error(), report.relative_residual});
  }
  unpack(s, x, report);
  return report;
}

}  // namespace

void SaddleSystem::check() const {
  if (a.rows() != a.cols()) throw std::invalid_argument("velocity block is not square");
  if (b.rows() != a.rows()) throw std::invalid_argument("coupling block has wrong row count");
  if (rhs_u.size() != a.rows()) throw std::invalid_argument("velocity rhs has wrong length");
  if (rhs_q.size() != b.cols() || mean.size() != b.cols()) {
    throw std::invalid_argument("pressure rhs or mean vector has wrong length");
  }
}

SaddleSystem assemble_system(const EdgeSpace& velocity, const NodalSpace& pressure, const VectorFunction& f,
                             const BoundaryData& bd) {
  SaddleSystem s;
  if (velocity.essential_bc()) {
    BoundaryData none;
    none.g = [](const Point&) { return Point(0, 0); };
    none.h = 1.0;
    s.a = assemble_curl_curl(velocity).matrix();
    s.rhs_u = assemble_rhs(velocity, f, none);
  } else {
    s.a = assemble_velocity_operator(velocity, bd).matrix();
    s.rhs_u = assemble_rhs(velocity, f, bd);
  }
  s.b = assemble_b(velocity, pressure).matrix();
  s.rhs_q = assemble_divergence_rhs(pressure, bd.g);
  s.mean = pressure_mean_vector(pressure);
  const double h = bd.h > 0.0 ? bd.h : velocity.mesh().h_max();
  s.velocity_norm = assemble_hash_gram(velocity, h).matrix();
  s.pressure_norm = (assemble_pressure_stiffness(pressure) + assemble_pressure_mass(pressure)).matrix();
  return s;
}

SparseMatrix augmented_matrix(const SaddleSystem& s) {
  s.check();
  const Index nu = s.a.rows();
  const Index nq = s.b.cols();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(s.a.nonZeros() + 2 * s.b.nonZeros() + 2 * nq));
  for (Index c = 0; c < s.a.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(s.a, c); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  }
  for (Index c = 0; c < s.b.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(s.b, c); it; ++it) {
      t.emplace_back(it.row(), nu + it.col(), it.value());
      t.emplace_back(nu + it.col(), it.row(), it.value());
    }
  }
  for (Index i = 0; i < nq; ++i) {
    if (s.mean(i) == 0.0) continue;
    t.emplace_back(nu + i, nu + nq, s.mean(i));
    t.emplace_back(nu + nq, nu + i, s.mean(i));
  }
  SparseMatrix k(nu + nq + 1, nu + nq + 1);
  k.setFromTriplets(t.begin(), t.end());
  k.makeCompressed();
  return k;
}

SolveReport solve(const SaddleSystem& system, const SolveOptions& options) {
  system.check();
  if (!(options.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  const SparseMatrix k = augmented_matrix(system);
  const VectorXd rhs = augmented_rhs(system);
  const auto n = static_cast<std::size_t>(k.rows());
  SolverMethod method = options.method;
  if (method == SolverMethod::kAuto) method = n <= options.dense_limit ? SolverMethod::kDense : SolverMethod::kDirect;
  switch (method) {
    case SolverMethod::kDense:
      if (n > kDenseProbeLimit) throw SizeGuardError("dense solve requested for " + std::to_string(n) + " unknowns");
      return solve_dense(system, k, rhs, options.tol);
    case SolverMethod::kMinres:
      return solve_minres(system, k, rhs, options);
    default:
      return solve_direct(system, k, rhs, options.tol);
  }
}

Eigen::MatrixXd orthogonal_complement(const VectorXd& v) {
  const Index n = v.size();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(v.normalized()));
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - 1);
}

KernelProbe kernel_probe(const SaddleSystem& s, std::size_t limit) {
  s.check();
  const std::size_t n = s.velocity_size() + s.pressure_size();
  if (n > limit) {
    throw SizeGuardError("kernel probe limited to " + std::to_string(limit) + " unknowns, system has " +
                         std::to_string(n));
  }
  const Index nu = s.a.rows();
  const Eigen::MatrixXd p = orthogonal_complement(s.mean);
  const Index np = p.cols();
  const Eigen::MatrixXd bp = Eigen::MatrixXd(s.b) * p;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nu + np, nu + np);
  k.topLeftCorner(nu, nu) = Eigen::MatrixXd(s.a);
  k.topRightCorner(nu, np) = bp;
  k.bottomLeftCorner(np, nu) = bp.transpose();
  const Eigen::MatrixXd sym = 0.5 * (k + k.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const VectorXd abs_values = eig.eigenvalues().cwiseAbs();
  KernelProbe probe;
  probe.singular_values.assign(abs_values.data(), abs_values.data() + abs_values.size());
  std::sort(probe.singular_values.begin(), probe.singular_values.end());
  const double sigma_max = probe.singular_values.empty() ? 0.0 : probe.singular_values.back();
  const double threshold = 1e-10 * sigma_max;
  for (Index i = 0; i < abs_values.size(); ++i) {
    if (abs_values(i) > threshold) continue;
    const VectorXd w = eig.eigenvectors().col(i);
    probe.witnesses.push_back({w.head(nu), p * w.tail(np)});
  }
  probe.dimension = probe.witnesses.size();
  return probe;
}

}  // namespace curlstokes
