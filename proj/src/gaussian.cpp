#include "tbd/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <sstream>

namespace tbd {

namespace {

void require_hermitian(const MatXc& S, const char* who) {
  if (S.rows() != S.cols())
    throw std::invalid_argument(std::string(who) + ": matrix not square");
  double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  double dev = (S - S.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * scale) {
    std::ostringstream os;
    os << who << ": matrix not Hermitian (max asymmetry " << dev << ", dim "
       << S.rows() << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

// --- StructuredCovariance ----------------------------------------------------

VecXc StructuredCovariance::whiten_vec(const VecXc& x) const {
  VecXc y = base_eigvecs.adjoint() * x;
  for (int m = 0; m < y.size(); ++m) y[m] /= std::sqrt(base_eigvals[m]);
  return y;
}

MatXc StructuredCovariance::whiten_mat(const MatXc& X) const {
  MatXc Y = base_eigvecs.adjoint() * X;
  for (int m = 0; m < Y.rows(); ++m) Y.row(m) /= std::sqrt(base_eigvals[m]);
  return Y;
}

double StructuredCovariance::quadform(const VecXc& x) const {
  return whiten_vec(x).squaredNorm();
}

MatXc StructuredCovariance::dense() const {
  return base_eigvecs * base_eigvals.asDiagonal() *
         base_eigvecs.adjoint();
}

StructuredCovariance precompute_base(const MatXc& S) {
  require_hermitian(S, "precompute_base");
  const int M = int(S.rows());
  Eigen::SelfAdjointEigenSolver<MatXc> eig(S);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("precompute_base: eigendecomposition failed");
  VecXd lam = eig.eigenvalues();
  double tr = S.real().trace();
  // Genuinely indefinite input is a modeling bug upstream, not jitter fodder.
  double neg_tol = 1e-8 * std::max(1.0, std::abs(tr) / M);
  if (lam[0] < -neg_tol) {
    std::ostringstream os;
    os << "precompute_base: matrix not PSD (min eigenvalue " << lam[0]
       << ", dim " << M << ")";
    throw std::runtime_error(os.str());
  }
  double eps = 1e-12 * std::max(tr, 0.0) / M;
  StructuredCovariance out;
  out.base_eigvals = lam.cwiseMax(eps);
  out.base_eigvecs = eig.eigenvectors();
  out.base_logdet = 0.0;
  for (int m = 0; m < M; ++m) out.base_logdet += std::log(out.base_eigvals[m]);
  return out;
}

double cgauss_logpdf_dense(const VecXc& z, const MatXc& C) {
  StructuredCovariance base = precompute_base(C);
  return -base.dim() * kLogPi - base.base_logdet - base.quadform(z);
}

// --- one-shot structured evaluations ----------------------------------------

double logpdf_rank1_update(const StructuredCovariance& base, const VecXc& a,
                           double c, const VecXc& z) {
  return plan_rank1(base, a, z).eval(c);
}

double logpdf_lowrank_scaled(const StructuredCovariance& base, const MatXc& U,
                             double c, const VecXc& z) {
  return plan_lowrank(base, U, z).eval(c);
}

double logpdf_diag_shift(const StructuredCovariance& S_eig, double eta,
                         const VecXc& z) {
  return plan_diag_shift(S_eig, z).eval(eta);
}

// --- plans -------------------------------------------------------------------

Rank1Plan plan_rank1(const StructuredCovariance& base, const VecXc& a,
                     const VecXc& z) {
  VecXc at = base.whiten_vec(a);
  VecXc zt = base.whiten_vec(z);
  Rank1Plan p;
  p.q = at.squaredNorm();
  p.s2 = std::norm(at.dot(zt));  // Eigen dot conjugates the left argument
  p.znorm2 = zt.squaredNorm();
  p.base_logdet = base.base_logdet;
  p.M = base.dim();
  return p;
}

LowRankPlan plan_lowrank(const StructuredCovariance& base, const MatXc& U,
                         const VecXc& z) {
  MatXc Ut = base.whiten_mat(U);    // M x R
  VecXc zt = base.whiten_vec(z);
  MatXc small = Ut.adjoint() * Ut;  // R x R Hermitian = U^H B^(-1) U
  VecXc proj = Ut.adjoint() * zt;   // U^H B^(-1) z
  return plan_lowrank_from_solves(small, proj, zt.squaredNorm(),
                                  base.base_logdet, base.dim());
}

LowRankPlan plan_lowrank_from_solves(const MatXc& UhBiU, const VecXc& UhBiz,
                                     double znorm2, double base_logdet, int M) {
  Eigen::SelfAdjointEigenSolver<MatXc> eig(UhBiU);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("plan_lowrank: small eigendecomposition failed");
  LowRankPlan p;
  p.d = eig.eigenvalues().cwiseMax(0.0);
  VecXc h = eig.eigenvectors().adjoint() * UhBiz;
  p.g = h.cwiseAbs2();
  p.znorm2 = znorm2;
  p.base_logdet = base_logdet;
  p.M = M;
  return p;
}

DiagShiftPlan plan_diag_shift(const StructuredCovariance& S_eig,
                              const VecXc& z) {
  DiagShiftPlan p;
  p.lam = S_eig.base_eigvals;
  p.q2 = (S_eig.base_eigvecs.adjoint() * z).cwiseAbs2();
  p.M = S_eig.dim();
  return p;
}

// --- DiagPlusLowRank ----------------------------------------------------------

DiagPlusLowRank make_diag_plus_lowrank(double eta, const MatXc& W) {
  if (!(eta > 0))
    throw std::invalid_argument("make_diag_plus_lowrank: eta must be > 0");
  DiagPlusLowRank b;
  b.eta = eta;
  b.W = W;
  b.M = int(W.rows());
  const int R = int(W.cols());
  if (R == 0) {
    b.L.resize(0, 0);
    b.logdet = b.M * std::log(eta);
    return b;
  }
  MatXc G = W.adjoint() * W;
  G.diagonal().array() += eta;
  Eigen::LLT<MatXc> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("make_diag_plus_lowrank: Cholesky of G failed");
  b.L = llt.matrixL();
  double logdetG = 0;
  for (int r = 0; r < R; ++r) logdetG += 2.0 * std::log(b.L(r, r).real());
  b.logdet = (b.M - R) * std::log(eta) + logdetG;
  return b;
}

double DiagPlusLowRank::quadform(const VecXc& x) const {
  if (rank() == 0) return x.squaredNorm() / eta;
  VecXc v = W.adjoint() * x;
  L.triangularView<Eigen::Lower>().solveInPlace(v);
  return (x.squaredNorm() - v.squaredNorm()) / eta;
}

VecXc DiagPlusLowRank::solve(const VecXc& x) const {
  if (rank() == 0) return x / eta;
  VecXc v = W.adjoint() * x;
  L.triangularView<Eigen::Lower>().solveInPlace(v);
  L.triangularView<Eigen::Lower>().adjoint().solveInPlace(v);
  return (x - W * v) / eta;
}

MatXc DiagPlusLowRank::solve(const MatXc& X) const {
  if (rank() == 0) return X / eta;
  MatXc V = W.adjoint() * X;
  L.triangularView<Eigen::Lower>().solveInPlace(V);
  L.triangularView<Eigen::Lower>().adjoint().solveInPlace(V);
  return (X - W * V) / eta;
}

double DiagPlusLowRank::logpdf(const VecXc& z) const {
  return -M * kLogPi - logdet - quadform(z);
}

void DiagPlusLowRank::batched_stats(const MatXc& A, const VecXc& z,
                                    VecXd& q_out, VecXc& s_out) const {
  const int P = int(A.cols());
  q_out.resize(P);
  s_out.resize(P);
  if (rank() == 0) {
    q_out = A.colwise().squaredNorm().transpose() / eta;
    s_out = (A.adjoint() * z) / eta;
    return;
  }
  MatXc V = W.adjoint() * A;                        // R x P
  L.triangularView<Eigen::Lower>().solveInPlace(V); // L^(-1) W^H A
  VecXc u = W.adjoint() * z;                        // R
  L.triangularView<Eigen::Lower>().solveInPlace(u);
  VecXc az = A.adjoint() * z;                       // P
  for (int p = 0; p < P; ++p) {
    q_out[p] = (A.col(p).squaredNorm() - V.col(p).squaredNorm()) / eta;
    s_out[p] = (az[p] - V.col(p).dot(u) /* conj(V)~u */) / eta;
  }
}

// --- CholeskyBase --------------------------------------------------------------

CholeskyBase make_cholesky_base(const MatXc& B) {
  require_hermitian(B, "make_cholesky_base");
  const int M = int(B.rows());
  double tr = B.real().trace();
  MatXc Bj = B;
  Eigen::LLT<MatXc> llt(Bj);
  if (llt.info() != Eigen::Success) {
    double eps = 1e-12 * std::max(tr, 1e-300) / M;
    for (int tries = 0; tries < 6 && llt.info() != Eigen::Success; ++tries) {
      Bj.diagonal().array() += eps;
      llt.compute(Bj);
      eps *= 100;
    }
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("make_cholesky_base: matrix not positive definite");
  }
  CholeskyBase out;
  out.Lmat = llt.matrixL();
  out.M = M;
  out.logdet = 0;
  for (int m = 0; m < M; ++m) out.logdet += 2.0 * std::log(out.Lmat(m, m).real());
  return out;
}

double CholeskyBase::quadform(const VecXc& x) const {
  VecXc y = x;
  Lmat.triangularView<Eigen::Lower>().solveInPlace(y);
  return y.squaredNorm();
}

VecXc CholeskyBase::solve(const VecXc& x) const {
  VecXc y = x;
  Lmat.triangularView<Eigen::Lower>().solveInPlace(y);
  Lmat.triangularView<Eigen::Lower>().adjoint().solveInPlace(y);
  return y;
}

MatXc CholeskyBase::solve(const MatXc& X) const {
  MatXc Y = X;
  Lmat.triangularView<Eigen::Lower>().solveInPlace(Y);
  Lmat.triangularView<Eigen::Lower>().adjoint().solveInPlace(Y);
  return Y;
}

double CholeskyBase::logpdf(const VecXc& z) const {
  return -M * kLogPi - logdet - quadform(z);
}

void CholeskyBase::batched_stats(const MatXc& A, const VecXc& z, VecXd& q_out,
                                 VecXc& s_out) const {
  const int P = int(A.cols());
  MatXc At = A;
  Lmat.triangularView<Eigen::Lower>().solveInPlace(At);  // L^(-1) A
  VecXc zt = z;
  Lmat.triangularView<Eigen::Lower>().solveInPlace(zt);
  q_out = At.colwise().squaredNorm().transpose();
  s_out = At.adjoint() * zt;
  (void)P;
}

}  // namespace tbd
