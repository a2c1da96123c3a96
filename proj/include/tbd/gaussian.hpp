#pragma once
// ---------------------------------------------------------------------------
// gaussian.hpp -- zero-mean circularly-symmetric complex Gaussian log-density
// evaluation with structured covariances:
//
//   dense        log CN(z; 0, C)
//   rank-1       log CN(z; 0, B + c aa^H)        (determinant lemma + S-M)
//   low-rank     log CN(z; 0, B + c UU^H)        (Woodbury, small eig)
//   diag shift   log CN(z; 0, S + eta I)         (eigenbasis of S)
//
// plus batched variants that sweep many update vectors / scalars against a
// fixed base at O(M R) or O(M) per item.  These evaluators are the kernel of
// every measurement-update message in the tracker.
// ---------------------------------------------------------------------------

#include "tbd/common.hpp"

#include <stdexcept>

namespace tbd {

// ---------------------------------------------------------------------------
// Eigendecomposed Hermitian PSD base covariance.  Immutable after
// construction; all member queries are const and reentrant.
// ---------------------------------------------------------------------------
struct StructuredCovariance {
  VecXd  base_eigvals;   // ascending, clamped at eps = 1e-12 * trace / M
  MatXc  base_eigvecs;   // unitary Q with columns matching base_eigvals
  double base_logdet = 0.0;

  int dim() const { return int(base_eigvals.size()); }

  /// diag(lam^(-1/2)) Q^H x, so ||whiten(x)||^2 = x^H B^(-1) x.
  VecXc whiten_vec(const VecXc& x) const;
  MatXc whiten_mat(const MatXc& X) const;

  /// x^H B^(-1) x
  double quadform(const VecXc& x) const;

  /// Reconstruct the (clamped) dense matrix; intended for tests and for
  /// assembling dense sums of low-rank pieces.
  MatXc dense() const;
};

/// Eigendecompose a Hermitian PSD matrix, clamping eigenvalues from below at
/// eps = 1e-12 * trace(S) / M.  Throws std::invalid_argument if S is not
/// Hermitian within 1e-10 (relative to its largest entry) and
/// std::runtime_error if S has a genuinely negative spectrum.
StructuredCovariance precompute_base(const MatXc& S);

/// log CN(z; 0, C) = -M log pi - log det C - z^H C^(-1) z, via Hermitian
/// eigendecomposition with the same validation and jitter as precompute_base.
double cgauss_logpdf_dense(const VecXc& z, const MatXc& C);

// --- one-shot structured evaluations ---------------------------------------

/// log CN(z; 0, B + c aa^H), c >= 0.
double logpdf_rank1_update(const StructuredCovariance& base, const VecXc& a,
                           double c, const VecXc& z);

/// log CN(z; 0, B + c UU^H), U is M x R with R <= M, c >= 0.
double logpdf_lowrank_scaled(const StructuredCovariance& base, const MatXc& U,
                             double c, const VecXc& z);

/// log CN(z; 0, S + eta I), eta > 0 (throws std::invalid_argument otherwise).
double logpdf_diag_shift(const StructuredCovariance& S_eig, double eta,
                         const VecXc& z);

// ---------------------------------------------------------------------------
// Cached plans: pay the whitening / small-eig setup once, then sweep the
// update scalar in O(1), O(R) or O(M).  These realize the whitened_factors
// cache of StructuredCovariance as explicit value types so that sharing them
// across threads stays safe.
// ---------------------------------------------------------------------------

struct Rank1Plan {
  double q = 0;            // a^H B^(-1) a
  double s2 = 0;           // |a^H B^(-1) z|^2
  double znorm2 = 0;       // z^H B^(-1) z
  double base_logdet = 0;
  int    M = 0;

  double eval(double c) const {
    double denom = 1.0 + c * q;
    return -M * kLogPi - (base_logdet + std::log1p(c * q)) -
           (znorm2 - c * s2 / denom);
  }
};

struct LowRankPlan {
  VecXd  d;                // eigenvalues of U^H B^(-1) U  (length R)
  VecXd  g;                // |V^H U^H B^(-1) z|^2 per eigendirection
  double znorm2 = 0;
  double base_logdet = 0;
  int    M = 0;

  double eval(double c) const {
    double logdet = base_logdet;
    double quad = znorm2;
    for (int r = 0; r < d.size(); ++r) {
      logdet += std::log1p(c * d[r]);
      quad -= c * g[r] / (1.0 + c * d[r]);
    }
    return -M * kLogPi - logdet - quad;
  }
};

struct DiagShiftPlan {
  VecXd lam;               // base eigenvalues
  VecXd q2;                // |Q^H z|^2 coordinatewise
  int   M = 0;

  double eval(double eta) const {
    if (!(eta > 0)) throw std::invalid_argument("diag shift requires eta > 0");
    double logdet = 0, quad = 0;
    for (int m = 0; m < M; ++m) {
      double lm = lam[m] + eta;
      logdet += std::log(lm);
      quad += q2[m] / lm;
    }
    return -M * kLogPi - logdet - quad;
  }
};

Rank1Plan     plan_rank1(const StructuredCovariance& base, const VecXc& a,
                         const VecXc& z);
LowRankPlan   plan_lowrank(const StructuredCovariance& base, const MatXc& U,
                           const VecXc& z);
DiagShiftPlan plan_diag_shift(const StructuredCovariance& S_eig, const VecXc& z);

/// Assemble a LowRankPlan from already-solved pieces (any base representation
/// able to produce U^H B^(-1) U, U^H B^(-1) z, z^H B^(-1) z and log det B).
LowRankPlan plan_lowrank_from_solves(const MatXc& UhBiU, const VecXc& UhBiz,
                                     double znorm2, double base_logdet, int M);

// ---------------------------------------------------------------------------
// Fast base representations for batched particle sweeps.  Both are exact
// (agree with the eigendecomposition path to round-off); they only change
// the factorization used.
// ---------------------------------------------------------------------------

/// B = eta I + W W^H with W an M x R aggregation of scaled factors
/// (R may be 0, meaning B = eta I).  Per batched column cost O(M R).
struct DiagPlusLowRank {
  double eta = 1.0;
  MatXc  W;          // M x R
  MatXc  L;          // lower Cholesky factor of G = eta I_R + W^H W
  double logdet = 0; // log det B = (M-R) log eta + log det G
  int    M = 0;

  int rank() const { return int(W.cols()); }

  double quadform(const VecXc& x) const;   // x^H B^(-1) x
  VecXc  solve(const VecXc& x) const;      // B^(-1) x
  MatXc  solve(const MatXc& X) const;      // B^(-1) X (columnwise)
  double logpdf(const VecXc& z) const;     // log CN(z; 0, B)

  /// Per column p of A: q[p] = a_p^H B^(-1) a_p and s[p] = a_p^H B^(-1) z.
  void batched_stats(const MatXc& A, const VecXc& z, VecXd& q_out,
                     VecXc& s_out) const;
};

DiagPlusLowRank make_diag_plus_lowrank(double eta, const MatXc& W);

/// Dense Cholesky base; chosen over the Woodbury path when the aggregated
/// rank approaches M.
struct CholeskyBase {
  MatXc  Lmat;       // lower Cholesky factor of B
  double logdet = 0;
  int    M = 0;

  double quadform(const VecXc& x) const;
  VecXc  solve(const VecXc& x) const;
  MatXc  solve(const MatXc& X) const;
  double logpdf(const VecXc& z) const;
  void batched_stats(const MatXc& A, const VecXc& z, VecXd& q_out,
                     VecXc& s_out) const;
};

/// Factor a dense Hermitian positive-definite matrix, retrying with a small
/// diagonal jitter if the first factorization fails; throws std::runtime_error
/// when the matrix stays indefinite.
CholeskyBase make_cholesky_base(const MatXc& B);

}  // namespace tbd
