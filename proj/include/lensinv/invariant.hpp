#pragma once

// The invariant I_k of L(p, q): the constant in
//
//   | wedge_{C-bar} l dl / sqrt|det(F|_C) prod 6V| |  =  |const * rho drho ^ sigma dsigma ^ ds ^ dalpha|
//
// where F = (1 / (l_i l_j)) d omega_i / d l_j.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "lensinv/lens.hpp"

namespace lensinv {

/// (p+2) x (p+2), rows and columns ordered a, b_0, ..., b_{p-1}, c.
Eigen::MatrixXd f_matrix(const LensRealization& r);

/// Principal submatrix on the given edge classes, in the given order.
Eigen::MatrixXd f_submatrix(const Eigen::MatrixXd& f, const std::vector<int>& edges);

/// F restricted to C = (b_1, ..., b_{p-2}).
Eigen::MatrixXd f_submatrix_c(const Eigen::MatrixXd& f, const EdgePartition& part);

/// Determinant by LU with partial pivoting; 1 for an empty matrix.
double determinant(const Eigen::MatrixXd& m);

/// M(e, t) = l_e * d l_e / d t over e in (a, b_0, b_{p-1}, c) and t in
/// (rho, sigma, s, alpha), from the closed-form lengths.
Eigen::Matrix4d free_length_jacobian(const LensParams& lp, const RealizationParams& rp);

/// Coefficient of rho drho ^ sigma dsigma ^ ds ^ dalpha in wedge_{C-bar} l dl,
/// i.e. det(M) / (rho sigma). Throws SingularJacobian when det(M) is negligible
/// against the product of the row norms of M.
double numerator_coefficient(const LensParams& lp, const RealizationParams& rp);

/// 8 R sin^2(pi k / p) sin(pi q k / p) cos(alpha + pi k / p).
double numerator_closed_form(const LensParams& lp, const RealizationParams& rp);

/// Everything that goes into one evaluation of the constant.
struct InvariantSample {
  RealizationParams params;
  double value = 0.0;         ///< the constant
  double numerator = 0.0;     ///< numerator_coefficient
  double det_fc = 0.0;        ///< det(F|_C)
  double volume_product = 0.0;  ///< prod over tetrahedra of 6 V_i
  double max_defect = 0.0;    ///< max |omega| after branch reduction
  double f_asymmetry = 0.0;   ///< max |F - F^T|
};

InvariantSample evaluate_sample(const LensParams& lp, const RealizationParams& rp);

/// |numerator| / sqrt|det(F|_C) prod 6 V_i|.
double invariant_const(const LensParams& lp, const RealizationParams& rp);

/// (16 / p) sin^2(pi k / p) sin^2(pi q k / p).
double conjecture_value(const LensParams& lp);

/// Published ten-digit values for p = 7, q in {1, 2}, k in {1, 2, 3}.
std::optional<double> published_value(const LensParams& lp);

/// k = 1 .. p/2 with gcd(k, p) = 1.
std::vector<int> admissible_k(int p);

struct InvariantReport {
  LensParams params;
  std::vector<double> samples;
  double mean = 0.0;
  double max_dev = 0.0;  ///< (max - min) / mean over the samples
  double conjecture = 0.0;
  double rel_err = 0.0;  ///< |mean - conjecture| / conjecture
  double max_defect = 0.0;
  std::optional<double> paper_ref_value;
  bool flagged = false;  ///< max_dev above the constancy tolerance
};

/// Evaluates the constant at `samples` generic realizations drawn from a
/// generator seeded with `seed`.
InvariantReport compute_invariant(const LensParams& lp, int samples, std::uint64_t seed,
                                  double constancy_tol = 1e-8);

/// The explicit 5 x 5 matrices for F|_C of L(7, 1) and L(7, 2) in terms of V_0..V_6
/// (already including the overall factor 1/6). Throws for other (p, q).
Eigen::MatrixXd reference_submatrix_l7(int q, const std::vector<double>& v);

/// Residuals of the q = 1 entry-by-entry derivation, all relative to the
/// largest |F|_C| entry.
struct SimplifiedEntriesCheck {
  double diag_vs_unsimplified = 0.0;      ///< F(b_i, b_i) against the five-volume form
  double unsimplified_vs_simplified = 0.0;  ///< five-volume form against -4/6V_i - 1/6V_{i-1} - 1/6V_{i+1}
  double diag_vs_simplified = 0.0;
  double offdiag_vs_unsimplified = 0.0;   ///< F(b_i, b_{i+1}) against the triple face sum
  double unsimplified_vs_simplified_offdiag = 0.0;
  double offdiag_vs_simplified = 0.0;

  double max_residual() const;
};

/// Requires q = 1.
SimplifiedEntriesCheck simplified_entries_check(const LensRealization& r);

struct HomeomorphismCheck {
  bool same = false;
  /// witness[i] is the k' paired with admissible_k(p)[i], when `same`.
  std::vector<int> witness;
};

/// Compares the multisets of conjectured values over admissible k for q1 and q2.
HomeomorphismCheck homeomorphism_consistency(int p, int q1, int q2);

/// Same comparison over any per-k values listed in admissible_k order.
HomeomorphismCheck compare_multisets(int p, const std::vector<double>& first,
                                     const std::vector<double>& second, double rel_tol);

/// q^{-1} mod p, or 0 when q is not invertible.
int inverse_mod(int q, int p);

/// k mapped to +-k mod p in 1..p/2.
int fold_k(int k, int p);

}  // namespace lensinv
