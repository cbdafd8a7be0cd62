#pragma once

// Bipyramid pre-triangulation of the lens space L(p, q) and its realization
// through the universal covering, where the generator of the fundamental group
// acts as the rotation by 2 pi k / p about the z axis.
//
// Edge classes are ordered a, b_0, ..., b_{p-1}, c:
//   a   = B_i B_{i+1}          (index 0)
//   b_j = C_0 B_j = C_1 B_{j+q} (index 1 + j)
//   c   = C_0 C_1               (index p + 1)
// Tetrahedron i has local vertices (C_0, C_1, B_{i+1}, B_i).

#include <random>
#include <vector>

#include "lensinv/complex.hpp"
#include "lensinv/tetgeom.hpp"

namespace lensinv {

struct LensParams {
  int p = 0;
  int q = 0;
  int k = 0;
};

/// Throws InvalidLensParams unless p >= 3, 0 < q < p, gcd(p, q) = 1,
/// 1 <= k <= p / 2 and gcd(p, k) = 1.
void validate(const LensParams& lp);

/// Cylindrical placement: B_j at (rho, 2 pi j k / p, 0) and
/// C_j at (sigma, alpha + 2 pi q j k / p, s).
struct RealizationParams {
  double rho = 1.0;
  double sigma = 1.0;
  double s = 1.0;
  double alpha = 0.0;
};

inline int edge_a() { return 0; }
inline int edge_b(int p, int j) { return 1 + ((j % p) + p) % p; }
inline int edge_c(int p) { return p + 1; }

/// Throws InvalidLensParams unless p >= 3, 0 < q < p and gcd(p, q) = 1.
PreComplex build_lens_complex(int p, int q);

struct LensRealization {
  LensParams params;
  RealizationParams coords;
  PreComplex complex;
  std::vector<Point3> b_points;  ///< B_0 .. B_{p-1}
  std::vector<Point3> c_points;  ///< C_0 .. C_{p-1}
  Eigen::VectorXd lengths;       ///< per edge class
  std::vector<int> signs;        ///< per tetrahedron
  std::vector<double> volumes;   ///< V_i = V_{C_0 C_1 B_{i+1} B_i}
  double r = 0.0;                ///< 4 rho sigma s sin(pi k / p) sin(pi q k / p)

  MetricData metric() const { return {lengths, signs}; }
  const Point3& b(int j) const;
  const Point3& c(int j) const;
};

/// Throws DegenerateRealization when some |V_i| <= 1e-12 * (max length)^3.
LensRealization realize(const LensParams& lp, const RealizationParams& rp);

double lens_r(const LensParams& lp, const RealizationParams& rp);

/// V_i = (1/6) R sin(alpha + pi k (q - 1 - 2 i) / p).
std::vector<double> signed_volumes_closed_form(const LensParams& lp, const RealizationParams& rp);

/// C-bar = (a, b_0, b_{p-1}, c) carries the four free lengths; C = (b_1 .. b_{p-2})
/// enters the determinant.
struct EdgePartition {
  std::vector<int> free_edges;
  std::vector<int> determinant_edges;
};

EdgePartition edge_partition(int p);

/// Draws generic parameters: rho, sigma, s in [0.5, 2] and alpha in the middle
/// 90% of a random interval (m pi / p, (m + 1) pi / p), away from the zeros of
/// every V_i. Draws with min |V_i| < 1e-6 |R / 6| or |cos(alpha + pi k / p)| < 0.05
/// are rejected; DegenerateRealization after `max_attempts` rejections.
RealizationParams sample_generic_params(const LensParams& lp, std::mt19937_64& rng,
                                        int max_attempts = 1000);

bool is_generic(const LensParams& lp, const RealizationParams& rp);

/// rho = sigma = s = 2 and alpha on the grid (m + u / 10) pi / p, u = 1..9, with
/// the smallest max |d omega / d l|. Deterministic; used for finite-difference
/// checks, which need every tetrahedron far from a sliver.
RealizationParams well_conditioned_params(const LensParams& lp);

}  // namespace lensinv
