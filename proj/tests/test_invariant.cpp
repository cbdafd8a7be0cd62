#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/LU>

#include "lensinv/errors.hpp"
#include "lensinv/invariant.hpp"

using namespace lensinv;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form values evaluated to 30 digits with mpmath.
struct Expected {
  LensParams lp;
  double value;
};
const Expected kSeven[] = {
    {{7, 1, 1}, 0.08100567388821470675}, {{7, 1, 2}, 0.85403281940652528312}, {{7, 1, 3}, 2.0649615067052600101},
    {{7, 2, 1}, 0.26302377090042175766}, {{7, 2, 2}, 1.3279852776056817678}, {{7, 2, 3}, 0.40899095149389647454},
};

double entrywise_residual(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  const double scale = want.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < want.rows(); ++i)
    for (Eigen::Index j = 0; j < want.cols(); ++j) {
      const double denom = want(i, j) != 0.0 ? std::abs(want(i, j)) : scale;
      worst = std::max(worst, std::abs(got(i, j) - want(i, j)) / denom);
    }
  return worst;
}

}  // namespace

TEST_CASE("conjecture values") {
  for (const auto& e : kSeven) CHECK(conjecture_value(e.lp) == doctest::Approx(e.value).epsilon(1e-14));
  CHECK(conjecture_value({7, 1, 1}) == doctest::Approx(16.0 / 7.0 * std::pow(std::sin(kPi / 7), 4)));
  for (int p = 3; p <= 12; ++p)
    for (int q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1)
        for (int k : admissible_k(p))
          CHECK(conjecture_value({p, q, k}) == doctest::Approx(conjecture_value({p, p - q, k})).epsilon(1e-14));
  CHECK_THROWS_AS(conjecture_value({4, 2, 1}), InvalidLensParams);
}

TEST_CASE("admissible k") {
  CHECK(admissible_k(7) == std::vector<int>{1, 2, 3});
  CHECK(admissible_k(9) == std::vector<int>{1, 2, 4});
  CHECK(admissible_k(12) == std::vector<int>{1, 5});
  CHECK(admissible_k(3) == std::vector<int>{1});
}

TEST_CASE("F matrix is symmetric on lens realizations") {
  std::mt19937_64 rng(43);
  for (LensParams lp : {LensParams{7, 1, 1}, LensParams{7, 2, 2}, LensParams{9, 4, 4}, LensParams{5, 3, 1}}) {
    const LensRealization r = realize(lp, sample_generic_params(lp, rng));
    const Eigen::MatrixXd f = f_matrix(r);
    CHECK(f.rows() == lp.p + 2);
    CHECK((f - f.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * f.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("F restricted to C matches the explicit matrices for p = 7") {
  std::mt19937_64 rng(47);
  for (int q : {1, 2}) {
    for (int k : {1, 2, 3}) {
      const LensParams lp{7, q, k};
      for (int n = 0; n < 5; ++n) {
        const LensRealization r = realize(lp, sample_generic_params(lp, rng));
        const Eigen::MatrixXd fc = f_submatrix_c(f_matrix(r), edge_partition(7));
        CHECK(fc.rows() == 5);
        CAPTURE(q);
        CAPTURE(k);
        CHECK(entrywise_residual(fc, reference_submatrix_l7(q, r.volumes)) <= 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(reference_submatrix_l7(3, std::vector<double>(7, 1.0)), std::invalid_argument);
}

TEST_CASE("q = 1 entries follow both the unsimplified and simplified forms") {
  std::mt19937_64 rng(53);
  for (int p : {7, 9, 11}) {
    for (int k : admissible_k(p)) {
      const LensParams lp{p, 1, k};
      const SimplifiedEntriesCheck check = simplified_entries_check(realize(lp, sample_generic_params(lp, rng)));
      CAPTURE(p);
      CAPTURE(k);
      CHECK(check.diag_vs_unsimplified <= 1e-10);
      CHECK(check.unsimplified_vs_simplified <= 1e-10);
      CHECK(check.offdiag_vs_unsimplified <= 1e-10);
      CHECK(check.unsimplified_vs_simplified_offdiag <= 1e-10);
      CHECK(check.max_residual() <= 1e-10);
    }
  }
  CHECK_THROWS_AS(simplified_entries_check(realize({7, 2, 1}, {1, 1, 1, 0.2})), std::invalid_argument);
}

TEST_CASE("small C blocks") {
  const LensRealization r3 = realize({3, 1, 1}, {1.0, 1.2, 0.8, 0.4});
  const Eigen::MatrixXd fc3 = f_submatrix_c(f_matrix(r3), edge_partition(3));
  CHECK(fc3.rows() == 1);
  CHECK(determinant(fc3) == doctest::Approx(fc3(0, 0)));
  const LensRealization r5 = realize({5, 2, 1}, {1.0, 1.2, 0.8, 0.4});
  CHECK(f_submatrix_c(f_matrix(r5), edge_partition(5)).rows() == 3);
}

TEST_CASE("determinant by LU") {
  Eigen::MatrixXd m(3, 3);
  m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  CHECK(determinant(m) == doctest::Approx(4.0));
  CHECK(determinant(Eigen::MatrixXd(0, 0)) == 1.0);
}

TEST_CASE("numerator of the form") {
  std::mt19937_64 rng(59);
  for (LensParams lp : {LensParams{7, 1, 1}, LensParams{7, 2, 3}, LensParams{10, 3, 3}, LensParams{5, 4, 2}}) {
    for (int n = 0; n < 10; ++n) {
      const RealizationParams rp = sample_generic_params(lp, rng);
      const double coefficient = numerator_coefficient(lp, rp);
      CHECK(coefficient == doctest::Approx(numerator_closed_form(lp, rp)).epsilon(1e-10));
      // det M carries the rho sigma of rho drho ^ sigma dsigma.
      CHECK(free_length_jacobian(lp, rp).determinant() ==
            doctest::Approx(rp.rho * rp.sigma * numerator_closed_form(lp, rp)).epsilon(1e-10));

      RealizationParams flipped = rp;
      flipped.s = -rp.s;
      CHECK(numerator_coefficient(lp, flipped) == doctest::Approx(-coefficient).epsilon(1e-10));
      CHECK(lens_r(lp, flipped) == doctest::Approx(-lens_r(lp, rp)));
    }
  }
  const LensParams lp{7, 1, 1};
  const RealizationParams at_zero{1.0, 1.0, 1.0, kPi / 2 - kPi / 7};
  CHECK(std::abs(numerator_closed_form(lp, at_zero)) <= 1e-15);
  CHECK_THROWS_AS(numerator_coefficient(lp, at_zero), SingularJacobian);
}

TEST_CASE("invariant reproduces the closed form for p = 7") {
  std::mt19937_64 rng(61);
  for (const auto& e : kSeven) {
    const double value = invariant_const(e.lp, sample_generic_params(e.lp, rng));
    CHECK(value == doctest::Approx(e.value).epsilon(1e-10));
  }
}

TEST_CASE("published ten-digit values") {
  // The printed values agree with the computed invariant to about nine
  // significant digits; the last printed digits of I_1 are off.
  std::mt19937_64 rng(67);
  for (const auto& e : kSeven) {
    const auto published = published_value(e.lp);
    REQUIRE(published);
    CHECK(invariant_const(e.lp, sample_generic_params(e.lp, rng)) == doctest::Approx(*published).epsilon(5e-9));
  }
  CHECK_FALSE(published_value({7, 3, 1}));
  CHECK_FALSE(published_value({5, 1, 1}));
}

TEST_CASE("invariant is constant over realizations and scale") {
  const LensParams lp{7, 2, 1};
  const InvariantReport report = compute_invariant(lp, 20, 1234);
  CHECK(report.samples.size() == 20);
  CHECK(report.max_dev <= 1e-8);
  CHECK_FALSE(report.flagged);
  CHECK(report.rel_err <= 1e-10);
  CHECK(report.max_defect <= 1e-10);
  CHECK(report.paper_ref_value);

  const RealizationParams rp{1.1, 0.9, 0.6, 0.25};
  const double base = invariant_const(lp, rp);
  for (double lambda : {0.5, 2.0}) {
    const RealizationParams scaled{lambda * rp.rho, lambda * rp.sigma, lambda * rp.s, rp.alpha};
    CHECK(invariant_const(lp, scaled) == doctest::Approx(base).epsilon(1e-11));
  }
}

TEST_CASE("reports are reproducible from the seed") {
  const InvariantReport a = compute_invariant({9, 2, 4}, 5, 99);
  const InvariantReport b = compute_invariant({9, 2, 4}, 5, 99);
  CHECK(a.samples == b.samples);
  const InvariantReport c = compute_invariant({9, 2, 4}, 5, 100);
  CHECK(a.samples != c.samples);
  CHECK_THROWS_AS(compute_invariant({9, 3, 1}, 5, 1), InvalidLensParams);
}

TEST_CASE("smallest lens spaces") {
  // p = 3 leaves a single edge in C.
  for (int q : {1, 2}) {
    const InvariantReport report = compute_invariant({3, q, 1}, 10, 7);
    CHECK(report.max_dev <= 1e-8);
    CHECK(report.rel_err <= 1e-10);
  }
}

TEST_CASE("evaluation details") {
  const InvariantSample s = evaluate_sample({7, 1, 3}, {0.9, 1.4, 0.6, 0.2});
  CHECK(s.f_asymmetry <= 1e-9);
  CHECK(s.max_defect <= 1e-10);
  CHECK(s.value == doctest::Approx(std::abs(s.numerator) / std::sqrt(std::abs(s.det_fc * s.volume_product))));
}

TEST_CASE("homeomorphism consistency") {
  const HomeomorphismCheck minus = homeomorphism_consistency(7, 1, 6);
  CHECK(minus.same);
  CHECK(minus.witness == std::vector<int>{1, 2, 3});

  // 4 = 2^{-1} mod 7; k -> 2k folded into 1..3.
  const HomeomorphismCheck inverse = homeomorphism_consistency(7, 2, 4);
  CHECK(inverse.same);
  CHECK(inverse.witness == std::vector<int>{2, 3, 1});
  for (std::size_t i = 0; i < inverse.witness.size(); ++i)
    CHECK(conjecture_value({7, 2, admissible_k(7)[i]}) ==
          doctest::Approx(conjecture_value({7, 4, inverse.witness[i]})).epsilon(1e-14));

  CHECK_FALSE(homeomorphism_consistency(7, 1, 2).same);
  CHECK(homeomorphism_consistency(7, 1, 2).witness.empty());
  CHECK(homeomorphism_consistency(11, 2, 6).same);   // 6 = 2^{-1} mod 11
  CHECK(homeomorphism_consistency(11, 3, 7).same);   // 7 = -(3^{-1}) mod 11
  CHECK_FALSE(homeomorphism_consistency(11, 2, 3).same);
  CHECK_THROWS_AS(homeomorphism_consistency(8, 1, 2), InvalidLensParams);
}

TEST_CASE("modular helpers") {
  CHECK(inverse_mod(2, 7) == 4);
  CHECK(inverse_mod(3, 7) == 5);
  CHECK(inverse_mod(2, 8) == 0);
  CHECK(fold_k(6, 7) == 1);
  CHECK(fold_k(4, 7) == 3);
  CHECK(fold_k(9, 7) == 2);
  CHECK(fold_k(-2, 7) == 2);
}
