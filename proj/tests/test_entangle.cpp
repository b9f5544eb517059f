#include <doctest.h>

#include <cmath>

#include "entclass/entangle.hpp"
#include "oracles.hpp"

using namespace entclass;

namespace {

DensityMatrix canonical(std::array<double, 5> l, double phi = 0.0) {
  double n = 0.0;
  for (double v : l) n += v * v;
  for (double& v : l) v /= std::sqrt(n);
  return density_from_ket(ket_from_canonical(CanonicalCoefficients(l, phi, SloccClass::SEP)));
}

RankTriple triple(const std::array<int, 3>& r) { return {r[0], r[1], r[2]}; }

}  // namespace

TEST_CASE("correlation tensors of simple states") {
  SUBCASE("|000>") {
    const auto t = correlation_tensors(canonical({1, 0, 0, 0, 0}));
    CHECK(t.t1 == Vec3{0, 0, 1});
    CHECK(t.t2 == Vec3{0, 0, 1});
    CHECK(t.t3 == Vec3{0, 0, 1});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          CHECK(t.t123[i][j][k] == doctest::Approx(i == 2 && j == 2 && k == 2 ? 1.0 : 0.0));
  }
  SUBCASE("GHZ") {
    const auto t = correlation_tensors(canonical({1, 0, 0, 0, 1}));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double expected = 0.0;
          if (i == 0 && j == 0 && k == 0) expected = 1.0;
          if ((i == 0 && j == 1 && k == 1) || (i == 1 && j == 0 && k == 1) ||
              (i == 1 && j == 1 && k == 0))
            expected = -1.0;
          CHECK(t.t123[i][j][k] == doctest::Approx(expected));
        }
  }
  SUBCASE("maximally mixed") {
    const auto t = correlation_tensors(DensityMatrix::maximally_mixed());
    for (int i = 0; i < 3; ++i) {
      CHECK(t.t1[i] == 0.0);
      for (int j = 0; j < 3; ++j) {
        CHECK(t.t12[i][j] == 0.0);
        for (int k = 0; k < 3; ++k) CHECK(t.t123[i][j][k] == 0.0);
      }
    }
  }
}

TEST_CASE("tensors agree with explicit Kronecker products and stay in range") {
  Rng rng(4);
  for (auto cls : kAllClasses) {
    const auto rho = density_from_ket(ket_from_canonical(sample_class_coefficients(cls, rng)));
    const auto t = correlation_tensors(rho);
    const auto ref = oracle::full_tensor(rho.entries());
    for (int i = 0; i < 3; ++i) {
      CHECK(t.t1[i] == doctest::Approx(oracle::expectation(rho.entries(), i + 1, 0, 0)));
      CHECK(t.t3[i] == doctest::Approx(oracle::expectation(rho.entries(), 0, 0, i + 1)));
      for (int j = 0; j < 3; ++j) {
        CHECK(t.t13[i][j] ==
              doctest::Approx(oracle::expectation(rho.entries(), i + 1, 0, j + 1)));
        for (int k = 0; k < 3; ++k) {
          CHECK(t.t123[i][j][k] == doctest::Approx(ref[i][j][k]).epsilon(1e-12));
          CHECK(std::abs(t.t123[i][j][k]) <= 1.0 + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("mode unfolding layout") {
  Tensor3 t{};
  t[0][1][2] = 1.0;  // X, Y, Z
  const auto m1 = mode_unfolding(t, 1);
  CHECK(m1[0][5] == 1.0);
  const auto m2 = mode_unfolding(t, 2);
  CHECK(m2[1][2] == 1.0);
  const auto m3 = mode_unfolding(t, 3);
  CHECK(m3[2][1] == 1.0);
  const auto zero = mode_unfolding(Tensor3{}, 2);
  for (const auto& row : zero)
    for (double v : row) CHECK(v == 0.0);
  CHECK_THROWS_AS(mode_unfolding(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(mode_unfolding(t, 4), std::invalid_argument);
}

TEST_CASE("unfolding is lossless") {
  Rng rng(6);
  Tensor3 t{};
  double total = 0.0;
  for (auto& a : t)
    for (auto& b : a)
      for (double& v : b) {
        v = rng.normal();
        total += v * v;
      }
  for (int mode = 1; mode <= 3; ++mode) {
    double s = 0.0;
    for (const auto& row : mode_unfolding(t, mode))
      for (double v : row) s += v * v;
    CHECK(s == doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("singular values and numerical rank") {
  SUBCASE("zero matrix") {
    CHECK(numerical_rank(Unfolding{}, 1e-10) == 0);
    CHECK(numerical_rank(Unfolding{}, 0.25) == 0);
  }
  SUBCASE("constructed spectrum {1, 0.2, 1e-12}") {
    // M = U diag(s) V^T with rotations for U and the first three columns of
    // a 9x9 rotation for V.
    Eigen::Matrix3d u = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
    Eigen::Matrix<double, 9, 9> a = Eigen::Matrix<double, 9, 9>::Random();
    Eigen::HouseholderQR<Eigen::Matrix<double, 9, 9>> qr(a);
    Eigen::Matrix<double, 9, 9> v = qr.householderQ();
    Eigen::Matrix<double, 3, 9> sigma = Eigen::Matrix<double, 3, 9>::Zero();
    sigma(0, 0) = 1.0;
    sigma(1, 1) = 0.2;
    sigma(2, 2) = 1e-12;
    const Eigen::Matrix<double, 3, 9> m = u * sigma * v.transpose();
    Unfolding um{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 9; ++c) um[r][c] = m(r, c);
    const auto sv = singular_values(um);
    CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sv[1] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(std::abs(sv[2] - 1e-12) < 1e-14);
    CHECK(numerical_rank(um, 0.25) == 1);
    CHECK(numerical_rank(um, 1e-10) == 2);
    CHECK(numerical_rank(um, 1e-13) == 3);
  }
  SUBCASE("agrees with Eigen's SVD and is monotone in tol") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
      Unfolding um{};
      Eigen::Matrix<double, 3, 9> m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 9; ++c) m(r, c) = um[r][c] = rng.normal();
      Eigen::JacobiSVD<Eigen::Matrix<double, 3, 9>> svd(m);
      const auto sv = singular_values(um);
      for (int i = 0; i < 3; ++i)
        CHECK(sv[i] == doctest::Approx(svd.singularValues()(i)).epsilon(1e-12));
      int prev = 4;
      for (double tol : {1e-12, 1e-3, 0.1, 0.5, 1.0, 2.0, 5.0}) {
        const int r = numerical_rank(um, tol);
        CHECK(r <= prev);
        prev = r;
      }
    }
  }
  CHECK_THROWS_AS(numerical_rank(Unfolding{}, 0.0), std::invalid_argument);
}

TEST_CASE("rank table") {
  CHECK(classify_by_ranks({3, 3, 3}) == RankClass::GME);
  CHECK(classify_by_ranks({2, 2, 2}) == RankClass::GME);
  CHECK(classify_by_ranks({1, 3, 3}) == RankClass::BS1);
  CHECK(classify_by_ranks({3, 1, 3}) == RankClass::BS2);
  CHECK(classify_by_ranks({3, 3, 1}) == RankClass::BS3);
  CHECK(classify_by_ranks({1, 1, 1}) == RankClass::SEP);
  CHECK(classify_by_ranks({1, 2, 3}) == RankClass::UNKNOWN);
  CHECK(classify_by_ranks({0, 0, 0}) == RankClass::UNKNOWN);
  CHECK(std::string(rank_class_name(RankClass::BS2)) == "BS2");
}

TEST_CASE("canonical GHZ and W ranks by brute force") {
  const auto ghz = canonical({1, 0, 0, 0, 1});
  CHECK(triple(oracle::tensor_ranks(ghz.entries(), 1e-10)) == RankTriple{2, 2, 2});
  CHECK(correlation_ranks(ghz, 1e-10) == RankTriple{2, 2, 2});

  const auto w = canonical({1, 0, 1, 1, 0});
  CHECK(triple(oracle::tensor_ranks(w.entries(), 1e-10)) == RankTriple{3, 3, 3});
  CHECK(correlation_ranks(w, 1e-10) == RankTriple{3, 3, 3});
}

TEST_CASE("ranks match the brute-force route on sampled states") {
  Rng rng(12);
  for (auto cls : kAllClasses)
    for (int i = 0; i < 20; ++i) {
      const auto rho =
          density_from_ket(ket_from_canonical(sample_class_coefficients(cls, rng)));
      CHECK(correlation_ranks(rho, 1e-10) == triple(oracle::tensor_ranks(rho.entries(), 1e-10)));
    }
}

TEST_CASE("three-tangle") {
  CHECK(three_tangle(canonical({1, 0, 0, 0, 1})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(three_tangle(canonical({0.8, 0, 0, 0, 0.6})) == doctest::Approx(0.9216).epsilon(1e-12));
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto w = density_from_ket(
        ket_from_canonical(sample_class_coefficients(SloccClass::W, rng)));
    CHECK(three_tangle(w) == 0.0);
  }
}

TEST_CASE("oracle recovers generating classes of clean states") {
  Rng rng(14);
  for (auto cls : kAllClasses)
    for (int i = 0; i < 100; ++i) {
      const auto rho =
          density_from_ket(ket_from_canonical(sample_class_coefficients(cls, rng)));
      CAPTURE(class_name(cls));
      CHECK(slocc_oracle(rho, kRankTolClean, kTangleTolClean) == cls);
    }
  CHECK_FALSE(slocc_oracle(DensityMatrix::maximally_mixed(), 1e-10, 1e-6).has_value());
}
