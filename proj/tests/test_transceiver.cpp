// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "mimodiag/optim.hpp"
#include "mimodiag/transceiver.hpp"
#include "test_util.hpp"

using namespace mimodiag;
using testutil::random_complex;
using testutil::random_psd;

namespace {

// Random unitary via the orthonormal factor of a square SVD.
Matrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  return truncated_svd(random_complex(rng, n, n)).left;
}

}  // namespace

TEST_CASE("capacity_achieving_design: reference 2x2 pair") {
  const TransmitCovariance s_x(testutil::kSx2);
  const LinearTransceiver t = capacity_achieving_design(testutil::kH2, s_x);

  const double r = achievable_rate(testutil::kH2, t);
  CHECK(r == doctest::Approx(testutil::kCapacity2).epsilon(1e-4));
  CHECK(r == doctest::Approx(capacity(testutil::kH2, s_x)).epsilon(1e-12));

  const ConditionReport rep = check_conditions(testutil::kH2, s_x, t);
  CHECK(rep.pass());

  const Matrix printed_v = testutil::mat2(-0.2925, 0.4517, 1.2851, -0.4195);
  const Matrix printed_u = testutil::mat2(-0.0824, 0.9966, 0.9966, 0.0825);
  CHECK(testutil::column_sign_distance(t.precoder, printed_v) <= 1e-3);
  CHECK(testutil::column_sign_distance(t.decoder, printed_u) <= 1e-3);
}

TEST_CASE("capacity_achieving_design: identity pair") {
  const LinearTransceiver t = capacity_achieving_design(
      Matrix::Identity(2, 2), TransmitCovariance(Matrix::Identity(2, 2)));
  CHECK((t.precoder.adjoint() * t.precoder - Matrix::Identity(2, 2)).norm() <=
        1e-10);
  CHECK((t.decoder.adjoint() * t.decoder - Matrix::Identity(2, 2)).norm() <=
        1e-10);
  CHECK(t.stream_gains(0) == doctest::Approx(1.0));
  CHECK(t.stream_gains(1) == doctest::Approx(1.0));
  CHECK(achievable_rate(Matrix::Identity(2, 2), t) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("capacity_achieving_design: degenerates to the channel-SVD design") {
  // covariance built on the channel's right singular vectors
  std::mt19937_64 rng(21);
  const Matrix h = random_complex(rng, 3, 3);
  const SvdResult ch = truncated_svd(h);
  RealVector p(3);
  p << 2.0, 1.0, 0.5;
  const Matrix s =
      ch.right * p.asDiagonal() * ch.right.adjoint();
  const TransmitCovariance s_x(0.5 * (s + s.adjoint()));

  const LinearTransceiver got = capacity_achieving_design(h, s_x);
  const LinearTransceiver ref =
      testutil::sort_streams_by_gain(svd_design(h, p));
  CHECK(testutil::column_sign_distance(got.precoder, ref.precoder) <= 1e-8);
  CHECK(testutil::column_sign_distance(got.decoder, ref.decoder) <= 1e-8);
}

TEST_CASE("capacity_achieving_design: zero product rejected") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = 1.0;
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  CHECK_THROWS_AS(capacity_achieving_design(h, TransmitCovariance(s)),
                  RankZeroError);
}

TEST_CASE("svd_design: diagonal channel with flat power") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 2.0;
  h(1, 1) = 1.0;
  RealVector p(2);
  p << 1.0, 1.0;
  const LinearTransceiver t = svd_design(h, p);
  CHECK((t.precoder - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(t.stream_gains(0) == doctest::Approx(2.0));
  CHECK(t.stream_gains(1) == doctest::Approx(1.0));
  CHECK(achievable_rate(h, t) ==
        doctest::Approx(std::log2(5.0) + 1.0).epsilon(1e-12));
}

TEST_CASE("svd_design: water-filling beats the arbitrary covariance") {
  const SvdResult ch = truncated_svd(testutil::kH2);
  const RealVector gains =
      ch.singular_values.cwiseProduct(ch.singular_values);
  const double power = testutil::kSx2.trace().real();  // 2.1171
  const RealVector p = waterfill(gains, power);
  const LinearTransceiver t = svd_design(testutil::kH2, p);
  CHECK(achievable_rate(testutil::kH2, t) >= testutil::kCapacity2 - 1e-4);
}

TEST_CASE("svd_design: all-zero power gives zero rate") {
  const LinearTransceiver t =
      svd_design(testutil::kH2, RealVector::Zero(2));
  CHECK(achievable_rate(testutil::kH2, t) == 0.0);
}

TEST_CASE("svd_design: power length must match rank") {
  CHECK_THROWS_AS(svd_design(testutil::kH2, RealVector::Ones(3)),
                  std::domain_error);
}

TEST_CASE("evd_zf_design: reference 2x2 pair is capacity-suboptimal") {
  const TransmitCovariance s_x(testutil::kSx2);
  const LinearTransceiver t = evd_zf_design(testutil::kH2, s_x);
  CHECK(achievable_rate(testutil::kH2, t) ==
        doctest::Approx(testutil::kZfRate2).epsilon(1e-4));
  CHECK(achievable_rate(testutil::kH2, t) <
        capacity(testutil::kH2, s_x));
  // printed ZF decoder (columns are not unit norm by construction)
  const Matrix printed_u = testutil::mat2(-1.2832, 2.8846, 0.9116, 0.6576);
  CHECK(testutil::column_sign_distance(t.decoder, printed_u) <= 1e-3);
  // U^H H V = I exactly
  CHECK((t.decoder.adjoint() * testutil::kH2 * t.precoder -
         Matrix::Identity(2, 2))
            .norm() <= 1e-9);
}

TEST_CASE("evd_zf_design: lossless when the covariance is channel-SVD based") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = random_complex(rng, 3, 3);
    const SvdResult ch = truncated_svd(h);
    RealVector p(3);
    p << 1.5, 0.8, 0.3;
    const Matrix s = ch.right * p.asDiagonal() * ch.right.adjoint();
    const TransmitCovariance s_x(0.5 * (s + s.adjoint()));
    const LinearTransceiver t = evd_zf_design(h, s_x);
    REQUIRE(achievable_rate(h, t) ==
            doctest::Approx(capacity(h, s_x)).epsilon(1e-9));
  }
}

TEST_CASE("evd_zf_design: identity pair achieves capacity") {
  const LinearTransceiver t = evd_zf_design(
      Matrix::Identity(2, 2), TransmitCovariance(Matrix::Identity(2, 2)));
  CHECK(achievable_rate(Matrix::Identity(2, 2), t) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("evd_zf_design: rank-deficient effective channel rejected") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 1.0;
  CHECK_THROWS_AS(
      evd_zf_design(h, TransmitCovariance(Matrix::Identity(2, 2))),
      SingularMatrixError);
}

TEST_CASE("stream_snrs: gains squared for the diagonalizing design") {
  std::mt19937_64 rng(25);
  const Matrix h = random_complex(rng, 4, 4);
  const TransmitCovariance s_x(random_psd(rng, 4, 4));
  const LinearTransceiver t = capacity_achieving_design(h, s_x);
  const RealVector snr = stream_snrs(h, t);
  for (Eigen::Index d = 0; d < snr.size(); ++d) {
    REQUIRE(snr(d) == doctest::Approx(t.stream_gains(d) * t.stream_gains(d))
                          .epsilon(1e-10));
    // unit decoder columns
    REQUIRE(t.decoder.col(d).norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("stream_snrs: identity transceiver") {
  LinearTransceiver t;
  t.precoder = Matrix::Identity(2, 2);
  t.decoder = Matrix::Identity(2, 2);
  t.stream_gains = RealVector::Ones(2);
  const RealVector snr = stream_snrs(Matrix::Identity(2, 2), t);
  CHECK(snr(0) == doctest::Approx(1.0));
  CHECK(snr(1) == doctest::Approx(1.0));
}

TEST_CASE("stream_snrs: ZF SNRs are rate-consistent with the reference total") {
  const LinearTransceiver t =
      evd_zf_design(testutil::kH2, TransmitCovariance(testutil::kSx2));
  const RealVector snr = stream_snrs(testutil::kH2, t);
  double r = 0.0;
  for (Eigen::Index d = 0; d < snr.size(); ++d) r += std::log2(1.0 + snr(d));
  CHECK(r == doctest::Approx(testutil::kZfRate2).epsilon(1e-4));
}

TEST_CASE("stream_snrs: zero decoder column rejected") {
  LinearTransceiver t;
  t.precoder = Matrix::Identity(2, 2);
  t.decoder = Matrix::Zero(2, 2);
  t.decoder(0, 0) = 1.0;
  CHECK_THROWS_AS(stream_snrs(Matrix::Identity(2, 2), t), std::domain_error);
}

TEST_CASE("achievable_rate: single stream") {
  LinearTransceiver t;
  t.precoder = Matrix::Identity(1, 1);
  t.decoder = Matrix::Identity(1, 1);
  t.stream_gains = RealVector::Ones(1);
  CHECK(achievable_rate(Matrix::Identity(1, 1), t) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("check_conditions: ZF design fails only the capacity condition") {
  const TransmitCovariance s_x(testutil::kSx2);
  const LinearTransceiver t = evd_zf_design(testutil::kH2, s_x);
  const ConditionReport rep = check_conditions(testutil::kH2, s_x, t);
  CHECK(!rep.capacity_ok);
  CHECK(rep.cap_gap == doctest::Approx(0.3651).epsilon(1e-3));
  CHECK(rep.diag_ok);
  CHECK(rep.cov_ok);
  CHECK(!rep.pass());
}

TEST_CASE("check_conditions: random decoder breaks diagonalization") {
  std::mt19937_64 rng(27);
  const TransmitCovariance s_x(testutil::kSx2);
  LinearTransceiver t = capacity_achieving_design(testutil::kH2, s_x);
  t.decoder = random_unitary(rng, 2);
  const ConditionReport rep = check_conditions(testutil::kH2, s_x, t);
  CHECK(!rep.diag_ok);
}

TEST_CASE("mmse_sic_rate: recovers capacity for the EVD precoder") {
  const Matrix v = psd_sqrt(testutil::kSx2);
  CHECK(mmse_sic_rate(testutil::kH2, v) ==
        doctest::Approx(testutil::kCapacity2).epsilon(1e-4));
}

TEST_CASE("mmse_sic_rate: single stream has no cancellation stage") {
  std::mt19937_64 rng(29);
  const Matrix h = random_complex(rng, 3, 3);
  const Matrix v = random_complex(rng, 3, 1);
  CHECK(mmse_sic_rate(h, v) ==
        doctest::Approx(std::log2(1.0 + (h * v).squaredNorm())).epsilon(1e-12));
}

TEST_CASE("mmse_sic_rate: decoding order does not change the total") {
  std::mt19937_64 rng(31);
  const Matrix h = random_complex(rng, 4, 4);
  const Matrix v = random_complex(rng, 4, 4);
  const double fwd = mmse_sic_rate(h, v, {0, 1, 2, 3});
  const double rev = mmse_sic_rate(h, v, {3, 2, 1, 0});
  CHECK(fwd == doctest::Approx(rev).epsilon(1e-10));
  const Matrix s = v * v.adjoint();
  CHECK(fwd == doctest::Approx(capacity(
                   h, TransmitCovariance(0.5 * (s + s.adjoint()))))
                   .epsilon(1e-10));
}

TEST_CASE("property: design totality over random instances") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = dim(rng);
    const int n = dim(rng);
    std::uniform_int_distribution<int> rk(1, m);
    const Matrix h = random_complex(rng, n, m);
    const TransmitCovariance s_x(random_psd(rng, m, rk(rng)));
    const LinearTransceiver t = capacity_achieving_design(h, s_x);
    const ConditionReport rep =
        check_conditions(h, effective_covariance(h, s_x), t);
    REQUIRE(rep.cap_gap <= 1e-8);
    REQUIRE(rep.diag_residual <= 1e-8);
    REQUIRE(rep.cov_residual <= 1e-8);
    // rate equals capacity through the per-stream gains
    double from_gains = 0.0;
    for (Eigen::Index d = 0; d < t.stream_gains.size(); ++d) {
      REQUIRE(t.stream_gains(d) > 0.0);
      if (d > 0) REQUIRE(t.stream_gains(d) <= t.stream_gains(d - 1));
      from_gains += std::log2(1.0 + t.stream_gains(d) * t.stream_gains(d));
    }
    REQUIRE(from_gains == doctest::Approx(rep.capacity).epsilon(1e-9));
  }
}

TEST_CASE("property: ZF rate never exceeds capacity") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix h = random_complex(rng, 3, 3);
    const TransmitCovariance s_x(random_psd(rng, 3, 3));
    const LinearTransceiver t = evd_zf_design(h, s_x);
    const ConditionReport rep = check_conditions(h, s_x, t);
    REQUIRE(rep.rate <= rep.capacity + 1e-9);
    REQUIRE(rep.diag_ok);
    REQUIRE(rep.cov_ok);
  }
}

TEST_CASE("property: rates invariant under left unitary channel rotation") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix h = random_complex(rng, 4, 4);
    const Matrix q = random_unitary(rng, 4);
    const TransmitCovariance s_x(random_psd(rng, 4, 4));
    const double r1 =
        achievable_rate(h, capacity_achieving_design(h, s_x));
    const double r2 =
        achievable_rate(q * h, capacity_achieving_design(q * h, s_x));
    REQUIRE(r1 == doctest::Approx(r2).epsilon(1e-10));
  }
}

TEST_CASE("property: MMSE-SIC equals capacity for all orders") {
  std::mt19937_64 rng(39);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = dim(rng);
    const int n = dim(rng);
    const Matrix h = random_complex(rng, n, m);
    const Matrix v = random_complex(rng, m, dim(rng));
    const Matrix s = v * v.adjoint();
    const double cap =
        capacity(h, TransmitCovariance(0.5 * (s + s.adjoint())));
    std::vector<int> fwd(static_cast<std::size_t>(v.cols()));
    std::iota(fwd.begin(), fwd.end(), 0);
    std::vector<int> rev(fwd.rbegin(), fwd.rend());
    REQUIRE(mmse_sic_rate(h, v, fwd) == doctest::Approx(cap).epsilon(1e-9));
    REQUIRE(mmse_sic_rate(h, v, rev) == doctest::Approx(cap).epsilon(1e-9));
  }
}
