#include "rpsdp/error.hpp"
#include "rpsdp/linalg.hpp"
#include "rpsdp/projector.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <thread>

using namespace rpsdp;
using rpsdp::testing::random_psd;
using rpsdp::testing::random_symmetric;

namespace {

double mean_column_norm2(ProjectorKind kind, Index n, Index k, double gamma, int samples) {
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Projector p = sample_projector(kind, n, k, gamma, 1000 + static_cast<std::uint64_t>(s));
    sum += p.column(0).squaredNorm();
  }
  return sum / samples;
}

}  // namespace

TEST_SUITE("projector") {
  TEST_CASE("dense gaussian when gamma is one") {
    const Projector p = sample_sparse_subgaussian(4, 4, 1.0, 42);
    CHECK(p.nnz() == 16);
    const Eigen::MatrixXd d = p.to_dense();
    CHECK((d.array() != 0.0).all());

    // Entry standard deviation 1/sqrt(k gamma) = 1/2, pooled over many draws.
    double sq = 0.0;
    Index count = 0;
    for (std::uint64_t s = 0; s < 2000; ++s) {
      const Eigen::MatrixXd e = sample_sparse_subgaussian(4, 4, 1.0, s).to_dense();
      sq += e.squaredNorm();
      count += e.size();
    }
    CHECK(std::sqrt(sq / static_cast<double>(count)) == doctest::Approx(0.5).epsilon(0.02));
  }

  TEST_CASE("nonzero count follows the binomial law") {
    const Index n = 1000, k = 100;
    const double gamma = 0.05;
    double total = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) total += static_cast<double>(sample_sparse_subgaussian(n, k, gamma, s).nnz());
    const double mean = total / 100.0;
    const double sd_of_mean = std::sqrt(static_cast<double>(k * n) * gamma * (1 - gamma) / 100.0);
    CHECK(std::abs(mean - gamma * static_cast<double>(k * n)) <= 3 * sd_of_mean);
  }

  TEST_CASE("isotropy of the sparse sub-gaussian projector") {
    // Column 0 of P is P e_1.
    const double mean = mean_column_norm2(ProjectorKind::SparseSubgaussian, 500, 50, 0.2, 10000);
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("achlioptas entries and isotropy") {
    const Index k = 80;
    const double q = 1.0 / 3.0;
    const Projector p = sample_achlioptas(800, k, q, 5);
    const double mag = 1.0 / std::sqrt(static_cast<double>(k) * q);
    const auto& m = p.matrix();
    for (Index j = 0; j < m.outerSize(); ++j)
      for (Projector::SparseMatrix::InnerIterator it(m, j); it; ++it) REQUIRE(std::abs(std::abs(it.value()) - mag) < 1e-15);

    const double mean = mean_column_norm2(ProjectorKind::Achlioptas, 800, k, q, 10000);
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("achlioptas with q one is a scaled Rademacher matrix") {
    const Index k = 9;
    const Eigen::MatrixXd d = sample_achlioptas(30, k, 1.0, 3).to_dense();
    CHECK((d.array().abs() - 1.0 / 3.0).abs().maxCoeff() < 1e-15);
  }

  TEST_CASE("invalid dimensions and densities") {
    auto kind_of = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::Io;
    };
    CHECK(kind_of([] { sample_sparse_subgaussian(5, 0, 0.5, 1); }) == ErrorKind::InvalidDimension);
    CHECK(kind_of([] { sample_sparse_subgaussian(5, 6, 0.5, 1); }) == ErrorKind::InvalidDimension);
    CHECK(kind_of([] { sample_sparse_subgaussian(5, 2, 0.0, 1); }) == ErrorKind::InvalidDensity);
    CHECK(kind_of([] { sample_achlioptas(5, 2, 1.5, 1); }) == ErrorKind::InvalidDensity);
  }

  TEST_CASE("stored entries are nonzero and finite") {
    const Projector p = sample_sparse_subgaussian(300, 40, 0.1, 8);
    const auto& m = p.matrix();
    for (Index j = 0; j < m.outerSize(); ++j)
      for (Projector::SparseMatrix::InnerIterator it(m, j); it; ++it) {
        REQUIRE(it.value() != 0.0);
        REQUIRE(std::isfinite(it.value()));
      }
  }

  TEST_CASE("sampling is deterministic and thread independent") {
    const Projector a = sample_sparse_subgaussian(200, 30, 0.3, 77);
    Eigen::MatrixXd from_thread;
    std::thread t([&] { from_thread = sample_sparse_subgaussian(200, 30, 0.3, 77).to_dense(); });
    t.join();
    CHECK(a.to_dense() == from_thread);
    CHECK(sample_achlioptas(200, 30, 0.3, 77).to_dense() == sample_achlioptas(200, 30, 0.3, 77).to_dense());
    CHECK(a.to_dense() != sample_sparse_subgaussian(200, 30, 0.3, 78).to_dense());
  }

  TEST_CASE("identity congruence and lift return the input") {
    const CounterRng rng(3);
    const Eigen::MatrixXd a = random_symmetric(rng, 6, 1);
    const Projector id = identity_projector(6);
    CHECK((congruence(id, SymMatrix::from_dense(a)).to_dense() - a).norm() == 0.0);
    CHECK((lift(id, SymMatrix::from_dense(a)).to_dense() - a).norm() == 0.0);
  }

  TEST_CASE("unit diagonal fast path is the outer product of a column") {
    const Projector p = sample_sparse_subgaussian(12, 5, 0.6, 4);
    const Eigen::VectorXd p2 = p.column(2);
    const Eigen::MatrixXd fast = congruence(p, SymMatrix::unit_diagonal(12, 2)).to_dense();
    CHECK((fast - p2 * p2.transpose()).cwiseAbs().maxCoeff() <= 1e-12);

    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(12, 12);
    e(2, 2) = 1.0;
    const Eigen::MatrixXd general = p.congruence_dense(e);
    CHECK((fast - general).cwiseAbs().maxCoeff() <= 1e-12);
  }

  TEST_CASE("congruence preserves positive semidefiniteness") {
    const Projector p = sample_sparse_subgaussian(60, 15, 0.5, 9);
    const CounterRng rng(10);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Eigen::MatrixXd a = random_psd(rng, 60, 5, 0.0, t);
      REQUIRE(min_eigenvalue(congruence(p, SymMatrix::from_dense(a)).to_dense()) >= -1e-10);
    }
  }

  TEST_CASE("lift preserves positive semidefiniteness") {
    const Projector p = sample_sparse_subgaussian(40, 10, 0.7, 11);
    const CounterRng rng(12);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Eigen::MatrixXd y = random_psd(rng, 10, 3, 0.0, t);
      REQUIRE(min_eigenvalue(lift(p, SymMatrix::from_dense(y)).to_dense()) >= -1e-10);
    }
  }

  TEST_CASE("adjointness of congruence and lift") {
    const CounterRng rng(13);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Projector p = sample_sparse_subgaussian(40, 10, 0.4, 100 + t);
      const Eigen::MatrixXd a = random_symmetric(rng, 40, 2 * t);
      const Eigen::MatrixXd y = random_symmetric(rng, 10, 2 * t + 1);
      const double lhs = frobenius_dot(a, p.lift_dense(y));
      const double rhs = frobenius_dot(p.congruence_dense(a), y);
      REQUIRE(std::abs(lhs - rhs) <= 1e-10 * a.norm() * y.norm());
    }
  }

  TEST_CASE("congruence rejects mismatched dimensions") {
    const Projector p = sample_sparse_subgaussian(10, 3, 1.0, 1);
    CHECK_THROWS_AS(congruence(p, SymMatrix::identity(9)), Error);
    CHECK_THROWS_AS(lift(p, SymMatrix::identity(4)), Error);
  }
}
