#include "clrsc/numerics.hpp"

#include "doctest.h"

#include <cmath>

using namespace clrsc;

TEST_CASE("rng streams replay exactly and are independent") {
    RngStream a(42, RngStream::stream_id("trial/1/gen"));
    RngStream b(42, RngStream::stream_id("trial/1/gen"));
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, RngStream::stream_id("trial/2/gen"));
    RngStream d(43, RngStream::stream_id("trial/1/gen"));
    bool differs_stream = false, differs_seed = false;
    RngStream a2(42, RngStream::stream_id("trial/1/gen"));
    for (int i = 0; i < 10; ++i) {
        auto r = a2.next_u64();
        differs_stream |= r != c.next_u64();
        differs_seed |= r != d.next_u64();
    }
    CHECK(differs_stream);
    CHECK(differs_seed);
}

TEST_CASE("uniform lies in [0,1) and has sane moments") {
    RngStream rng(1, 2);
    double sum = 0.0, sumsq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(sumsq / n == doctest::Approx(1.0 / 3.0).epsilon(0.03));
}

TEST_CASE("gaussian has zero mean and unit variance") {
    RngStream rng(7, 9);
    double sum = 0.0, sumsq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double g = rng.gaussian();
        sum += g;
        sumsq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.03);
    CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("thin svd reconstructs and returns orthonormal factors") {
    RngStream rng(5, 1);
    Matrix m = gaussian_matrix(rng, 14, 9, 1.0);
    auto s = thin_svd(m);
    Matrix rec = s.U * s.sigma.asDiagonal() * s.V.transpose();
    CHECK((rec - m).norm() < 1e-10);
    CHECK((s.U.transpose() * s.U - Matrix::Identity(9, 9)).norm() < 1e-10);
    CHECK((s.V.transpose() * s.V - Matrix::Identity(9, 9)).norm() < 1e-10);
    for (int i = 1; i < s.sigma.size(); ++i) CHECK(s.sigma(i) <= s.sigma(i - 1) + 1e-15);
}

TEST_CASE("gram svd of wide matrices matches the dense svd") {
    RngStream rng(11, 3);
    Matrix m = gaussian_matrix(rng, 3, 16, 1.0);
    auto g = gram_svd_wide(m);
    auto d = thin_svd(m);
    REQUIRE(g.sigma.size() == 3);
    CHECK((g.sigma - d.sigma).norm() < 1e-8);
    Matrix rec = g.U * g.sigma.asDiagonal() * g.V.transpose();
    CHECK((rec - m).norm() < 1e-8);
}

TEST_CASE("gram svd drops numerically zero components") {
    Matrix m(2, 6);
    m.row(0) = Vector::LinSpaced(6, 1.0, 6.0);
    m.row(1) = 2.0 * m.row(0);  // exactly rank 1
    auto g = gram_svd_wide(m);
    CHECK(g.sigma.size() == 1);
    Matrix rec = g.U * g.sigma.asDiagonal() * g.V.transpose();
    CHECK((rec - m).norm() < 1e-10);
}

TEST_CASE("smallest eigenpairs of a symmetric matrix") {
    Matrix m(3, 3);
    m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    auto [vals, vecs] = sym_eig_smallest(m, 2);
    REQUIRE(vals.size() == 2);
    CHECK(vals(0) <= vals(1));
    CHECK(vals(0) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-10));
    for (int i = 0; i < 2; ++i) {
        CHECK((m * vecs.col(i) - vals(i) * vecs.col(i)).norm() < 1e-8);
    }
}

TEST_CASE("sym_eig rejects asymmetric input") {
    Matrix m(2, 2);
    m << 1, 2, 3, 4;
    CHECK_THROWS_AS(sym_eig_smallest(m, 1), std::invalid_argument);
}

TEST_CASE("spectral norm equals the top singular value") {
    RngStream rng(3, 4);
    Matrix m = gaussian_matrix(rng, 8, 5, 1.0);
    auto s = thin_svd(m);
    CHECK(spectral_norm(m) == doctest::Approx(s.sigma(0)).epsilon(1e-10));
}

TEST_CASE("random orthonormal and rotation matrices") {
    RngStream rng(13, 8);
    Matrix q = random_orthonormal(rng, 10, 4);
    CHECK((q.transpose() * q - Matrix::Identity(4, 4)).norm() < 1e-10);

    Matrix r = random_rotation(rng, 5);
    CHECK((r.transpose() * r - Matrix::Identity(5, 5)).norm() < 1e-10);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gaussian matrix respects sigma") {
    RngStream rng(21, 5);
    Matrix m = gaussian_matrix(rng, 100, 100, 0.25);
    double var = m.array().square().mean();
    CHECK(var == doctest::Approx(0.0625).epsilon(0.05));
}
