#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lgcb/linalg.hpp"
#include "lgcb/rng.hpp"

using namespace lgcb;

TEST_CASE("invert: Sherman-Morrison closed form for a I + b 11^T") {
    // The bernoulli second moment has this shape; the closed form is
    // (1/a)(I - b/(a + b d) 11^T).
    int d = 6;
    double a = 0.04, b = 0.025;
    Matrix m(d, d, b);
    for (int i = 0; i < d; ++i) m(i, i) = a + b;
    Matrix inv = invert(m);
    double off = -(1.0 / a) * (b / (a + b * d));
    double diag = 1.0 / a + off;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            CHECK(inv(i, j) == doctest::Approx(i == j ? diag : off).epsilon(1e-12));
}

TEST_CASE("invert: identity and singular rejection") {
    Matrix eye = Matrix::identity(4);
    CHECK(max_abs_difference(invert(eye), eye) == 0.0);
    Matrix singular(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS(invert(singular));
}

TEST_CASE("invert: random SPD round trip") {
    Prng rng(55, 0, StreamTag::kContext);
    for (int n = 0; n < 20; ++n) {
        int d = 2 + static_cast<int>(rng.next_u64() % 7);
        Matrix m(d, d);
        for (int s = 0; s < 2 * d; ++s) {
            Vec x(d);
            for (double& c : x) c = 2.0 * rng.next_double() - 1.0;
            add_scaled_outer(m, x, 1.0);
        }
        for (int i = 0; i < d; ++i) m(i, i) += 0.5; // keep it well-conditioned
        Matrix prod = matmul(m, invert(m));
        CHECK(max_abs_difference(prod, Matrix::identity(d)) < 1e-10);
    }
}

TEST_CASE("symmetric eigenvalues: known spectrum") {
    // a I + b 11^T has eigenvalues a (d-1 times) and a + b d.
    int d = 5;
    double a = 0.03, b = 0.02;
    Matrix m(d, d, b);
    for (int i = 0; i < d; ++i) m(i, i) = a + b;
    Vec eig = symmetric_eigenvalues(m);
    for (int i = 0; i < d - 1; ++i) CHECK(eig[i] == doctest::Approx(a).epsilon(1e-10));
    CHECK(eig[d - 1] == doctest::Approx(a + b * d).epsilon(1e-10));
}

TEST_CASE("dot and matvec basics") {
    CHECK(dot({1.0, 2.0}, {3.0, 4.0}) == 11.0);
    CHECK_THROWS(dot({1.0}, {1.0, 2.0}));
    Matrix m(2, 3);
    m(0, 0) = 1.0;
    m(1, 2) = 2.0;
    Vec y = matvec(m, {1.0, 1.0, 1.0});
    CHECK(y == Vec{1.0, 2.0});
    CHECK_THROWS(matvec(m, {1.0}));
}
