#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lgcb/estimators.hpp"
#include "lgcb/rng.hpp"

using namespace lgcb;

TEST_CASE("estimate_u: unobserved action gives the zero vector") {
    Matrix eye = Matrix::identity(2);
    EstimatedLossVector est = estimate_u(false, 0.25, eye, {1.0, 0.0}, 0.5, 1);
    CHECK(est.action == 1);
    CHECK(est.vector == Vec{0.0, 0.0});
}

TEST_CASE("estimate_u: hand-computed value") {
    Matrix eye = Matrix::identity(2);
    EstimatedLossVector est = estimate_u(true, 0.25, eye, {1.0, 0.0}, 0.5);
    CHECK(est.vector[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(est.vector[1] == 0.0);
}

TEST_CASE("estimate_u: zero loss gives the zero vector") {
    Matrix eye = Matrix::identity(3);
    EstimatedLossVector est = estimate_u(true, 0.7, eye, {0.2, 0.4, 0.1}, 0.0);
    for (double v : est.vector) CHECK(v == 0.0);
}

TEST_CASE("estimate_u: rejects nonpositive q") {
    Matrix eye = Matrix::identity(2);
    CHECK_THROWS(estimate_u(true, 0.0, eye, {1.0, 0.0}, 0.5));
    CHECK_THROWS(estimate_u(false, -0.1, eye, {1.0, 0.0}, 0.5));
}

TEST_CASE("estimate_ix: hand-computed value and beta scaling") {
    Matrix eye = Matrix::identity(2);
    EstimatedLossVector est = estimate_ix(true, 0.5, 0.5, eye, {1.0, 0.0}, 1.0);
    CHECK(est.vector[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(est.vector[1] == 0.0);

    // With q = beta = 0.25 the output is half of the unbiased estimate.
    EstimatedLossVector u = estimate_u(true, 0.25, eye, {0.3, 0.7}, 0.9);
    EstimatedLossVector ix = estimate_ix(true, 0.25, 0.25, eye, {0.3, 0.7}, 0.9);
    for (int c = 0; c < 2; ++c) CHECK(ix.vector[c] == doctest::Approx(0.5 * u.vector[c]));
}

TEST_CASE("estimate_ix: unobserved gives zero, bad beta throws") {
    Matrix eye = Matrix::identity(2);
    CHECK(estimate_ix(false, 0.5, 0.5, eye, {1.0, 0.0}, 1.0).vector == Vec{0.0, 0.0});
    CHECK_THROWS(estimate_ix(true, 0.5, 0.0, eye, {1.0, 0.0}, 1.0));
    CHECK_THROWS(estimate_ix(true, 0.5, -0.5, eye, {1.0, 0.0}, 1.0));
    CHECK_THROWS(estimate_ix(true, -0.1, 0.5, eye, {1.0, 0.0}, 1.0));
}

TEST_CASE("estimators apply the inverse second moment") {
    Matrix m(2, 2);
    m(0, 0) = 2.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 3.0;
    EstimatedLossVector est = estimate_u(true, 0.5, m, {1.0, 2.0}, 0.5);
    // (1/0.5) * m * (1,2) * 0.5 = m * (1,2) = (4, 7)
    CHECK(est.vector[0] == doctest::Approx(4.0));
    CHECK(est.vector[1] == doctest::Approx(7.0));
}

TEST_CASE("accumulate: rounds advance and rows add up") {
    CumulativeEstimate state(2, 2);
    CHECK(state.round() == 1);

    std::vector<EstimatedLossVector> zero{{0, {0.0, 0.0}}, {1, {0.0, 0.0}}};
    accumulate(state, zero, 1);
    CHECK(state.round() == 2);
    CHECK(state.row(0) == Vec{0.0, 0.0});

    std::vector<EstimatedLossVector> v{{0, {1.0, 2.0}}, {1, {0.0, 0.0}}};
    std::vector<EstimatedLossVector> w{{0, {0.5, -1.0}}, {1, {0.0, 3.0}}};
    accumulate(state, v, 2);
    accumulate(state, w, 3);
    CHECK(state.row(0) == Vec{1.5, 1.0});
    CHECK(state.row(1) == Vec{0.0, 3.0});
}

TEST_CASE("accumulate: round and shape mismatches throw") {
    CumulativeEstimate state(2, 2);
    std::vector<EstimatedLossVector> ests{{0, {0.0, 0.0}}, {1, {0.0, 0.0}}};
    CHECK_THROWS(accumulate(state, ests, 2)); // wrong round
    std::vector<EstimatedLossVector> missing{{0, {0.0, 0.0}}};
    CHECK_THROWS(accumulate(state, missing, 1));
    std::vector<EstimatedLossVector> wrong_action{{0, {0.0, 0.0}}, {0, {0.0, 0.0}}};
    CHECK_THROWS(accumulate(state, wrong_action, 1));
}

TEST_CASE("accumulate: 100 random rounds match an independent sum") {
    Prng rng(21, 0, StreamTag::kContext);
    CumulativeEstimate state(3, 4);
    std::vector<Vec> expected(3, Vec(4, 0.0));
    for (int t = 1; t <= 100; ++t) {
        std::vector<EstimatedLossVector> ests;
        for (int i = 0; i < 3; ++i) {
            Vec v(4);
            for (double& c : v) c = 2.0 * rng.next_double() - 1.0;
            for (int k = 0; k < 4; ++k) expected[i][k] += v[k];
            ests.push_back({i, v});
        }
        accumulate(state, ests, t);
    }
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 4; ++k)
            CHECK(state.row(i)[k] == doctest::Approx(expected[i][k]).epsilon(1e-12));
}
