#include <doctest.h>
#include <random>
#include <vector>

#include "w2pt/kernels.hpp"

using namespace w2pt;

namespace {
std::vector<double> random_vec(size_t n, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}
}  // namespace

TEST_CASE("kernel variants agree with the scalar reference") {
    const auto sets = kernels::available();
    REQUIRE(!sets.empty());
    CHECK(std::string(sets.front()->name) == "scalar");

    const int n_cols = 173;  // odd on purpose: exercises the remainder lanes
    const auto c = random_vec(2 * n_cols, 1);
    const auto q = random_vec(2 * n_cols, 2);
    const auto up = random_vec(2 * n_cols, 3);
    const auto dn = random_vec(2 * n_cols, 4);
    const auto a_dup = random_vec(2 * n_cols, 5);
    const auto u_dup = random_vec(2 * n_cols, 6);

    std::vector<double> ref(2 * n_cols), out(2 * n_cols);
    const auto& s = kernels::scalar();

    for (const auto* k : sets) {
        CAPTURE(k->name);

        s.shifted_step(ref.data(), c.data(), q.data(), a_dup.data(), 0.31, -1.0, n_cols);
        k->shifted_step(out.data(), c.data(), q.data(), a_dup.data(), 0.31, -1.0, n_cols);
        for (int i = 0; i < 2 * n_cols; ++i) CHECK(out[i] == doctest::Approx(ref[i]).epsilon(1e-14));
        CHECK(out[0] == 0.0);
        CHECK(out[2 * n_cols - 1] == 0.0);

        s.shifted_step_uniform(ref.data(), c.data(), q.data(), 0.77, 0.25, 0.125, n_cols);
        k->shifted_step_uniform(out.data(), c.data(), q.data(), 0.77, 0.25, 0.125, n_cols);
        for (int i = 0; i < 2 * n_cols; ++i) CHECK(out[i] == doctest::Approx(ref[i]).epsilon(1e-14));

        s.row_step(ref.data(), c.data(), q.data(), up.data(), dn.data(), 1.9, 0.04, -1.0, n_cols);
        k->row_step(out.data(), c.data(), q.data(), up.data(), dn.data(), 1.9, 0.04, -1.0, n_cols);
        for (int i = 0; i < 2 * n_cols; ++i) CHECK(out[i] == doctest::Approx(ref[i]).epsilon(1e-14));

        s.combine4(ref.data(), c.data(), q.data(), up.data(), dn.data(), 0.1, 0.2, 0.3, -0.4,
                   2 * n_cols);
        k->combine4(out.data(), c.data(), q.data(), up.data(), dn.data(), 0.1, 0.2, 0.3, -0.4,
                    2 * n_cols);
        for (int i = 0; i < 2 * n_cols; ++i) CHECK(out[i] == doctest::Approx(ref[i]).epsilon(1e-14));

        std::vector<double> acc_ref = q, acc = q;
        s.axpy_real(acc_ref.data(), c.data(), 0.613, 2 * n_cols);
        k->axpy_real(acc.data(), c.data(), 0.613, 2 * n_cols);
        for (int i = 0; i < 2 * n_cols; ++i)
            CHECK(acc[i] == doctest::Approx(acc_ref[i]).epsilon(1e-14));

        double re_ref, im_ref, re, im;
        s.cdot_real(c.data(), u_dup.data(), n_cols, &re_ref, &im_ref);
        k->cdot_real(c.data(), u_dup.data(), n_cols, &re, &im);
        CHECK(re == doctest::Approx(re_ref).epsilon(1e-13));
        CHECK(im == doctest::Approx(im_ref).epsilon(1e-13));

        CHECK(k->sum_squares(c.data(), 2 * n_cols) ==
              doctest::Approx(s.sum_squares(c.data(), 2 * n_cols)).epsilon(1e-13));
    }
}

TEST_CASE("exact zeros propagate through the stencils") {
    const int n_cols = 33;
    std::vector<double> zero(2 * n_cols, 0.0), out(2 * n_cols, 1.0);
    for (const auto* k : kernels::available()) {
        k->shifted_step(out.data(), zero.data(), zero.data(), zero.data(), 0.3, -1.0, n_cols);
        for (double v : out) CHECK(v == 0.0);
        std::fill(out.begin(), out.end(), 1.0);
        k->row_step(out.data(), zero.data(), zero.data(), zero.data(), zero.data(), 2.0, 0.1, -1.0,
                    n_cols);
        for (double v : out) CHECK(v == 0.0);
    }
}
