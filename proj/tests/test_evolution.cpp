#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "w2pt/errors.hpp"
#include "w2pt/evolution.hpp"
#include "w2pt/snapshot.hpp"

using namespace w2pt;

namespace {
constexpr double kPi = ModeBasis::kPi;

/// Single sine mode of the box: W = sin(k x) sin(k x') e^{-ik(t-t')},
/// an exact solution at V = 0. Seeds and the analytic slice builder.
struct SingleMode {
    SpatialGrid grid;
    double k;

    std::shared_ptr<InitialData> data() const {
        const int nx = grid.n_points;
        auto d = std::make_shared<InitialData>(InitialData{
            ComplexMatrix(nx, nx), ComplexMatrix(nx, nx), ComplexMatrix(nx, nx),
            ComplexMatrix(nx, nx)});
        for (int i = 0; i < nx; ++i) {
            const double si = mode(i);
            for (int j = 0; j < nx; ++j) {
                const double s = si * mode(j);
                d->w_phiphi(i, j) = s;
                d->w_piphi(i, j) = cplx(0.0, -k) * s;
                d->w_phipi(i, j) = cplx(0.0, +k) * s;
                d->w_pipi(i, j) = k * k * s;
            }
        }
        return d;
    }

    double mode(int i) const {
        if (i == 0 || i == grid.n_points - 1) return 0.0;
        return std::sin(k * grid.x(i));
    }

    ComplexMatrix analytic(double t, double tp) const {
        const int nx = grid.n_points;
        ComplexMatrix w(nx, nx);
        const cplx phase = std::exp(cplx(0.0, -k * (t - tp)));
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < nx; ++j) w(i, j) = phase * mode(i) * mode(j);
        }
        return w;
    }
};

EvolutionConfig free_config(const SpatialGrid& grid, double cfl, double t_max,
                            std::shared_ptr<const InitialData> data) {
    EvolutionConfig cfg;
    cfg.spatial = grid;
    cfg.time = TimeGrid::with_cfl(grid, t_max, cfl);
    cfg.potential = Potential::none();
    cfg.initial = std::move(data);
    return cfg;
}

ComplexMatrix random_boundary_zero(int nx, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(nx, nx);
    for (int i = 1; i < nx - 1; ++i) {
        for (int j = 1; j < nx - 1; ++j) m(i, j) = cplx(dist(rng), dist(rng));
    }
    return m;
}

std::shared_ptr<InitialData> make_random_data(int nx, uint32_t seed) {
    auto d = std::make_shared<InitialData>();
    d->w_phiphi = random_boundary_zero(nx, seed);
    d->w_piphi = random_boundary_zero(nx, seed + 1);
    d->w_phipi = random_boundary_zero(nx, seed + 2);
    d->w_pipi = random_boundary_zero(nx, seed + 3);
    return d;
}

}  // namespace

TEST_CASE("zero data stays zero") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 17);
    const int nx = grid.n_points;
    auto zero = std::make_shared<InitialData>(InitialData{
        ComplexMatrix(nx, nx), ComplexMatrix(nx, nx), ComplexMatrix(nx, nx), ComplexMatrix(nx, nx)});
    EvolutionConfig cfg = free_config(grid, 0.5, 2.0, zero);
    cfg.potential = Potential::double_wall(PotentialParams{2.0, 10.0, 3.0, 7.0, 1.0, 30.0}, false);
    DiagonalMarcher m(cfg);
    while (m.advance()) {
    }
    CHECK(max_abs(*m.current().w_np1_np1) == 0.0);
    const ComplexMatrix w11 =
        corner_step(zero->w_phiphi, zero->w_phiphi, zero->w_phiphi, zero->w_pipi, 0.1);
    CHECK(max_abs(w11) == 0.0);
}

TEST_CASE("first steps against the analytic single mode: third-order local error") {
    auto local_error = [](int nx_pts) {
        const SpatialGrid grid = SpatialGrid::make(10.0, nx_pts);
        const SingleMode mode{grid, 3.0 * kPi / 10.0};
        EvolutionConfig cfg = free_config(grid, 0.5, 1.0, mode.data());
        const ComplexMatrix w01 = first_step_tprime(mode.data()->w_phiphi, mode.data()->w_phipi, cfg);
        return max_abs_diff(w01, mode.analytic(0.0, cfg.time.dt));
    };
    const double e1 = local_error(41);
    const double e2 = local_error(81);
    // local truncation is O(dt^3) at fixed CFL factor
    CHECK(e1 / e2 == doctest::Approx(8.0).epsilon(0.25));
}

TEST_CASE("transpose-conjugate pairing of the two first steps") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 33);
    const SmearingParams sm{0.3, 0.3};
    const ModeBasis basis = ModeBasis::truncated(10.0, sm, grid.n_points - 1);
    auto data = std::make_shared<InitialData>(vacuum_initial_data(basis, sm, grid));
    EvolutionConfig cfg = free_config(grid, 0.25, 1.0, data);
    const ComplexMatrix w01 = first_step_tprime(data->w_phiphi, data->w_phipi, cfg);
    const ComplexMatrix w10 = first_step_t(data->w_phiphi, data->w_piphi, cfg);
    double worst = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        for (int j = 0; j < grid.n_points; ++j) {
            worst = std::max(worst, std::abs(w10(i, j) - std::conj(w01(j, i))));
        }
    }
    CHECK(worst == 0.0);  // same FP operations in conjugate order
}

TEST_CASE("corner step identities") {
    const int nx = 21;
    const ComplexMatrix w00 = random_boundary_zero(nx, 7);
    const ComplexMatrix w01 = random_boundary_zero(nx, 8);
    const ComplexMatrix w10 = random_boundary_zero(nx, 9);
    ComplexMatrix zero(nx, nx);
    const ComplexMatrix w11 = corner_step(w00, w01, w10, zero, 0.05);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nx; ++j) {
            CHECK(std::abs(w11(i, j) - (w01(i, j) + w10(i, j) - w00(i, j))) < 1e-15);
        }
    }
    ComplexMatrix small(5, 5);
    CHECK_THROWS_AS(corner_step(w00, w01, w10, small, 0.05), std::invalid_argument);
}

TEST_CASE("vacuum bootstrap stays near the stationary analytic vacuum") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 201);
    const SmearingParams sm{1.0, 1.0};
    const ModeBasis basis = ModeBasis::truncated(10.0, sm, grid.n_points - 1);
    auto data = std::make_shared<InitialData>(vacuum_initial_data(basis, sm, grid));
    EvolutionConfig cfg = free_config(grid, 0.05, 1.0, data);
    const VacuumReference ref(basis, sm, grid);
    const ComplexMatrix w01 = first_step_tprime(data->w_phiphi, data->w_phipi, cfg);
    const ComplexMatrix w10 = first_step_t(data->w_phiphi, data->w_piphi, cfg);
    const ComplexMatrix w11 = corner_step(data->w_phiphi, w01, w10, data->w_pipi, cfg.time.dt);
    CHECK(max_abs_diff(w01, ref.slice(-cfg.time.dt)) < 1e-8);
    CHECK(max_abs_diff(w11, ref.slice(0.0)) < 1e-8);
}

TEST_CASE("slice alignment is checked") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 9);
    EvolutionConfig cfg = free_config(grid, 0.5, 1.0, make_random_data(9, 1));
    std::vector<double> v(9, 0.0);
    CorrelatorSlice a{0, 0, random_boundary_zero(9, 2)};
    CorrelatorSlice b{2, 0, random_boundary_zero(9, 3)};
    CHECK_THROWS_AS(step_t(a, b, cfg, v), std::invalid_argument);
    CorrelatorSlice c{0, 2, random_boundary_zero(9, 4)};
    CHECK_THROWS_AS(step_tprime(a, c, cfg, v), std::invalid_argument);
}

TEST_CASE("engines agree to 1e-12 on an 8x8x8x8 grid") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 8);
    for (uint32_t seed : {11u, 77u}) {
        EvolutionConfig cfg = free_config(grid, 0.4, 8 * 0.4 * grid.spacing, make_random_data(8, seed));
        cfg.potential = Potential::double_wall(PotentialParams{1.0, 2.0, 3.0, 7.0, 1.0, 10.0},
                                               false);
        REQUIRE(cfg.time.n_steps == 8);
        const Wightman4D full = evolve_full_twopass(cfg);
        DiagonalMarcher m(cfg);
        double worst = 0.0;
        while (true) {
            const auto& r = m.current();
            worst = std::max(worst, max_abs_diff(*r.w_nn, full.at(r.n, r.n)));
            worst = std::max(worst, max_abs_diff(*r.w_n_np1, full.at(r.n, r.n + 1)));
            worst = std::max(worst, max_abs_diff(*r.w_np1_n, full.at(r.n + 1, r.n)));
            worst = std::max(worst, max_abs_diff(*r.w_np1_np1, full.at(r.n + 1, r.n + 1)));
            if (!m.advance()) break;
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("fixed-tprime march agrees with the two-pass table") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 12);
    EvolutionConfig cfg = free_config(grid, 0.3, 10 * 0.3 * grid.spacing, make_random_data(12, 5));
    cfg.potential = Potential::double_wall(PotentialParams{1.5, 1.5, 3.0, 7.0, 1.0, 8.0}, false);
    const Wightman4D full = evolve_full_twopass(cfg);
    const int jf = 7, mf = 4, nmax = 9;
    const ComplexMatrix col = evolve_fixed_tprime(cfg, jf, mf, nmax);
    double worst = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        for (int i = 0; i < 12; ++i) {
            worst = std::max(worst, std::abs(col(n, i) - full.at(n, mf)(i, jf)));
        }
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("linearity of the evolution map") {
    const int nx = 12;
    const SpatialGrid grid = SpatialGrid::make(10.0, nx);
    auto d1 = make_random_data(nx, 21);
    auto d2 = make_random_data(nx, 42);
    const cplx a(0.7, 0.0), b(-1.3, 0.0);
    auto combo = std::make_shared<InitialData>();
    auto mix = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix m(nx, nx);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < nx; ++j) m(i, j) = a * x(i, j) + b * y(i, j);
        return m;
    };
    combo->w_phiphi = mix(d1->w_phiphi, d2->w_phiphi);
    combo->w_piphi = mix(d1->w_piphi, d2->w_piphi);
    combo->w_phipi = mix(d1->w_phipi, d2->w_phipi);
    combo->w_pipi = mix(d1->w_pipi, d2->w_pipi);

    auto final_slice = [&](std::shared_ptr<const InitialData> d) {
        EvolutionConfig cfg = free_config(grid, 0.4, 3.0, std::move(d));
        cfg.potential = Potential::double_wall(PotentialParams{1.2, 1.0, 3.0, 7.0, 1.0, 5.0},
                                               false);
        DiagonalMarcher m(cfg);
        while (m.advance()) {
        }
        return *m.current().w_np1_np1;
    };
    const ComplexMatrix fa = final_slice(d1);
    const ComplexMatrix fb = final_slice(d2);
    const ComplexMatrix fc = final_slice(combo);
    double worst = 0.0;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nx; ++j) {
            worst = std::max(worst, std::abs(fc(i, j) - (a * fa(i, j) + b * fb(i, j))));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("exchange symmetry is preserved") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 41);
    const SmearingParams sm{0.25, 0.25};
    const ModeBasis basis = ModeBasis::truncated(10.0, sm, grid.n_points - 1);
    auto data = std::make_shared<InitialData>(vacuum_initial_data(basis, sm, grid));
    EvolutionConfig cfg = free_config(grid, 0.25, 4.0, data);
    cfg.potential = Potential::double_wall(PotentialParams{50.0, 2.0, 3.0, 7.0, 1.0, 10.0}, false);
    DiagonalMarcher m(cfg);
    double worst = 0.0;
    while (true) {
        const auto& r = m.current();
        for (int i = 0; i < grid.n_points; i += 3) {
            for (int j = 0; j < grid.n_points; j += 3) {
                worst = std::max(worst,
                                 std::abs((*r.w_n_np1)(i, j) - std::conj((*r.w_np1_n)(j, i))));
                worst = std::max(worst,
                                 std::abs((*r.w_nn)(i, j) - std::conj((*r.w_nn)(j, i))));
            }
        }
        if (!m.advance()) break;
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("global error halves twice per refinement (single-mode analytic)") {
    auto global_error = [](int nx_pts) {
        const SpatialGrid grid = SpatialGrid::make(10.0, nx_pts);
        const SingleMode mode{grid, 2.0 * kPi / 10.0};
        EvolutionConfig cfg = free_config(grid, 0.5, 2.0, mode.data());
        DiagonalMarcher m(cfg);
        while (m.advance()) {
        }
        const auto& r = m.current();
        return max_abs_diff(*r.w_np1_n, mode.analytic((r.n + 1) * r.dt, r.n * r.dt));
    };
    const double e1 = global_error(51);
    const double e2 = global_error(101);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.10));
}

TEST_CASE("CFL violation is rejected at construction") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 21);
    auto data = make_random_data(21, 3);
    EvolutionConfig cfg;
    cfg.spatial = grid;
    cfg.time.dt = 1.05 * cfl_max_timestep(grid.spacing, 250.0);
    cfg.time.cfl_factor = cfg.time.dt / grid.spacing;
    cfg.time.n_steps = 4;
    cfg.time.t_max = 4 * cfg.time.dt;
    cfg.potential = Potential::uniform_mass(std::sqrt(500.0));
    cfg.initial = data;
    CHECK_THROWS_AS(DiagonalMarcher{cfg}, CflError);
}

TEST_CASE("two-pass memory budget guard") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 64);
    EvolutionConfig cfg = free_config(grid, 0.5, 20.0, make_random_data(64, 9));
    CHECK_THROWS_AS(evolve_full_twopass(cfg, 1 << 20), MemoryBudgetError);
}

TEST_CASE("snapshot round-trips bit-exactly") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 16);
    EvolutionConfig cfg = free_config(grid, 0.4, 2.0, make_random_data(16, 31));
    DiagonalMarcher m(cfg);
    m.advance();
    m.advance();
    std::stringstream buf;
    write_snapshot(buf, m.current());
    const SnapshotRecord rec = read_snapshot(buf);
    CHECK(rec.n == m.current().n);
    CHECK(rec.dt == m.current().dt);
    CHECK(max_abs_diff(rec.w_nn, *m.current().w_nn) == 0.0);
    CHECK(max_abs_diff(rec.w_np1_np1, *m.current().w_np1_np1) == 0.0);
}

TEST_CASE("paper-literal t' potential indexing is available and differs") {
    const SpatialGrid grid = SpatialGrid::make(10.0, 24);
    const SmearingParams sm{0.3, 0.3};
    const ModeBasis basis = ModeBasis::truncated(10.0, sm, grid.n_points - 1);
    auto data = std::make_shared<InitialData>(vacuum_initial_data(basis, sm, grid));
    EvolutionConfig cfg = free_config(grid, 0.3, 2.0, data);
    cfg.potential = Potential::double_wall(PotentialParams{6.0, 1.0, 3.0, 7.0, 1.0, 10.0}, true);
    EvolutionConfig lit = cfg;
    lit.paper_literal_vprime = true;

    DiagonalMarcher md(cfg), ml(lit);
    while (md.advance() && ml.advance()) {
    }
    CHECK(max_abs_diff(*md.current().w_np1_np1, *ml.current().w_np1_np1) > 1e-6);
}
