#include <doctest.h>

#include "mbkdv/checkpoint.hpp"
#include "mbkdv/errors.hpp"
#include "mbkdv/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

using namespace mbkdv;
using Mat2 = Eigen::Matrix2cd;

namespace {

constexpr double kPi = std::numbers::pi;

TorusGrid grid(std::size_t n, std::int64_t lam = 1) { return TorusGrid(Rational(lam), n); }

// exp(X) by Taylor series after scaling down by 2^s, then repeated squaring.
Mat2 expm_series(const Mat2& x) {
  const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int s = norm > 0.5 ? int(std::ceil(std::log2(norm / 0.5))) : 0;
  const Mat2 y = x / std::pow(2.0, s);
  Mat2 term = Mat2::Identity(), sum = Mat2::Identity();
  for (int k = 1; k < 30; ++k) {
    term = term * y / double(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid and transforms") {
  const auto g = grid(16, 2);
  CHECK(g.length() == doctest::Approx(4 * kPi));
  CHECK(g.wavenumber(1) == doctest::Approx(0.5));
  CHECK(g.mode(15) == -1);
  CHECK(g.dealias_mode() == 5);
  CHECK_THROWS_AS(TorusGrid(Rational(1), 4), Error);
  auto st = sample(g, [](double x) { return std::cos(x / 2); }, [](double x) { return 3.0 + std::sin(x); });
  CHECK(std::abs(st.u_hat[g.slot(1)] - Complex(0.5, 0)) < 1e-14);
  CHECK(std::abs(st.v_hat[0] - Complex(3, 0)) < 1e-14);
  CHECK(std::abs(st.v_hat[g.slot(2)] - Complex(0, -0.5)) < 1e-14);
  CHECK(hermitian_defect(g, st) < 1e-15);
  const auto back = to_physical(g, st.u_hat);
  const auto x = g.nodes();
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(std::cos(x[i] / 2)));
}

TEST_CASE("mean_zero_reduce examples") {
  const auto g = grid(32);
  auto r = mean_zero_reduce(g, sample(g, [](double x) { return 1 + std::cos(x); }, [](double) { return 0.0; }));
  CHECK(r.p == doctest::Approx(1));
  CHECK(r.q == doctest::Approx(0));
  CHECK(std::abs(r.shifted.u_hat[0]) < 1e-15);
  CHECK(std::abs(r.shifted.u_hat[1] - Complex(0.5, 0)) < 1e-15);
  auto z = mean_zero_reduce(g, zero_state(g));
  CHECK(z.p == 0.0);
  CHECK(z.q == 0.0);
  auto m = mean_zero_reduce(g, sample(g, [](double x) { return 2 + std::sin(x); }, [](double) { return 3.0; }));
  CHECK(m.p == doctest::Approx(2));
  CHECK(m.q == doctest::Approx(3));
}

TEST_CASE("linear_phase examples") {
  CHECK(std::abs(linear_phase(0.3, 0.0, 7.0, Channel::V) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(linear_phase(0.3, 1.0, kPi, Channel::U) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(linear_phase(0.5, 2.0, 1.0, Channel::V) - std::polar(1.0, 4.0)) < 1e-15);
}

TEST_CASE("dispersion matrix examples") {
  auto z = mode_eigen(0, 0, 1.7);
  CHECK(z.d1 == doctest::Approx(std::pow(1.7, 3)));
  CHECK(z.d2 == doctest::Approx(std::pow(1.7, 3)));
  CHECK(z.m[0] == 1.0);
  CHECK(z.m[3] == 1.0);
  auto a = mode_eigen(3, 2, 1);
  CHECK(a.d1 == doctest::Approx(-3));
  CHECK(a.d2 == doctest::Approx(2));
  CHECK(dispersion_matrix(3, 2, grid(8)).l_value == doctest::Approx(2.5));
  auto b = mode_eigen(0, 1, 1);
  CHECK(b.d1 == doctest::Approx(0).epsilon(1e-15));
  CHECK(b.d2 == doctest::Approx(2));
  auto dm = dispersion_matrix(0.7, -1.3, grid(16));
  CHECK(dm.modes[0].m == std::array<double, 4>{1, 0, 0, 1});
}

TEST_CASE("property: closed-form eigenpairs match Eigen") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5, 5), xi(-40, 40), al(0.1, 4);
  for (int trial = 0; trial < 10000; ++trial) {
    const double p = u(rng), q = u(rng), x = xi(rng);
    const double alpha = trial % 2 ? 1.0 : al(rng);
    const auto e = mode_eigen(p, q, x, alpha);
    Eigen::Matrix2d a;
    a << x * x * x, -q * x, -q * x, alpha * x * x * x - p * x;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double lo = std::min(e.d1, e.d2), hi = std::max(e.d1, e.d2);
    REQUIRE(std::abs(lo - es.eigenvalues()(0)) <= 1e-12 * scale);
    REQUIRE(std::abs(hi - es.eigenvalues()(1)) <= 1e-12 * scale);
    Eigen::Matrix2d m;
    m << e.m[0], e.m[1], e.m[2], e.m[3];
    REQUIRE((m.transpose() * m - Eigen::Matrix2d::Identity()).norm() < 1e-12);
    Eigen::Matrix2d d = Eigen::Vector2d(e.d1, e.d2).asDiagonal();
    REQUIRE((m * d * m.transpose() - a).norm() <= 1e-12 * scale);
  }
}

TEST_CASE("coupled linear propagator") {
  const auto g = grid(16);
  SUBCASE("single mode example") {
    const double t = 2 * kPi / 5;
    const auto e = mode_eigen(3, 2, 1);
    FieldPair st = zero_state(g);
    // start on the first eigenvector at xi = +-1
    st.u_hat[g.slot(1)] = e.m[0];
    st.v_hat[g.slot(1)] = e.m[2];
    st.u_hat[g.slot(-1)] = e.m[0];
    st.v_hat[g.slot(-1)] = e.m[2];
    const auto out = evolve_coupled_linear(g, st, 3, 2, t);
    const Complex ph = std::polar(1.0, -6 * kPi / 5);
    CHECK(std::abs(out.u_hat[g.slot(1)] - ph * e.m[0]) < 1e-13);
    CHECK(std::abs(out.v_hat[g.slot(1)] - ph * e.m[2]) < 1e-13);
  }
  SUBCASE("t = 0 is the identity and p = q = 0 is Airy") {
    auto st = sample(g, [](double x) { return std::cos(x) + 0.3 * std::sin(3 * x); },
                     [](double x) { return std::sin(2 * x); });
    const auto same = evolve_coupled_linear(g, st, 1.1, -0.4, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(same.u_hat[i] - st.u_hat[i]) < 1e-15);
    const auto airy = evolve_coupled_linear(g, st, 0, 0, 0.9);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double xi = g.wavenumber(i);
      CHECK(std::abs(airy.u_hat[i] - linear_phase(1, xi, 0.9, Channel::U) * st.u_hat[i]) < 1e-14);
    }
  }
  SUBCASE("property: matches the matrix exponential oracle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2, 2), tt(0, 3), al(0.2, 3);
    for (int trial = 0; trial < 100; ++trial) {
      const double p = u(rng), q = u(rng), t = tt(rng);
      const double alpha = trial % 3 == 0 ? 1.0 : al(rng);
      FieldPair st = zero_state(g);
      for (std::int64_t k = 1; k <= 7; ++k) {
        const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
        st.u_hat[g.slot(k)] = a;
        st.v_hat[g.slot(k)] = b;
        st.u_hat[g.slot(-k)] = std::conj(a);
        st.v_hat[g.slot(-k)] = std::conj(b);
      }
      const auto out = evolve_coupled_linear(g, st, p, q, t, alpha);
      for (std::int64_t k = -7; k <= 7; ++k) {
        const double x = double(k);
        Mat2 a;
        a << x * x * x, -q * x, -q * x, alpha * x * x * x - p * x;
        const Mat2 prop = expm_series(Complex(0, t) * a);
        Eigen::Vector2cd y0(st.u_hat[g.slot(k)], st.v_hat[g.slot(k)]);
        Eigen::Vector2cd y1 = prop * y0;
        REQUIRE(std::abs(out.u_hat[g.slot(k)] - y1(0)) < 1e-10);
        REQUIRE(std::abs(out.v_hat[g.slot(k)] - y1(1)) < 1e-10);
      }
      // linear energy
      double e0 = 0, e1 = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        e0 += std::norm(st.u_hat[i]) + std::norm(st.v_hat[i]);
        e1 += std::norm(out.u_hat[i]) + std::norm(out.v_hat[i]);
      }
      REQUIRE(std::abs(e1 - e0) < 1e-12 * e0);
    }
  }
}

TEST_CASE("conserved quantities examples") {
  const auto g = grid(32);
  auto a = conserved_quantities(g, sample(g, [](double x) { return std::cos(x); }, [](double) { return 0.0; }), 1.0);
  CHECK(a.e1 == doctest::Approx(0).epsilon(1e-14));
  CHECK(a.e3 == doctest::Approx(kPi));
  CHECK(a.e4 == doctest::Approx(kPi / 2));
  auto b = conserved_quantities(g, sample(g, [](double) { return 0.0; }, [](double x) { return std::cos(x); }), 0.5);
  CHECK(b.e3 == doctest::Approx(kPi));
  CHECK(b.e4 == doctest::Approx(kPi / 4));
  auto z = conserved_quantities(g, zero_state(g), 0.7);
  CHECK((z.e1 == 0 && z.e2 == 0 && z.e3 == 0 && z.e4 == 0));
  // Oracle for the cubic term: direct trapezoid sum on a fine grid (exact for trig polynomials).
  auto u0 = [](double x) { return 0.4 + std::cos(x) + 0.5 * std::sin(3 * x); };
  auto v0 = [](double x) { return -0.2 + std::sin(2 * x) + 0.25 * std::cos(5 * x); };
  auto ux = [](double x) { return -std::sin(x) + 1.5 * std::cos(3 * x); };
  auto vx = [](double x) { return 2 * std::cos(2 * x) - 1.25 * std::sin(5 * x); };
  const double alpha = 0.8;
  double e4 = 0;
  const int m = 4096;
  for (int i = 0; i < m; ++i) {
    const double x = 2 * kPi * i / m;
    e4 += 0.5 * (ux(x) * ux(x) + alpha * vx(x) * vx(x) - u0(x) * v0(x) * v0(x));
  }
  e4 *= 2 * kPi / m;
  CHECK(conserved_quantities(g, sample(g, u0, v0), alpha).e4 == doctest::Approx(e4).epsilon(1e-12));
}

TEST_CASE("Airy test and zero data") {
  const auto g = grid(256);
  SimConfig cfg;
  cfg.alpha = 0.5;
  cfg.dt = 1e-3;
  cfg.t_final = kPi;
  for (Scheme sc : {Scheme::IFRK4, Scheme::ETDRK4}) {
    cfg.scheme = sc;
    const auto res = evolve(g, sample(g, [](double x) { return std::cos(x); }, [](double) { return 0.0; }), cfg);
    const auto u = to_physical(g, res.state.u_hat);
    const auto x = g.nodes();
    std::vector<double> exact;
    for (double xi : x) exact.push_back(std::cos(xi + kPi));
    CHECK(max_abs_diff(u, exact) < 1e-8);
  }
  cfg.scheme = Scheme::IFRK4;
  cfg.t_final = 0.5;
  const auto z = evolve(g, zero_state(g), cfg);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK((z.state.u_hat[i] == Complex(0) && z.state.v_hat[i] == Complex(0)));
}

TEST_CASE("property: conservation, symmetry and the diagonal reduction") {
  const auto g = grid(128);
  SimConfig cfg;
  cfg.dt = 2e-4;
  cfg.t_final = 0.5;
  cfg.monitor_stride = 250;
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n01;
  for (double alpha : {0.899, 0.96, 0.98, 1.0}) {
    cfg.alpha = alpha;
    std::array<double, 6> c{};
    for (auto& x : c) x = 0.05 * n01(rng);
    auto st = sample(
        g, [&](double x) { return c[0] + c[1] * std::cos(x) + c[2] * std::sin(2 * x); },
        [&](double x) { return c[3] + c[4] * std::cos(2 * x) + c[5] * std::sin(x); });
    for (Scheme sc : {Scheme::IFRK4, Scheme::ETDRK4}) {
      cfg.scheme = sc;
      const auto res = evolve(g, st, cfg);
      CHECK(res.max_drift.e1 < 1e-13);
      CHECK(res.max_drift.e2 < 1e-13);
      CHECK(res.max_drift.e3 < 1e-8);
      CHECK(res.max_drift.e4 < 1e-6);
      CHECK(hermitian_defect(g, res.state) <= 1e-13);
      CHECK_FALSE(res.cfl_warning);
    }
  }
  cfg.alpha = 1.0;
  cfg.scheme = Scheme::IFRK4;
  auto u0 = [](double x) { return 0.1 + 0.3 * std::cos(x) - 0.2 * std::sin(2 * x); };
  const auto res = evolve(g, sample(g, u0, [&](double x) { return std::sqrt(2.0) * u0(x); }), cfg);
  double worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(res.state.v_hat[i] - std::sqrt(2.0) * res.state.u_hat[i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("guards") {
  const auto g = grid(64);
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 0.01;
  cfg.blowup_guard = 1e-3;
  auto st = sample(g, [](double x) { return std::cos(x); }, [](double x) { return std::sin(x); });
  try {
    evolve(g, st, cfg);
    FAIL("expected BlowupDetected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BlowupDetected);
    CHECK(is_numerical(e.code()));
  }
  cfg.blowup_guard = 1e12;
  cfg.dt = 0.01;
  auto big = sample(g, [](double x) { return 20 * std::cos(x); }, [](double) { return 0.0; });
  CHECK(evolve(g, big, cfg).cfl_warning);
}

TEST_CASE("checkpoint round trip") {
  CHECK(base64_encode("foobar") == "Zm9vYmFy");
  CHECK(base64_encode("fo") == "Zm8=");
  CHECK(base64_decode("Zm9vYg==") == "foob");
  const TorusGrid g(Rational(3) / 2, 32);
  auto st = sample(g, [](double x) { return std::cos(x / 1.5) + 0.1; }, [](double x) { return std::sin(2 * x / 1.5); });
  st.time = 0.25;
  const auto path = std::filesystem::temp_directory_path() / "mbkdv_cp_test.json";
  save_checkpoint(path, Checkpoint{g, st, 0.899, 0.1, 0.0});
  const auto cp = load_checkpoint(path);
  CHECK(cp.grid.lambda_exact() == Rational(3) / 2);
  CHECK(cp.grid.size() == 32);
  CHECK(cp.alpha == 0.899);
  CHECK(cp.state.time == 0.25);
  for (std::size_t i = 0; i < 32; ++i) {
    CHECK(cp.state.u_hat[i] == st.u_hat[i]);
    CHECK(cp.state.v_hat[i] == st.v_hat[i]);
  }
  std::filesystem::remove(path);
}
