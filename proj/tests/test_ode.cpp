#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "vsr/error.hpp"
#include "vsr/ode.hpp"

using namespace vsr;

TEST_CASE("exponential decay to tolerance") {
  auto rhs = [](double, const ode::State<1>& y, ode::State<1>& dy) { dy[0] = -y[0]; };
  double max_err = 0.0;
  std::size_t calls = 0;
  ode::integrate<1>(rhs, {1.0}, 0.0, 5.0, 0.1, ode::StepControl{1e-12, 1e-14, 1e-3},
                    [&](double t, const ode::State<1>& y) {
                      max_err = std::max(max_err, std::abs(y[0] - std::exp(-t)));
                      ++calls;
                      return true;
                    });
  CHECK(calls == 51);
  CHECK(max_err < 1e-11);
}

TEST_CASE("observer sees every grid time exactly") {
  auto rhs = [](double, const ode::State<2>& y, ode::State<2>& dy) { dy = {y[1], -y[0]}; };
  std::vector<double> times;
  ode::integrate<2>(rhs, {1.0, 0.0}, 0.0, 1.0, 0.25, {}, [&](double t, const ode::State<2>&) {
    times.push_back(t);
    return true;
  });
  REQUIRE(times.size() == 5);
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(times[k] == doctest::Approx(0.25 * k).epsilon(1e-15));
  CHECK(times.back() == 1.0);
}

TEST_CASE("observer can stop the integration") {
  auto rhs = [](double, const ode::State<1>&, ode::State<1>& dy) { dy[0] = 1.0; };
  double last = 0.0;
  ode::integrate<1>(rhs, {0.0}, 0.0, 10.0, 0.5, {}, [&](double t, const ode::State<1>&) {
    last = t;
    return t < 2.0;
  });
  CHECK(last == doctest::Approx(2.0));
}

TEST_CASE("harmonic oscillator conserves energy") {
  auto rhs = [](double, const ode::State<2>& y, ode::State<2>& dy) { dy = {y[1], -25.0 * y[0]}; };
  double worst = 0.0;
  ode::integrate<2>(rhs, {1.0, 0.0}, 0.0, 20.0, 0.01, {}, [&](double, const ode::State<2>& y) {
    worst = std::max(worst, std::abs(25.0 * y[0] * y[0] + y[1] * y[1] - 25.0));
    return true;
  });
  CHECK(worst < 1e-7);
}

TEST_CASE("error shrinks with tolerance") {
  auto rhs = [](double t, const ode::State<1>& y, ode::State<1>& dy) { dy[0] = std::cos(t) * y[0]; };
  auto run = [&](double tol) {
    double err = 0.0;
    ode::integrate<1>(rhs, {1.0}, 0.0, 10.0, 1.0, ode::StepControl{tol, tol * 1e-2, 1e-3},
                      [&](double t, const ode::State<1>& y) {
                        err = std::max(err, std::abs(y[0] - std::exp(std::sin(t))));
                        return true;
                      });
    return err;
  };
  CHECK(run(1e-10) < run(1e-6));
  CHECK(run(1e-10) < 1e-8);
}

TEST_CASE("finite-time blow-up raises StepSizeUnderflow") {
  auto rhs = [](double, const ode::State<1>& y, ode::State<1>& dy) { dy[0] = y[0] * y[0]; };
  try {
    ode::integrate<1>(rhs, {1.0}, 0.0, 2.0, 0.1, {}, [](double, const ode::State<1>&) { return true; });
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepSizeUnderflow);
  }
}

TEST_CASE("two-level reference conserves population") {
  testing::TwoLevelReference ref{0.5, 0.3};
  double worst = 0.0;
  ode::integrate<4>(ref, {1e-6, 0.0, 0.0, 1.0}, 0.0, 20.0, 0.05, {}, [&](double, const ode::State<4>& y) {
    worst = std::max(worst, std::abs(y[2] + y[3] - 1.0));
    return true;
  });
  CHECK(worst < 1e-12);
}
