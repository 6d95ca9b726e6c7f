#include "doctest.h"
#include "gtzw/errors.hpp"
#include "gtzw/random.hpp"
#include "gtzw/stats.hpp"

using namespace gtzw;

TEST_CASE("means") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  const auto e = estimate_mean(x);
  CHECK(e.mean == 2.0);
  CHECK(e.standard_error == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(e.within(2.5, 1.0));
  CHECK_FALSE(e.within(3.5, 2.0));
  const auto w = estimate_weighted_mean(x, std::vector<double>{2.0, 2.0, 2.0});
  CHECK(w.mean == doctest::Approx(2.0));
  const auto skew = estimate_weighted_mean(x, std::vector<double>{0.0, 0.0, 5.0});
  CHECK(skew.mean == 3.0);
  CHECK(skew.standard_error == 0.0);
  CHECK_THROWS_AS(estimate_mean(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(estimate_weighted_mean(x, std::vector<double>{0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("chi-square tail") {
  CHECK(chi_square_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi_square_sf(18.307038053275146, 10.0) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi_square_sf(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(chi_square_sf(0.0, 4.0) == 1.0);
}

TEST_CASE("goodness of fit") {
  const std::vector<std::uint64_t> obs{25, 25, 50};
  const auto exact = chi_square_gof(obs, std::vector<double>{0.25, 0.25, 0.5});
  CHECK(exact.statistic == 0.0);
  CHECK(exact.dof == 2.0);
  CHECK(exact.p_value == 1.0);

  const auto off = chi_square_gof(std::vector<std::uint64_t>{60, 40}, std::vector<double>{0.5, 0.5});
  CHECK(off.statistic == doctest::Approx(4.0));
  CHECK(off.p_value == doctest::Approx(chi_square_sf(4.0, 1.0)));

  // The missing mass forms its own cell.
  const auto rest = chi_square_gof(std::vector<std::uint64_t>{50}, std::vector<double>{0.5});
  CHECK(rest.dof == 1.0);
  CHECK(rest.statistic == doctest::Approx(50.0));

  // Small cells are pooled.
  const auto pooled = chi_square_gof(std::vector<std::uint64_t>{98, 1, 1}, std::vector<double>{0.98, 0.01, 0.01});
  CHECK(pooled.dof == 0.0);
  CHECK(pooled.p_value == 1.0);

  const auto two = chi_square_two_sample(std::vector<std::uint64_t>{30, 70}, std::vector<std::uint64_t>{30, 70});
  CHECK(two.statistic == 0.0);
  CHECK(two.dof == 1.0);
  const auto diff = chi_square_two_sample(std::vector<std::uint64_t>{50, 50}, std::vector<std::uint64_t>{70, 30});
  CHECK(diff.statistic == doctest::Approx(8.333333333333334));
  CHECK_THROWS_AS(chi_square_two_sample(std::vector<std::uint64_t>{1}, std::vector<std::uint64_t>{1, 2}), DomainError);
}

TEST_CASE("Kolmogorov-Smirnov") {
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic({0.5}, uniform) == 0.5);
  CHECK(ks_statistic({0.25, 0.75}, uniform) == 0.25);
  // Q(1.3580986) = 0.05 in the large-n limit
  const std::size_t n = 100000000;
  CHECK(ks_pvalue(1.3580986393225505 / std::sqrt(double(n)), n) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(ks_pvalue(0.0, 10) == 1.0);
  CHECK(ks_pvalue(1.0, 100) < 1e-12);

  Rng rng = derive_stream(61, 0);
  std::vector<double> u(5000);
  for (auto& x : u) x = uniform01(rng);
  CHECK(ks_pvalue(ks_statistic(u, uniform), u.size()) > 1e-3);
}

TEST_CASE("total variation") {
  CHECK(total_variation(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}) == 1.0);
  CHECK(total_variation(std::vector<double>{0.5, 0.5}, std::vector<double>{0.25, 0.75}) == 0.25);
  CHECK_THROWS_AS(total_variation(std::vector<double>{1.0}, std::vector<double>{}), DomainError);
}
