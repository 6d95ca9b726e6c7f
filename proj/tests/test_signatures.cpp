#include <algorithm>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "gtzw/random.hpp"
#include "gtzw/signatures.hpp"
#include "gtzw/zw_measure.hpp"
#include "oracles/oracles.hpp"

using namespace gtzw;

namespace {

std::vector<double> halves(const std::vector<HalfInteger>& v) {
  std::vector<double> out;
  for (auto h : v) out.push_back(h.value());
  return out;
}

std::vector<std::int64_t> to_vec(const Signature& s) { return {s.entries().begin(), s.entries().end()}; }

}  // namespace

TEST_CASE("signature basics") {
  const Signature la{3, 1, 0, -2};
  CHECK(la.level() == 4);
  CHECK(la.total() == 2);
  CHECK(la.dual() == Signature{2, 0, -1, -3});
  CHECK(la.to_string() == "(3,1,0,-2)");
  CHECK(Signature{}.to_string() == "()");
  CHECK(Signature{}.empty());
  CHECK_THROWS_AS(Signature({0, 1}), InvariantViolation);
  CHECK(Signature{1, 0} < Signature{1, 1});
  CHECK(SignatureHash{}(Signature{1, 0}) == SignatureHash{}(Signature{1, 0}));
}

TEST_CASE("interlaces") {
  CHECK(interlaces(Signature{1}, Signature{2, 0}));
  CHECK_FALSE(interlaces(Signature{3}, Signature{2, 0}));
  CHECK(interlaces(Signature{2, 1}, Signature{2, 1, 1}));
  CHECK(interlaces(Signature{}, Signature{5}));
  CHECK_THROWS_AS(interlaces(Signature{1, 0}, Signature{2, 0}), LevelMismatchError);
}

TEST_CASE("enumerate_down") {
  CHECK(enumerate_down(Signature{1, 0}) == std::vector<Signature>{Signature{0}, Signature{1}});
  CHECK(enumerate_down(Signature{2, 0}) == std::vector<Signature>{Signature{0}, Signature{1}, Signature{2}});
  CHECK(enumerate_down(Signature{5}) == std::vector<Signature>{Signature{}});
  CHECK_THROWS_AS(enumerate_down(Signature{}), LevelMismatchError);
  CHECK(count_down(Signature{4, 1, 1, -3}) == 4 * 1 * 5);
  const auto down = enumerate_down(Signature{3, 0, -2});
  CHECK(std::is_sorted(down.begin(), down.end()));
  std::size_t n = 0;
  oracle::each_interlacing({3, 0, -2}, [&](const std::vector<std::int64_t>&) { ++n; });
  CHECK(down.size() == n);
}

TEST_CASE("weyl_dim examples") {
  CHECK(weyl_dim(Signature{17}) == 1);
  CHECK(weyl_dim(Signature{1, 0}) == 2);
  CHECK(weyl_dim(Signature{2, 1, 0}) == 8);
  CHECK(weyl_dim(Signature{}) == 1);
}

TEST_CASE("weyl_dim equals the path count") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for_each_in_box(n, -4, 4, [&](const Signature& la) {
      INFO(la.to_string());
      CHECK(weyl_dim_big(la) == oracle::path_count(to_vec(la)));
      CHECK(BigInt(to_string(weyl_dim(la))) == weyl_dim_big(la));
    });
  }
}

TEST_CASE("branching rule and duality") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for_each_in_box(n, -5, 5, [&](const Signature& la) {
      BigInt sum = 0;
      for_each_down(la, [&](const Signature& nu) { sum += weyl_dim_big(nu); });
      CHECK(sum == weyl_dim_big(la));
      CHECK(weyl_dim(la.dual()) == weyl_dim(la));
    });
  }
}

TEST_CASE("weyl_dim overflow and log form") {
  std::vector<std::int64_t> big;
  for (int i = 0; i < 40; ++i) big.push_back(1000000 * (40 - i));
  const Signature la(big);
  CHECK_THROWS_AS(weyl_dim(la), OverflowError);
  const double ref = std::log(double(weyl_dim_big(Signature{9, 4, 4, 0, -3})));
  CHECK(std::abs(log_weyl_dim(Signature{9, 4, 4, 0, -3}) - ref) < 1e-12);
  const BigInt exact = weyl_dim_big(la);
  CHECK(exact > 0);
  CHECK(std::abs(log_weyl_dim(la) - double(boost::multiprecision::log(boost::multiprecision::cpp_bin_float_50(exact)))) <
        1e-9 * log_weyl_dim(la));
}

TEST_CASE("frobenius_split examples") {
  const auto zero = frobenius_split(Signature{0, 0, 0});
  CHECK(zero.modified_p_plus.empty());
  CHECK(zero.modified_q_minus.empty());
  CHECK(zero.size_plus == 0);
  CHECK(zero.size_minus == 0);

  const auto s = frobenius_split(Signature{3, 1, 0, -2});
  CHECK(s.plus_part == YoungDiagram{3, 1});
  CHECK(s.minus_part == YoungDiagram{2});
  CHECK(halves(s.modified_p_plus) == std::vector<double>{2.5});
  CHECK(halves(s.modified_q_plus) == std::vector<double>{1.5});
  CHECK(halves(s.modified_p_minus) == std::vector<double>{1.5});
  CHECK(halves(s.modified_q_minus) == std::vector<double>{0.5});
  CHECK(s.size_plus == 4);
  CHECK(s.size_minus == 2);

  const auto t = frobenius_split(Signature{1, 1});
  CHECK(halves(t.modified_p_plus) == std::vector<double>{0.5});
  CHECK(halves(t.modified_q_plus) == std::vector<double>{1.5});
}

TEST_CASE("modified Frobenius coordinates against the transpose oracle") {
  Rng rng = derive_stream(5, 0);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t rows = 1 + std::size_t(uniform01(rng) * 8);
    std::vector<std::int64_t> d;
    for (std::size_t i = 0; i < rows; ++i) d.push_back(std::int64_t(uniform01(rng) * 12));
    std::sort(d.rbegin(), d.rend());
    const auto mf = modified_frobenius(d);
    const auto cols = oracle::transpose(d);
    const std::size_t dd = oracle::durfee(d);
    REQUIRE(mf.p.size() == dd);
    REQUIRE(mf.q.size() == dd);
    std::int64_t twice_sum = 0, size = 0;
    for (std::size_t i = 0; i < dd; ++i) {
      CHECK(mf.p[i].twice == 2 * (d[i] - std::int64_t(i)) - 1);
      CHECK(mf.q[i].twice == 2 * (cols[i] - std::int64_t(i)) - 1);
      twice_sum += mf.p[i].twice + mf.q[i].twice;
    }
    for (auto r : d) size += r;
    CHECK(twice_sum == 2 * size);
  }
}
