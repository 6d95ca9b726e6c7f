#include "gtzw/signatures.hpp"

#include <cmath>
#include <numeric>

#include "gtzw/errors.hpp"

namespace gtzw {

Signature::Signature(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i] > entries_[i - 1])
      throw InvariantViolation("signature entries must be weakly decreasing");
  }
}

std::int64_t Signature::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0});
}

Signature Signature::dual() const {
  std::vector<std::int64_t> d(entries_.rbegin(), entries_.rend());
  for (auto& x : d) x = -x;
  return Signature(std::move(d));
}

std::string Signature::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

std::size_t SignatureHash::operator()(const Signature& s) const noexcept {
  std::size_t h = s.level();
  for (auto x : s.entries()) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool interlaces(const Signature& nu, const Signature& la) {
  if (nu.level() + 1 != la.level())
    throw LevelMismatchError("interlaces: expected levels N-1 and N, got " +
                             std::to_string(nu.level()) + " and " + std::to_string(la.level()));
  for (std::size_t i = 0; i < nu.level(); ++i) {
    if (nu[i] > la[i] || nu[i] < la[i + 1]) return false;
  }
  return true;
}

namespace {

void down_recursive(const Signature& la, std::vector<std::int64_t>& nu, std::size_t i,
                    const std::function<void(const Signature&)>& f) {
  if (i + 1 == la.level()) {
    f(Signature(nu));
    return;
  }
  for (std::int64_t v = la[i + 1]; v <= la[i]; ++v) {
    nu[i] = v;
    down_recursive(la, nu, i + 1, f);
  }
}

}  // namespace

void for_each_down(const Signature& la, const std::function<void(const Signature&)>& f) {
  if (la.level() == 0) throw LevelMismatchError("enumerate_down: the empty signature has no predecessors");
  std::vector<std::int64_t> nu(la.level() - 1);
  down_recursive(la, nu, 0, f);
}

std::vector<Signature> enumerate_down(const Signature& la) {
  std::vector<Signature> out;
  if (la.level() > 0) out.reserve(count_down(la));
  for_each_down(la, [&](const Signature& nu) { out.push_back(nu); });
  return out;
}

std::uint64_t count_down(const Signature& la) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i + 1 < la.level(); ++i) n *= std::uint64_t(la[i] - la[i + 1] + 1);
  return n;
}

u128 weyl_dim(const Signature& la) {
  const std::size_t n = la.level();
  std::vector<u128> num;
  std::vector<std::uint64_t> den;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      num.push_back(u128(la[i] - la[j] + std::int64_t(j - i)));
      den.push_back(j - i);
    }
  }
  // Cancel each denominator against the numerator factors; the quotient is an
  // integer, so every prime in the denominators finds a partner.
  for (auto d : den) {
    u128 rest = d;
    for (auto& f : num) {
      if (rest == 1) break;
      u128 a = f, b = rest;
      while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
      }
      f /= a;
      rest /= a;
    }
  }
  u128 result = 1;
  for (auto f : num) {
    if (__builtin_mul_overflow(result, f, &result))
      throw OverflowError("weyl_dim: value exceeds 128 bits for " + la.to_string());
  }
  return result;
}

BigInt weyl_dim_big(const Signature& la) {
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < la.level(); ++i) {
    for (std::size_t j = i + 1; j < la.level(); ++j) {
      num *= BigInt(la[i] - la[j] + std::int64_t(j - i));
      den *= BigInt(j - i);
    }
  }
  return num / den;
}

double log_weyl_dim(const Signature& la) {
  double s = 0.0;
  for (std::size_t i = 0; i < la.level(); ++i) {
    for (std::size_t j = i + 1; j < la.level(); ++j)
      s += std::log(double(la[i] - la[j] + std::int64_t(j - i))) - std::log(double(j - i));
  }
  return s;
}

ModifiedFrobenius modified_frobenius(const YoungDiagram& diagram) {
  ModifiedFrobenius out;
  for (std::size_t i = 0; i < diagram.size(); ++i) {
    const auto row = std::int64_t(i + 1);
    if (diagram[i] < row) break;
    // column length nu'_i = #{j : nu_j >= i}
    std::int64_t column = 0;
    while (std::size_t(column) < diagram.size() && diagram[column] >= row) ++column;
    out.p.push_back({2 * (diagram[i] - row) + 1});
    out.q.push_back({2 * (column - row) + 1});
  }
  return out;
}

FrobeniusSplit frobenius_split(const Signature& la) {
  FrobeniusSplit out;
  for (auto x : la.entries()) {
    if (x > 0) out.plus_part.push_back(x);
  }
  for (auto it = la.entries().rbegin(); it != la.entries().rend(); ++it) {
    if (*it < 0) out.minus_part.push_back(-*it);
  }
  auto plus = modified_frobenius(out.plus_part);
  auto minus = modified_frobenius(out.minus_part);
  out.modified_p_plus = std::move(plus.p);
  out.modified_q_plus = std::move(plus.q);
  out.modified_p_minus = std::move(minus.p);
  out.modified_q_minus = std::move(minus.q);
  out.size_plus = std::accumulate(out.plus_part.begin(), out.plus_part.end(), std::int64_t{0});
  out.size_minus = std::accumulate(out.minus_part.begin(), out.minus_part.end(), std::int64_t{0});
  return out;
}

}  // namespace gtzw
