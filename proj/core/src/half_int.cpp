#include "ramanpair/half_int.hpp"

#include <charconv>

#include "ramanpair/errors.hpp"

namespace ramanpair {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  const auto slash = text.find('/');
  int num = 0;
  if (slash == std::string_view::npos) {
    if (!parse_int(text, num)) throw InputDomainError("not a half-integer: '" + std::string(text) + "'");
    return HalfInt::integer(num);
  }
  int den = 0;
  if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den) || den != 2 ||
      num % 2 == 0) {
    throw InputDomainError("not a half-integer: '" + std::string(text) + "'");
  }
  return HalfInt::from_twice(num);
}

std::vector<HalfInt> projections(HalfInt j) {
  std::vector<HalfInt> out;
  if (j.twice() < 0) return out;
  for (int tm = -j.twice(); tm <= j.twice(); tm += 2) out.push_back(HalfInt::from_twice(tm));
  return out;
}

std::vector<HalfInt> coupled_range(HalfInt a, HalfInt b) {
  std::vector<HalfInt> out;
  for (int t = std::abs(a.twice() - b.twice()); t <= a.twice() + b.twice(); t += 2) {
    out.push_back(HalfInt::from_twice(t));
  }
  return out;
}

}  // namespace ramanpair
