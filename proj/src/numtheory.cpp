#include "periodkit/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "periodkit/errors.hpp"

namespace periodkit {

std::size_t euler_totient(std::size_t q) {
  if (q < 1) throw Error(Errc::BadParams, "euler_totient requires q >= 1");
  std::size_t result = q;
  std::size_t m = q;
  for (std::size_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      result -= result / d;
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

int mobius(std::size_t q) {
  if (q < 1) throw Error(Errc::BadParams, "mobius requires q >= 1");
  int prime_count = 0;
  std::size_t m = q;
  for (std::size_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) return 0;  // square factor
      ++prime_count;
    }
  }
  if (m > 1) ++prime_count;
  return (prime_count % 2 == 0) ? 1 : -1;
}

std::vector<std::size_t> divisors(std::size_t p) {
  if (p < 1) throw Error(Errc::BadParams, "divisors requires p >= 1");
  std::vector<std::size_t> low, high;
  for (std::size_t d = 1; d * d <= p; ++d) {
    if (p % d == 0) {
      low.push_back(d);
      if (d != p / d) high.push_back(p / d);
    }
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

long long ramanujan_sum(std::size_t q, long long n) {
  if (q < 1) throw Error(Errc::BadParams, "ramanujan_sum requires q >= 1");
  long long qi = static_cast<long long>(q);
  std::size_t r = static_cast<std::size_t>(((n % qi) + qi) % qi);
  std::size_t g = std::gcd(q, r);  // gcd(q, 0) == q covers the n = 0 case
  std::size_t qg = q / g;
  int mu = mobius(qg);
  if (mu == 0) return 0;
  // phi(qg) divides phi(q) whenever qg divides q, so this is exact.
  return static_cast<long long>(mu) *
         static_cast<long long>(euler_totient(q) / euler_totient(qg));
}

std::uint64_t lcm_of(const std::vector<std::size_t>& values) {
  std::uint64_t acc = 1;
  for (std::size_t v : values) acc = std::lcm<std::uint64_t>(acc, v);
  return acc;
}

}  // namespace periodkit
