#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace periodkit {

// Euler's totient phi(q): count of 1 <= k <= q coprime to q.
std::size_t euler_totient(std::size_t q);

// Moebius function mu(q) in {-1, 0, 1}.
int mobius(std::size_t q);

// All divisors of p in ascending order, 1 and p included.
std::vector<std::size_t> divisors(std::size_t p);

// Ramanujan sum c_q(n), integer valued and q-periodic in n. Computed via the
// closed form c_q(n) = mu(q/g) * phi(q) / phi(q/g) with g = gcd(q, n).
long long ramanujan_sum(std::size_t q, long long n);

std::uint64_t lcm_of(const std::vector<std::size_t>& values);

}  // namespace periodkit
