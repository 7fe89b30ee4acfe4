#include "oracles.hpp"

namespace oracle {

namespace {
long long md(long long v, long long p) { return ((v % p) + p) % p; }
}  // namespace

u64 naive_pow(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 acc = 1 % m;
  base %= m;
  for (u64 i = 0; i < exp; ++i) acc = static_cast<u64>((static_cast<unsigned __int128>(acc) * base) % m);
  return acc;
}

std::optional<u64> brute_inverse(u64 a, u64 m) {
  for (u64 d = 1; d < m; ++d)
    if ((static_cast<unsigned __int128>(a % m) * d) % m == 1) return d;
  if (m == 1) return 0;
  return std::nullopt;
}

u64 euclid_gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<bool> sieve(u64 limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (u64 i = 2; i * i <= limit; ++i)
    if (prime[i])
      for (u64 j = i * i; j <= limit; j += i) prime[j] = false;
  return prime;
}

std::set<u64> brute_sqrt(u64 c, u64 n) {
  std::set<u64> roots;
  for (u64 r = 0; r < n; ++r)
    if ((r * r) % n == c % n) roots.insert(r);
  return roots;
}

std::vector<Pt> enumerate_points(long long a, long long b, long long p) {
  std::vector<Pt> pts{Pt{0, 0, true}};
  for (long long x = 0; x < p; ++x)
    for (long long y = 0; y < p; ++y)
      if (md(y * y, p) == md(x * x * x + a * x + b, p)) pts.push_back(Pt{x, y, false});
  return pts;
}

Pt chord_tangent(const Pt& P, const Pt& Q, long long a, long long p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.x == Q.x && md(P.y + Q.y, p) == 0) return Pt{0, 0, true};
  long long num, den;
  if (P == Q) {
    num = md(3 * P.x * P.x + a, p);
    den = md(2 * P.y, p);
  } else {
    num = md(Q.y - P.y, p);
    den = md(Q.x - P.x, p);
  }
  long long lambda = -1;
  for (long long l = 0; l < p; ++l)
    if (md(l * den, p) == num) {
      lambda = l;
      break;
    }
  long long x3 = md(lambda * lambda - P.x - Q.x, p);
  long long y3 = md(lambda * (P.x - x3) - P.y, p);
  return Pt{x3, y3, false};
}

Pt repeated_add(long long k, const Pt& P, long long a, long long p) {
  Pt acc{0, 0, true};
  for (long long i = 0; i < k; ++i) acc = chord_tangent(acc, P, a, p);
  return acc;
}

std::vector<std::pair<u64, u64>> semiprimes(u64 limit) {
  auto prime = sieve(limit / 2 + 1);
  std::vector<std::pair<u64, u64>> out;
  for (u64 p = 2; p * p <= limit; ++p) {
    if (!prime[p]) continue;
    for (u64 q = p + 1; p * q <= limit; ++q)
      if (prime[q]) out.emplace_back(p, q);
  }
  return out;
}

}  // namespace oracle
