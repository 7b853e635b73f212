#include "hgue/numbers.hpp"

#include <mutex>

namespace hgue {

Rat bernoulli(long n) {
  static std::vector<Rat> cache{Rat(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  if (n < 0) throw std::invalid_argument("bernoulli: n >= 0");
  while (static_cast<long>(cache.size()) <= n) {
    long m = static_cast<long>(cache.size());
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    Rat s = 0;
    for (long k = 0; k < m; ++k) s += binomial(m + 1, k) * cache[k];
    cache.push_back(-s / binomial(m + 1, m));
  }
  return cache[n];
}

Rat euler(long n) {
  static std::vector<Rat> cache{Rat(1)};  // E_0
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  if (n < 0) throw std::invalid_argument("euler: n >= 0");
  if (n % 2 == 1) return 0;
  long half = n / 2;
  while (static_cast<long>(cache.size()) <= half) {
    long m = static_cast<long>(cache.size());
    // cosh * sech = 1: sum_{j=0}^{m} C(2m, 2j) E_{2j} = 0 for m >= 1
    Rat s = 0;
    for (long j = 0; j < m; ++j) s += binomial(2 * m, 2 * j) * cache[j];
    cache.push_back(-s);
  }
  return cache[half];
}

}  // namespace hgue
