#include "hgue/wk.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hgue {

CorrelatorKey CorrelatorKey::make(int g, std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  return CorrelatorKey{g, std::move(idx)};
}

bool dimension_ok(const CorrelatorKey& k) {
  long s = 0;
  for (int i : k.indices) s += i;
  return s == 3L * k.genus - 3 + static_cast<long>(k.indices.size());
}

namespace {

// distinct values with multiplicities
std::vector<std::pair<int, int>> runs(const std::vector<int>& v) {
  std::vector<std::pair<int, int>> r;
  for (int x : v) {
    if (!r.empty() && r.back().first == x) r.back().second++;
    else r.push_back({x, 1});
  }
  return r;
}

Rat correlator_impl(const CorrelatorKey& key);

Rat memo_correlator(int g, std::vector<int> idx) {
  static std::map<CorrelatorKey, Rat> memo;
  static std::mutex mu;
  CorrelatorKey key = CorrelatorKey::make(g, std::move(idx));
  if (g < 0) return 0;
  for (int i : key.indices)
    if (i < 0) return 0;
  if (!dimension_ok(key)) return 0;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Rat val = correlator_impl(key);
  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(key, val);
  return val;
}

// sum over splittings I u J = S of <{a} u I>_{ga} <{b} u J>_{gb} with the
// multiplicity binomials of repeated entries
Rat split_sum(const std::vector<int>& S, int a, int b, int ga, int gb) {
  auto rs = runs(S);
  Rat total = 0;
  std::vector<int> choice(rs.size(), 0);
  while (true) {
    Rat mult = 1;
    std::vector<int> I{a}, J{b};
    for (std::size_t r = 0; r < rs.size(); ++r) {
      mult *= binomial(rs[r].second, choice[r]);
      for (int c = 0; c < choice[r]; ++c) I.push_back(rs[r].first);
      for (int c = choice[r]; c < rs[r].second; ++c) J.push_back(rs[r].first);
    }
    Rat left = memo_correlator(ga, I);
    if (left != 0) total += mult * left * memo_correlator(gb, J);
    // advance the per-value counters
    std::size_t r = 0;
    while (r < rs.size() && choice[r] == rs[r].second) choice[r++] = 0;
    if (r == rs.size()) break;
    ++choice[r];
  }
  return total;
}

Rat correlator_impl(const CorrelatorKey& key) {
  const auto& idx = key.indices;
  int g = key.genus;
  // all indices zero: dimension forces (0,3) or (1,0)
  if (idx.empty() || idx.back() == 0) {
    if (g == 0 && idx.size() == 3) return 1;
    return 0;  // genus-one constant set to zero
  }
  int m = idx.back() - 1;
  std::vector<int> S(idx.begin(), idx.end() - 1);

  Rat val = 0;
  std::size_t pos = 0;
  for (auto& [v, reps] : runs(S)) {
    std::vector<int> bumped = S;
    bumped[pos] += m;  // bump one representative; the run weight accounts for the rest
    val += Rat(reps) * df_odd(2 * v + 2 * m + 1) / df_odd(2 * v - 1) * memo_correlator(g, bumped);
    pos += reps;
  }
  for (int a = 0; a <= m - 1; ++a) {
    int b = m - 1 - a;
    Rat w = df_odd(2 * a + 1) * df_odd(2 * b + 1) / 2;
    std::vector<int> lower = S;
    lower.push_back(a);
    lower.push_back(b);
    val += w * memo_correlator(g - 1, lower);
    Rat sp = 0;
    for (int gp = 0; gp <= g; ++gp) sp += split_sum(S, a, b, gp, g - gp);
    val += w * sp;
  }
  if (m == 0 && S.empty() && g == 1) val += Rat(1, 8);
  return val / df_odd(2 * m + 3);
}

}  // namespace

Rat wk_correlator(const CorrelatorKey& key) { return memo_correlator(key.genus, key.indices); }

std::vector<std::vector<int>> bounded_multisets(int size, int max_index, int sum) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // nondecreasing entries
  std::function<void(int, int, int)> rec = [&](int pos, int lo, int rem) {
    if (pos == size) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    int slots = size - pos;
    for (int v = lo; v <= max_index; ++v) {
      if (static_cast<long>(v) * slots > rem) break;
      cur.push_back(v);
      rec(pos + 1, v, rem - v);
      cur.pop_back();
    }
  };
  rec(0, 0, sum);
  return out;
}

EpsSeries wk_free_energy(const TruncSpec& tr) {
  EpsSeries F(VarSpace::T_SPACE, tr);
  for (int g = 0; g <= tr.max_genus; ++g) {
    TruncatedSeries layer(VarSpace::T_SPACE, tr);
    for (int k = (g == 0 ? 3 : (g == 1 ? 1 : 0)); k <= tr.max_t_degree; ++k) {
      long want = 3L * g - 3 + k;
      if (want < 0) continue;
      if (want > static_cast<long>(k) * tr.max_t_index) continue;
      for (auto& ms : bounded_multisets(k, tr.max_t_index, static_cast<int>(want))) {
        Rat c = wk_correlator(CorrelatorKey{g, ms});
        if (c == 0) continue;
        Mono mono;
        Rat aut = 1;
        for (auto& [v, reps] : runs(ms)) {
          mono = mono.times_var(var_t(v), reps);
          aut *= factorial(reps);
        }
        layer.add_term(mono, Coeff(c / aut));
      }
    }
    F.add_layer(2 * g - 2, layer);
  }
  return F;
}

LinDiffOp kdv_virasoro(int m, const TruncSpec& tr) {
  if (m < -1) throw std::invalid_argument("kdv_virasoro: m >= -1");
  LinDiffOp L(VarSpace::T_SPACE);
  int I = tr.max_t_index;
  if (m == -1) {
    for (int i = 1; i <= I; ++i) L.add_term(1, 0, Mono::of(var_t(i)), {var_t(i - 1)});
    L.add_term(Rat(1, 2), -2, Mono::of(var_t(0), 2), {});
    return L;
  }
  if (m == 0) {
    for (int i = 0; i <= I; ++i) L.add_term(Rat(2 * i + 1, 2), 0, Mono::of(var_t(i)), {var_t(i)});
    L.add_term(Rat(1, 16), 0, Mono::one(), {});
    return L;
  }
  Rat pw = rat_pow(Rat(2), m + 1);
  for (int i = 0; i <= m - 1; ++i) {
    int j = m - 1 - i;
    L.add_term(df_odd(2 * i + 1) * df_odd(2 * j + 1) / (2 * pw), 2, Mono::one(), {var_t(i), var_t(j)});
  }
  for (int i = 0; i + m <= I; ++i)
    L.add_term(df_odd(2 * i + 2 * m + 1) / (pw * df_odd(2 * i - 1)), 0, Mono::of(var_t(i)), {var_t(i + m)});
  return L;
}

}  // namespace hgue
