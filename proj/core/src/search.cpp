#include "probectl/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace probectl {

namespace {

constexpr int kBitsPerCoord = 6;
constexpr size_t kVisitedCap = 5'000'000;

uint64_t set_coord(uint64_t state, int m, int g) {
  uint64_t mask = 0x3FULL << (kBitsPerCoord * m);
  return (state & ~mask) | (static_cast<uint64_t>(g) << (kBitsPerCoord * m));
}

int get_coord(uint64_t state, int m) {
  return static_cast<int>((state >> (kBitsPerCoord * m)) & 0x3FULL);
}

}  // namespace

std::optional<SearchResult> bfs_search(const FiniteGroup& g,
                                       const SpectrumSpec& spec,
                                       const BoolFunc& target, SearchMode mode,
                                       int max_len,
                                       std::optional<Eigen::Vector3d> s0) {
  if (mode == SearchMode::StateLevel && !s0)
    throw std::invalid_argument("bfs_search: StateLevel mode needs s0");
  std::vector<long> js = spec.distinct();
  int m_count = static_cast<int>(js.size());
  if (m_count > 10)
    throw std::invalid_argument("bfs_search: more than 10 distinct eigenvalues");
  for (long j : js) target(j);

  int n = g.order();
  std::vector<int> f_of(m_count);
  for (int m = 0; m < m_count; ++m) f_of[m] = target(js[m]);

  // Conditional moves, deduplicated (distinct g can induce the same tuple).
  std::vector<int> gen_elem;
  std::vector<std::vector<int>> gen_pow;
  {
    std::set<std::vector<int>> seen;
    for (int e = 1; e < n; ++e) {
      std::vector<int> col(m_count);
      for (int m = 0; m < m_count; ++m) col[m] = g.power_index(e, js[m]);
      if (seen.insert(col).second) {
        gen_elem.push_back(e);
        gen_pow.push_back(col);
      }
    }
  }

  // Any interleaved unconditional moves can be pushed innermost by
  // conjugation, so the search runs over conditional-only states and the goal
  // check absorbs one leading unconditional word.
  auto goal_check = [&](uint64_t state)
      -> std::optional<std::pair<int, SearchResult>> {
    if (mode == SearchMode::Strict) {
      int ga = -1, gb = -1;
      for (int m = 0; m < m_count; ++m) {
        int c = get_coord(state, m);
        int& slot = f_of[m] == 0 ? ga : gb;
        if (slot < 0)
          slot = c;
        else if (slot != c)
          return std::nullopt;
      }
      int pre, u_idx;
      if (gb < 0) {  // constant 0
        pre = g.inverse[ga];
        u_idx = -1;
      } else if (ga < 0) {  // constant 1
        auto inv = g.involutions();
        if (inv.empty()) return std::nullopt;
        u_idx = inv.front();
        pre = g.mul[g.inverse[gb]][u_idx];
      } else {
        pre = g.inverse[ga];
        u_idx = g.mul[gb][pre];
        if (g.element_order(u_idx) != 2) return std::nullopt;
      }
      SearchResult res;
      if (u_idx < 0) {
        res.witness = Witness{true, Rotation::about_x(M_PI)};
      } else {
        res.witness = Witness{false, g.elements[u_idx]};
      }
      return std::make_pair(pre, res);
    }
    // StateLevel: allow any leading unconditional, deterministic by index.
    for (int pre = 0; pre < n; ++pre) {
      Eigen::Vector3d start = g.elements[pre].apply(*s0);
      std::optional<Eigen::Vector3d> a;
      bool ok = true;
      for (int m = 0; m < m_count; ++m) {
        Eigen::Vector3d p = g.elements[get_coord(state, m)].apply(start);
        Eigen::Vector3d side = f_of[m] == 1 ? Eigen::Vector3d(-p) : p;
        if (!a) {
          a = side;
          continue;
        }
        if (std::acos(std::clamp(a->dot(side), -1.0, 1.0)) > kDefaultTol) {
          ok = false;
          break;
        }
      }
      if (ok && a) {
        SearchResult res;
        res.outcome_axis = *a;
        return std::make_pair(pre, res);
      }
    }
    return std::nullopt;
  };

  uint64_t init = 0;
  std::unordered_map<uint64_t, std::pair<uint64_t, int>> parent;
  std::unordered_set<uint64_t> visited{init};
  std::deque<std::pair<uint64_t, int>> queue{{init, 0}};
  long explored = 0;

  auto finish = [&](uint64_t state, int depth, int pre,
                    SearchResult res) -> SearchResult {
    std::vector<int> cond;
    uint64_t cur = state;
    while (cur != init) {
      auto [prev, gen] = parent.at(cur);
      cond.push_back(gen);
      cur = prev;
    }
    std::reverse(cond.begin(), cond.end());
    res.program.spectrum = spec;
    if (pre != 0)
      res.program.words.push_back({WordKind::Unconditional, g.elements[pre]});
    for (int e : cond)
      res.program.words.push_back({WordKind::Conditional, g.elements[e]});
    res.length = depth;
    res.explored = explored;
    return res;
  };

  while (!queue.empty()) {
    auto [state, depth] = queue.front();
    queue.pop_front();
    ++explored;
    if (auto hit = goal_check(state)) {
      return finish(state, depth, hit->first, std::move(hit->second));
    }
    if (depth >= max_len) continue;
    for (size_t gi = 0; gi < gen_elem.size(); ++gi) {
      uint64_t next = 0;
      for (int m = 0; m < m_count; ++m) {
        next = set_coord(next, m,
                         g.mul[gen_pow[gi][m]][get_coord(state, m)]);
      }
      if (visited.insert(next).second) {
        if (visited.size() > kVisitedCap)
          throw std::runtime_error("bfs_search: state cap exceeded");
        parent[next] = {state, gen_elem[gi]};
        queue.emplace_back(next, depth + 1);
      }
    }
  }
  return std::nullopt;
}

OneStepEnumeration enumerate_onestep(const FiniteGroup& g,
                                     const SpectrumSpec& spec) {
  std::vector<long> js = spec.distinct();
  OneStepEnumeration out;
  out.constant_zero = true;  // the identity word
  std::set<BoolFunc> seen;
  for (int e = 1; e < g.order(); ++e) {
    int u_idx = -1;
    bool ok = true;
    BoolFunc f;
    for (long j : js) {
      int c = g.power_index(e, j);
      if (c == 0) {
        f.table[j] = 0;
        continue;
      }
      if (u_idx < 0) u_idx = c;
      if (c != u_idx) {
        ok = false;
        break;
      }
      f.table[j] = 1;
    }
    if (!ok || u_idx < 0) continue;
    if (g.element_order(u_idx) != 2) continue;
    if (seen.insert(f).second) out.nonconstant.push_back(f);
  }
  return out;
}

AndPair find_and_pair(const FiniteGroup& s4) {
  std::vector<int> inv = s4.involutions();
  for (int u : inv) {
    for (int v : inv) {
      int uv = s4.mul[u][v];
      int w = s4.mul[uv][uv];  // u v u^-1 v^-1 = u v u v for involutions
      if (s4.element_order(w) == 2) {
        return {s4.elements[u], s4.elements[v], s4.elements[w], u, v};
      }
    }
  }
  throw std::logic_error("find_and_pair: no pair found (broken table)");
}

namespace {

// Subgroup closure of G x G from a generator list, by index a*|G|+b.
long closure_pair(const FiniteGroup& g, long e1, long e2) {
  int n = g.order();
  std::vector<std::pair<int, int>> gens;
  for (int h = 0; h < n; ++h) {
    gens.emplace_back(h, h);
    gens.emplace_back(g.power_index(h, e1), g.power_index(h, e2));
  }
  std::vector<char> visited(static_cast<size_t>(n) * n, 0);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  visited[0] = 1;
  long count = 1;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    for (const auto& [ga, gb] : gens) {
      int na = g.mul[a][ga];
      int nb = g.mul[b][gb];
      size_t idx = static_cast<size_t>(na) * n + nb;
      if (!visited[idx]) {
        visited[idx] = 1;
        ++count;
        stack.emplace_back(na, nb);
      }
    }
  }
  return count;
}

}  // namespace

GenerationReport verify_generation_pairwise(const FiniteGroup& g,
                                            const std::vector<long>& exponents) {
  if (g.name != GroupName::A5)
    throw std::invalid_argument(
        "verify_generation_pairwise: requires a nonabelian simple group (A5)");
  int n = g.order();
  int m = static_cast<int>(exponents.size());
  GenerationReport rep;
  rep.ok = true;

  // Single-coordinate projections: {g} u {g^{e_i}} always contains all of G.
  for (int i = 0; i < m; ++i) {
    std::vector<char> seen(n, 0);
    long count = 0;
    for (int h = 0; h < n; ++h) {
      for (int x : {h, g.power_index(h, exponents[i])}) {
        if (!seen[x]) {
          seen[x] = 1;
          ++count;
        }
      }
    }
    bool full = count == n;
    rep.single_ok.push_back(full);
    rep.ok = rep.ok && full;
  }

  long full_pair = static_cast<long>(n) * n;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      PairReport pr;
      pr.i = i;
      pr.j = j;
      pr.reached = closure_pair(g, exponents[i], exponents[j]);
      pr.surjective = pr.reached == full_pair;
      rep.ok = rep.ok && pr.surjective;
      rep.pairs.push_back(pr);
    }
  }
  return rep;
}

bool verify_generation_direct(const FiniteGroup& g,
                              const std::vector<long>& exponents) {
  int m = static_cast<int>(exponents.size());
  if (m < 1 || m > 3)
    throw std::invalid_argument("verify_generation_direct: m must be 1..3");
  int n = g.order();
  size_t total = 1;
  for (int i = 0; i < m; ++i) total *= n;

  std::vector<std::vector<int>> gens;
  for (int h = 0; h < n; ++h) {
    gens.push_back(std::vector<int>(m, h));
    std::vector<int> cond(m);
    for (int i = 0; i < m; ++i) cond[i] = g.power_index(h, exponents[i]);
    gens.push_back(cond);
  }

  auto encode = [&](const std::vector<int>& t) {
    size_t idx = 0;
    for (int i = 0; i < m; ++i) idx = idx * n + t[i];
    return idx;
  };
  auto decode = [&](size_t idx) {
    std::vector<int> t(m);
    for (int i = m - 1; i >= 0; --i) {
      t[i] = static_cast<int>(idx % n);
      idx /= n;
    }
    return t;
  };

  std::vector<char> visited(total, 0);
  std::vector<size_t> stack{0};
  visited[0] = 1;
  size_t count = 1;
  while (!stack.empty()) {
    std::vector<int> t = decode(stack.back());
    stack.pop_back();
    for (const auto& gen : gens) {
      std::vector<int> nt(m);
      for (int i = 0; i < m; ++i) nt[i] = g.mul[t[i]][gen[i]];
      size_t idx = encode(nt);
      if (!visited[idx]) {
        visited[idx] = 1;
        ++count;
        stack.push_back(idx);
      }
    }
  }
  return count == total;
}

}  // namespace probectl
