#include "galoscope/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "galoscope/errors.hpp"

namespace galoscope {

void PermutationGroup::Level::rebuild(int degree, const std::vector<Permutation>& acting) {
  orbit.clear();
  position.assign(degree, -1);
  transversal.clear();
  orbit.push_back(base);
  position[base] = 0;
  transversal.push_back(Permutation::identity(degree));
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    int p = orbit[head];
    for (const auto& s : acting) {
      int q = s.apply(p);
      if (position[q] < 0) {
        position[q] = static_cast<int>(orbit.size());
        orbit.push_back(q);
        transversal.push_back(transversal[head] * s);
      }
    }
  }
}

PermutationGroup::PermutationGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree) {
  if (degree < 1) throw InputError("group", "degree must be positive");
  for (auto& g : generators) {
    if (g.degree() != degree)
      throw InputError("group", "generator degree mismatch");
    if (!g.is_identity()) generators_.push_back(std::move(g));
  }
  build_chain();
}

std::pair<Permutation, std::size_t> PermutationGroup::strip(const Permutation& g) const {
  Permutation h = g;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    int p = h.apply(levels_[i].base);
    int pos = levels_[i].position[p];
    if (pos < 0) return {h, i};
    h = h * levels_[i].transversal[pos].inverse();
  }
  return {h, levels_.size()};
}

namespace {
// New base point for a residue: smallest point lying on one of its longest
// cycles, so the first fundamental orbit is as large as the generator allows.
int greedy_base_point(const Permutation& g) {
  auto cycles = g.cycles();
  std::size_t best_len = 0;
  int best_point = -1;
  for (const auto& c : cycles) {
    if (c.size() > best_len) {
      best_len = c.size();
      best_point = *std::min_element(c.begin(), c.end());
    }
  }
  return best_point;
}
}  // namespace

void PermutationGroup::build_chain() {
  levels_.clear();
  // Generators acting at level i are those introduced at levels i..end: a
  // generator introduced deeper stabilizes every earlier base point but still
  // acts on earlier orbits.
  auto suffix_gens = [&](std::size_t i) {
    std::vector<Permutation> acting;
    for (std::size_t j = i; j < levels_.size(); ++j)
      acting.insert(acting.end(), levels_[j].gens.begin(), levels_[j].gens.end());
    return acting;
  };
  std::deque<Permutation> pending(generators_.begin(), generators_.end());
  while (!pending.empty()) {
    Permutation g = std::move(pending.front());
    pending.pop_front();
    auto [residue, lev] = strip(g);
    if (residue.is_identity()) continue;
    if (lev == levels_.size()) {
      Level fresh;
      fresh.base = greedy_base_point(residue);
      levels_.push_back(std::move(fresh));
    }
    levels_[lev].gens.push_back(residue);
    // The new generator enlarges the acting set of every level up to lev:
    // rebuild those orbits and re-verify their Schreier generators. Membership
    // already certified stays certified (subgroups only grow), so re-enqueueing
    // terminates with a valid strong generating set.
    for (std::size_t i = 0; i <= lev; ++i) {
      Level& level = levels_[i];
      auto acting = suffix_gens(i);
      level.rebuild(degree_, acting);
      for (std::size_t head = 0; head < level.orbit.size(); ++head) {
        for (const auto& s : acting) {
          int q = s.apply(level.orbit[head]);
          Permutation schreier =
              level.transversal[head] * s * level.transversal[level.position[q]].inverse();
          if (!schreier.is_identity()) pending.push_back(std::move(schreier));
        }
      }
    }
  }
  base_.clear();
  for (const auto& level : levels_) base_.push_back(level.base);
}

BigUint PermutationGroup::order() const {
  BigUint out(1);
  for (const auto& level : levels_) out *= static_cast<std::uint64_t>(level.orbit.size());
  return out;
}

bool PermutationGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, lev] = strip(g);
  (void)lev;
  return residue.is_identity();
}

std::vector<std::vector<int>> PermutationGroup::point_orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(degree_, 0);
  for (int start = 0; start < degree_; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& g : generators_) {
        int q = g.apply(orbit[head]);
        if (!seen[q]) {
          seen[q] = 1;
          orbit.push_back(q);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool PermutationGroup::is_transitive() const {
  return point_orbits().size() == 1;
}

std::vector<std::vector<std::vector<int>>> PermutationGroup::orbits_on_tuples(
    int s, std::size_t max_tuples) const {
  if (s < 1 || s > degree_)
    throw InputError("group", "tuple length must be in 1..degree");
  // count = k (k-1) ... (k-s+1)
  std::size_t count = 1;
  for (int i = 0; i < s; ++i) {
    std::size_t next = count * static_cast<std::size_t>(degree_ - i);
    if (next / static_cast<std::size_t>(degree_ - i) != count || next > max_tuples)
      throw InputError("group", "tuple space too large for orbit enumeration");
    count = next;
  }

  // Dense encoding: tuple -> sum p_i * k^i. Guard the dense table as well.
  std::size_t space = 1;
  for (int i = 0; i < s; ++i) {
    if (space > 16 * max_tuples)
      throw InputError("group", "tuple space too large for orbit enumeration");
    space *= static_cast<std::size_t>(degree_);
  }
  std::vector<int> orbit_of(space, -1);

  auto encode = [&](const std::vector<int>& t) {
    std::size_t code = 0;
    for (int i = s - 1; i >= 0; --i) code = code * degree_ + t[i];
    return code;
  };

  // All distinct s-tuples in lexicographic order.
  std::vector<std::vector<int>> all_tuples;
  all_tuples.reserve(count);
  std::vector<int> tuple;
  std::vector<char> used(degree_, 0);
  auto emit = [&](auto&& self) -> void {
    if (static_cast<int>(tuple.size()) == s) {
      all_tuples.push_back(tuple);
      return;
    }
    for (int v = 0; v < degree_; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      tuple.push_back(v);
      self(self);
      tuple.pop_back();
      used[v] = 0;
    }
  };
  emit(emit);

  std::vector<std::vector<std::vector<int>>> orbits;
  for (const auto& t : all_tuples) {
    if (orbit_of[encode(t)] >= 0) continue;
    int id = static_cast<int>(orbits.size());
    std::vector<std::vector<int>> members;
    std::deque<std::vector<int>> frontier{t};
    orbit_of[encode(t)] = id;
    while (!frontier.empty()) {
      auto u = frontier.front();
      frontier.pop_front();
      members.push_back(u);
      for (const auto& g : generators_) {
        std::vector<int> v(s);
        for (int i = 0; i < s; ++i) v[i] = g.apply(u[i]);
        std::size_t code = encode(v);
        if (orbit_of[code] < 0) {
          orbit_of[code] = id;
          frontier.push_back(std::move(v));
        }
      }
    }
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  return orbits;
}

bool PermutationGroup::is_s_transitive(int s) const {
  if (s < 1) return true;
  if (s > degree_) return false;
  // Orbit of one tuple: s-transitive iff it covers the whole tuple space.
  std::size_t count = 1;
  for (int i = 0; i < s; ++i) count *= static_cast<std::size_t>(degree_ - i);

  std::vector<int> t0(s);
  std::iota(t0.begin(), t0.end(), 0);
  std::size_t space = 1;
  for (int i = 0; i < s; ++i) space *= static_cast<std::size_t>(degree_);
  std::vector<char> seen(space, 0);
  auto encode = [&](const std::vector<int>& t) {
    std::size_t code = 0;
    for (int i = s - 1; i >= 0; --i) code = code * degree_ + t[i];
    return code;
  };
  std::deque<std::vector<int>> frontier{t0};
  seen[encode(t0)] = 1;
  std::size_t visited = 1;
  while (!frontier.empty()) {
    auto u = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators_) {
      std::vector<int> v(s);
      for (int i = 0; i < s; ++i) v[i] = g.apply(u[i]);
      std::size_t code = encode(v);
      if (!seen[code]) {
        seen[code] = 1;
        ++visited;
        frontier.push_back(std::move(v));
      }
    }
  }
  return visited == count;
}

int PermutationGroup::transitivity_degree() const {
  if (!is_transitive()) return 0;
  // Order shortcuts for the full symmetric and alternating groups.
  BigUint ord = order();
  BigUint full = BigUint::factorial(static_cast<unsigned>(degree_));
  if (ord == full) return std::min(degree_, 5);
  if (degree_ >= 3) {
    BigUint twice = ord;  // the only index-2 subgroup of the symmetric group
    twice *= 2;
    if (twice == full) return std::min(degree_ - 2, 5);
  }
  int s = 1;
  while (s < 5) {
    int next = s + 1;
    if (next > degree_) break;
    if (next >= 4 && degree_ > 12) break;
    if (!is_s_transitive(next)) break;
    s = next;
  }
  return s;
}

std::vector<std::vector<int>> PermutationGroup::minimal_blocks_containing(int a, int b) const {
  if (a < 0 || b < 0 || a >= degree_ || b >= degree_ || a == b)
    throw InputError("group", "block seed must be two distinct points");
  // Union-find closure to a fixpoint: the partition is generator-invariant
  // once every point's class agrees with its root's class after each
  // generator, and every merge performed is forced in any invariant partition
  // joining a and b, so the result is the finest such partition.
  std::vector<int> parent(degree_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    if (rx > ry) std::swap(rx, ry);
    parent[ry] = rx;
    return true;
  };
  unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < degree_; ++p) {
      int r = find(p);
      if (r == p) continue;
      for (const auto& g : generators_) {
        if (unite(g.apply(p), g.apply(r))) changed = true;
      }
    }
  }
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < degree_; ++i) classes[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : classes) out.push_back(std::move(members));
  return out;
}

std::vector<std::vector<std::vector<int>>> PermutationGroup::minimal_block_systems() const {
  if (!is_transitive())
    throw InputError("group", "block systems require a transitive group");
  std::vector<std::vector<std::vector<int>>> out;
  for (int b = 1; b < degree_; ++b) {
    auto part = minimal_blocks_containing(0, b);
    if (part.size() <= 1) continue;                       // no proper block
    if (part.size() == static_cast<std::size_t>(degree_)) continue;  // singletons (unreachable)
    if (std::find(out.begin(), out.end(), part) == out.end()) out.push_back(part);
  }
  return out;
}

std::vector<OrbitalGraphInfo> PermutationGroup::orbital_graphs() const {
  auto orbits = orbits_on_tuples(2);
  std::vector<OrbitalGraphInfo> out;
  for (const auto& orbit : orbits) {
    OrbitalGraphInfo info;
    info.orbit_size = orbit.size();
    std::vector<std::vector<int>> adj(degree_);
    for (const auto& pair : orbit) {
      adj[pair[0]].push_back(pair[1]);
      adj[pair[1]].push_back(pair[0]);
    }
    // BFS component count; diameter over all sources when connected.
    std::vector<int> dist(degree_);
    int components = 0;
    std::vector<char> seen(degree_, 0);
    for (int s0 = 0; s0 < degree_; ++s0) {
      if (seen[s0]) continue;
      ++components;
      std::deque<int> frontier{s0};
      seen[s0] = 1;
      while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop_front();
        for (int v : adj[u])
          if (!seen[v]) {
            seen[v] = 1;
            frontier.push_back(v);
          }
      }
    }
    info.components = components;
    info.connected = components == 1;
    if (info.connected) {
      int diameter = 0;
      for (int s0 = 0; s0 < degree_; ++s0) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s0] = 0;
        std::deque<int> frontier{s0};
        while (!frontier.empty()) {
          int u = frontier.front();
          frontier.pop_front();
          for (int v : adj[u])
            if (dist[v] < 0) {
              dist[v] = dist[u] + 1;
              diameter = std::max(diameter, dist[v]);
              frontier.push_back(v);
            }
        }
      }
      info.diameter = diameter;
    }
    out.push_back(info);
  }
  return out;
}

bool PermutationGroup::is_primitive(std::vector<OrbitalGraphInfo>* graphs) const {
  if (!is_transitive())
    throw InputError("group", "primitivity requires a transitive group");
  auto infos = orbital_graphs();
  bool primitive = true;
  for (const auto& info : infos) primitive = primitive && info.connected;
  if (graphs) *graphs = infos;
  return primitive;
}

std::string PermutationGroup::classify() const {
  const unsigned k = static_cast<unsigned>(degree_);
  BigUint ord = order();
  BigUint full = BigUint::factorial(k);
  if (ord == full) return "symmetric";
  if (k >= 3) {
    BigUint twice = ord;
    twice *= 2;
    if (twice == full) return "alternating";
  }
  if (k % 2 == 0 && k >= 4) {
    BigUint wreath = BigUint::pow2(k / 2) * BigUint::factorial(k / 2);
    if (ord == wreath && is_transitive()) {
      // require the witnessing structure: k/2 blocks of size 2
      for (const auto& system : minimal_block_systems()) {
        if (system.size() == k / 2 && system[0].size() == 2) return "wreath-s2";
      }
    }
  }
  struct MathieuEntry { unsigned degree; std::uint64_t order; };
  constexpr MathieuEntry mathieu[] = {
      {11, 7920ull}, {12, 95040ull}, {23, 10200960ull}, {24, 244823040ull}};
  for (auto entry : mathieu) {
    if (k == entry.degree && ord == BigUint(entry.order)) return "mathieu-candidate";
  }
  return "other";
}

GroupReport PermutationGroup::report() const {
  GroupReport rep;
  rep.order = order().to_string();
  rep.degree = degree_;
  rep.transitive = is_transitive();
  rep.transitivity_degree = transitivity_degree();
  for (const auto& orbit : point_orbits()) rep.point_orbit_sizes.push_back(orbit.size());
  if (rep.transitive) {
    std::vector<OrbitalGraphInfo> graphs;
    rep.primitive = is_primitive(&graphs);
    rep.orbital_graphs = graphs;
    for (const auto& system : minimal_block_systems()) {
      std::vector<std::vector<int>> one_based;
      for (const auto& block : system) {
        std::vector<int> b;
        for (int p : block) b.push_back(p + 1);
        one_based.push_back(std::move(b));
      }
      rep.minimal_block_systems.push_back(std::move(one_based));
    }
    for (const auto& g : rep.orbital_graphs) rep.pair_orbit_sizes.push_back(g.orbit_size);
  } else {
    rep.primitive = false;
  }
  rep.classification = classify();
  // Triple orbits only when the space is small enough to enumerate cheaply.
  const std::size_t degree3 = static_cast<std::size_t>(degree_) * degree_ * degree_;
  if (degree3 <= 40000) {
    for (const auto& orbit : orbits_on_tuples(3))
      rep.triple_orbit_sizes.push_back(orbit.size());
  }
  return rep;
}

}  // namespace galoscope
