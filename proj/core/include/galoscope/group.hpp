#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galoscope/biguint.hpp"
#include "galoscope/permutation.hpp"

namespace galoscope {

// Connectivity data for one orbital graph (orbit of ordered pairs, read as an
// undirected graph on the points).
struct OrbitalGraphInfo {
  std::size_t orbit_size = 0;  // number of ordered pairs in the orbit
  bool connected = false;
  int components = 0;
  int diameter = -1;  // -1 when disconnected
};

// Analysis summary serialized by the reporting layer.
struct GroupReport {
  std::string order;  // decimal, arbitrary precision
  int degree = 0;
  int transitivity_degree = 0;
  bool transitive = false;
  bool primitive = false;
  std::vector<std::size_t> point_orbit_sizes;
  std::vector<std::vector<std::vector<int>>> minimal_block_systems;  // 1-based points
  std::string classification;  // symmetric | alternating | wreath-s2 | mathieu-candidate | other
  std::vector<std::size_t> pair_orbit_sizes;    // empty if not computed
  std::vector<std::size_t> triple_orbit_sizes;  // empty if not computed
  std::vector<OrbitalGraphInfo> orbital_graphs;  // empty if not computed (transitive only)
};

// Permutation group given by generators, backed by a deterministic stabilizer
// chain (Schreier-Sims with strong-generator sifting; base points chosen
// greedily by largest fundamental orbit, ties to the smallest point). All
// queries are exact; the order is arbitrary-precision.
class PermutationGroup {
public:
  PermutationGroup(int degree, std::vector<Permutation> generators);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  BigUint order() const;
  bool contains(const Permutation& g) const;
  const std::vector<int>& base_points() const { return base_; }

  // Orbits on points, each sorted, ordered by smallest member. 0-based.
  std::vector<std::vector<int>> point_orbits() const;
  bool is_transitive() const;

  // Orbits on ordered tuples of s distinct points, s >= 1. Each orbit is the
  // sorted list of its tuples; orbits ordered by lexicographically smallest
  // tuple. Throws when the tuple space exceeds max_tuples.
  std::vector<std::vector<std::vector<int>>> orbits_on_tuples(
      int s, std::size_t max_tuples = 4000000) const;

  bool is_s_transitive(int s) const;
  // 0 for intransitive groups; capped at 5; s in {4,5} attempted only for
  // degree <= 12 (reported value is then a lower bound for larger degrees).
  int transitivity_degree() const;

  // Finest block system whose block joins points a and b (union-find closure
  // of the generator action). Returns the full partition; a single class means
  // no proper block separates them. Transitive groups only. 0-based.
  std::vector<std::vector<int>> minimal_blocks_containing(int a, int b) const;

  // All distinct nontrivial minimal block systems found from seeds {0, b}.
  std::vector<std::vector<std::vector<int>>> minimal_block_systems() const;

  // Orbital graphs of all orbits on ordered distinct pairs.
  std::vector<OrbitalGraphInfo> orbital_graphs() const;

  // A transitive group is primitive iff every orbital graph is connected.
  bool is_primitive(std::vector<OrbitalGraphInfo>* graphs = nullptr) const;

  // By order (and sanity conditions): "symmetric", "alternating", "wreath-s2"
  // (order 2^(k/2)*(k/2)! with k/2 blocks of size 2), "mathieu-candidate"
  // (degrees 11/12/23/24 with the matching simple-group order), else "other".
  std::string classify() const;

  GroupReport report() const;

private:
  struct Level {
    int base = 0;
    std::vector<Permutation> gens;       // generators introduced at this level
    std::vector<int> orbit;              // BFS order from base
    std::vector<int> position;           // point -> index in orbit, -1 absent
    std::vector<Permutation> transversal;  // aligned with orbit; u[base]=id, u maps base -> point
    void rebuild(int degree, const std::vector<Permutation>& acting);
  };

  int degree_;
  std::vector<Permutation> generators_;
  std::vector<Level> levels_;
  std::vector<int> base_;

  void build_chain();
  // Returns the residue and the level index at which sifting stopped.
  std::pair<Permutation, std::size_t> strip(const Permutation& g) const;
};

}  // namespace galoscope
