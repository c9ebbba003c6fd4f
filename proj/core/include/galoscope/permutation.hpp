#pragma once

#include <string>
#include <vector>

namespace galoscope {

// Permutation of {1..k}, stored 0-based: images[i] is where point i goes.
// Composition is left-to-right: (a * b) means "apply a, then b".
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(int k);                       // identity on k points
  explicit Permutation(std::vector<int> images);     // 0-based image table

  static Permutation identity(int k) { return Permutation(k); }

  // Accepts disjoint-cycle text "(1,2)(3,4)" (1-based, whitespace tolerated,
  // "()" = identity) or one-line text "2 1 4 3" (image of i at position i).
  // degree is the number of points; for one-line input it must match.
  static Permutation parse(const std::string& text, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int i) const { return images_[i]; }      // 0-based
  int operator[](int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation operator*(const Permutation& then) const;  // left-to-right
  bool operator==(const Permutation& rhs) const { return images_ == rhs.images_; }
  bool operator!=(const Permutation& rhs) const { return images_ != rhs.images_; }
  bool operator<(const Permutation& rhs) const { return images_ < rhs.images_; }

  // Cycles of length >= 2, each rotated so its smallest element leads,
  // sorted by smallest element. 0-based points.
  std::vector<std::vector<int>> cycles() const;
  // Multiset of cycle lengths >= 2, sorted ascending. Identity -> {}.
  std::vector<int> cycle_type() const;

  // "(1,2)(3,4)" (1-based); identity prints "()".
  std::string to_cycle_string() const;
  // "2 1 4 3" (1-based images).
  std::string to_one_line_string() const;

private:
  std::vector<int> images_;
  void validate() const;
};

}  // namespace galoscope
