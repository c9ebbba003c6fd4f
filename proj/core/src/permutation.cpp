#include "galoscope/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "galoscope/errors.hpp"

namespace galoscope {

Permutation::Permutation(int k) : images_(k) {
  if (k < 1) throw InputError("permutation", "degree must be positive");
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  validate();
}

void Permutation::validate() const {
  const int k = degree();
  if (k < 1) throw InputError("permutation", "degree must be positive");
  std::vector<char> seen(k, 0);
  for (int v : images_) {
    if (v < 0 || v >= k)
      throw InputError("permutation", "image out of range");
    if (seen[v]) throw InputError("permutation", "image table is not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::parse(const std::string& text, int degree) {
  if (degree < 1) throw InputError("permutation", "degree must be positive");
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i < text.size() && text[i] == '(') {
    // disjoint-cycle form
    std::vector<int> images(degree);
    std::iota(images.begin(), images.end(), 0);
    std::vector<char> used(degree, 0);
    while (i < text.size()) {
      skip_ws();
      if (i == text.size()) break;
      if (text[i] != '(')
        throw InputError("permutation", "expected '(' in cycle text");
      ++i;
      std::vector<int> cycle;
      skip_ws();
      while (i < text.size() && text[i] != ')') {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
          throw InputError("permutation", "expected point number in cycle text");
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          v = v * 10 + (text[i++] - '0');
        if (v < 1 || v > degree)
          throw InputError("permutation",
                           "point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
        if (used[v - 1])
          throw InputError("permutation", "point " + std::to_string(v) + " repeated across cycles");
        used[v - 1] = 1;
        cycle.push_back(v - 1);
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
      }
      if (i == text.size())
        throw InputError("permutation", "unterminated cycle");
      ++i;  // ')'
      for (std::size_t j = 0; j < cycle.size(); ++j)
        images[cycle[j]] = cycle[(j + 1) % cycle.size()];
      skip_ws();
    }
    return Permutation(std::move(images));
  }
  // one-line form: exactly `degree` 1-based images
  std::istringstream in(text);
  std::vector<int> images;
  images.reserve(degree);
  long v;
  while (in >> v) {
    if (v < 1 || v > degree)
      throw InputError("permutation",
                       "image " + std::to_string(v) + " outside 1.." + std::to_string(degree));
    images.push_back(static_cast<int>(v - 1));
  }
  if (!in.eof()) throw InputError("permutation", "junk in one-line permutation text");
  if (static_cast<int>(images.size()) != degree)
    throw InputError("permutation", "one-line permutation has " + std::to_string(images.size()) +
                                        " images, expected " + std::to_string(degree));
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& then) const {
  if (degree() != then.degree())
    throw InputError("permutation", "degree mismatch in composition");
  std::vector<int> out(images_.size());
  for (int i = 0; i < degree(); ++i) out[i] = then.images_[images_[i]];
  return Permutation(std::move(out));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<int> cyc;
    int p = start;
    do {
      seen[p] = 1;
      cyc.push_back(p);
      p = images_[p];
    } while (p != start);
    out.push_back(std::move(cyc));  // starts at its smallest element by scan order
  }
  return out;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> type;
  for (const auto& c : cycles()) type.push_back(static_cast<int>(c.size()));
  std::sort(type.begin(), type.end());
  return type;
}

std::string Permutation::to_cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(c[j] + 1);
    }
    out += ')';
  }
  return out;
}

std::string Permutation::to_one_line_string() const {
  std::string out;
  for (int i = 0; i < degree(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i] + 1);
  }
  return out;
}

}  // namespace galoscope
