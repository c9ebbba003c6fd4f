#include "galoscope/charts.hpp"

#include <algorithm>
#include <set>

#include "galoscope/errors.hpp"

namespace galoscope {

LineEmbedding LineEmbedding::random(std::size_t parameter_count, RandomStream& rng, double scale) {
  LineEmbedding out;
  for (std::size_t i = 0; i < parameter_count; ++i) out.base.push_back(scale * rng.unit_disc());
  for (std::size_t i = 0; i < parameter_count; ++i)
    out.direction.push_back(scale * rng.unit_disc());
  return out;
}

bool LineEmbedding::is_identity() const {
  return base.size() == 1 && base[0] == Complex(0, 0) && direction.size() == 1 &&
         direction[0] == Complex(1, 0);
}

std::string fresh_name(std::string wanted, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), wanted) != taken.end()) wanted += '_';
  return wanted;
}

PolySystem restrict_to_line(const PolySystem& sys, const LineEmbedding& line) {
  if (sys.parameter_count() == 0)
    throw InputError("poly-core", "restrict_to_line needs a parameterized system");
  if (line.base.size() != sys.parameter_count() || line.direction.size() != sys.parameter_count())
    throw InputError("poly-core", "line dimension does not match the parameter count");
  bool all_zero = true;
  for (const auto& d : line.direction)
    if (d != Complex(0, 0)) all_zero = false;
  if (all_zero) throw InputError("poly-core", "line direction must be nonzero");

  const std::size_t nv = sys.variable_count();
  const std::size_t new_cols = nv + 1;
  std::string t_name = (sys.parameter_count() == 1 && line.is_identity())
                           ? sys.parameters()[0]
                           : fresh_name("t", sys.variables());

  std::vector<Polynomial> images;
  images.reserve(sys.column_count());
  for (std::size_t v = 0; v < nv; ++v) images.push_back(Polynomial::variable(new_cols, v));
  Polynomial t = Polynomial::variable(new_cols, nv);
  for (std::size_t p = 0; p < sys.parameter_count(); ++p)
    images.push_back(Polynomial::constant(new_cols, line.base[p]) + t.scaled(line.direction[p]));

  std::vector<Polynomial> eqs;
  eqs.reserve(sys.equation_count());
  for (const auto& eq : sys.equations()) eqs.push_back(eq.substitute(new_cols, images));
  return PolySystem(sys.variables(), {t_name}, std::move(eqs));
}

AffineChart random_affine_chart(const PolySystem& sys,
                                const std::vector<std::vector<std::string>>& group_names,
                                RandomStream& rng) {
  AffineChart chart;
  std::set<std::string> used;
  for (const auto& names : group_names) {
    if (names.size() < 2)
      throw InputError("poly-core", "a projective group needs at least two variables");
    AffineChart::GroupChart g;
    for (const auto& n : names) {
      auto it = std::find(sys.variables().begin(), sys.variables().end(), n);
      if (it == sys.variables().end())
        throw InputError("poly-core", "projective group member '" + n + "' is not a variable");
      if (!used.insert(n).second)
        throw InputError("poly-core", "variable '" + n + "' in two projective groups");
      g.member_columns.push_back(static_cast<std::size_t>(it - sys.variables().begin()));
    }
    for (std::size_t m = 0; m < names.size(); ++m) {
      std::vector<Complex> row;
      for (std::size_t j = 0; j < names.size(); ++j) row.push_back(rng.unit_disc());
      g.coefficients.push_back(std::move(row));
    }
    chart.groups.push_back(std::move(g));
  }
  return chart;
}

PolySystem apply_chart(const PolySystem& sys, const AffineChart& chart) {
  if (chart.groups.empty()) return sys;
  const std::size_t nv = sys.variable_count();
  std::vector<int> group_of(nv, -1);
  for (std::size_t gi = 0; gi < chart.groups.size(); ++gi) {
    const auto& g = chart.groups[gi];
    if (g.member_columns.size() < 2 || g.coefficients.size() != g.member_columns.size())
      throw InputError("poly-core", "malformed chart group");
    for (const auto& row : g.coefficients)
      if (row.size() != g.member_columns.size())
        throw InputError("poly-core", "malformed chart coefficients");
    for (std::size_t col : g.member_columns) {
      if (col >= nv) throw InputError("poly-core", "chart column out of range");
      if (group_of[col] >= 0) throw InputError("poly-core", "variable in two chart groups");
      group_of[col] = static_cast<int>(gi);
    }
  }

  // New variable list: ungrouped variables stay; each group contributes g-1
  // chart coordinates at its first member's position.
  std::vector<std::string> new_vars;
  std::vector<std::size_t> group_start(chart.groups.size(), 0);
  std::vector<char> group_emitted(chart.groups.size(), 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (group_of[v] < 0) {
      new_vars.push_back(sys.variables()[v]);
      continue;
    }
    std::size_t gi = static_cast<std::size_t>(group_of[v]);
    if (group_emitted[gi]) continue;
    group_emitted[gi] = 1;
    group_start[gi] = new_vars.size();
    for (std::size_t j = 1; j < chart.groups[gi].member_columns.size(); ++j) {
      std::vector<std::string> taken = new_vars;
      taken.insert(taken.end(), sys.variables().begin(), sys.variables().end());
      taken.insert(taken.end(), sys.parameters().begin(), sys.parameters().end());
      new_vars.push_back(fresh_name("z" + std::to_string(j), taken));
    }
  }

  const std::size_t new_cols = new_vars.size() + sys.parameter_count();
  std::vector<Polynomial> images(sys.column_count(), Polynomial(new_cols));
  std::size_t plain_at = 0;
  std::vector<std::size_t> plain_position(nv, 0);
  {
    // positions of ungrouped variables in the new layout
    std::size_t cursor = 0;
    std::vector<char> emitted(chart.groups.size(), 0);
    for (std::size_t v = 0; v < nv; ++v) {
      if (group_of[v] < 0) {
        plain_position[v] = cursor++;
      } else {
        std::size_t gi = static_cast<std::size_t>(group_of[v]);
        if (!emitted[gi]) {
          emitted[gi] = 1;
          cursor += chart.groups[gi].member_columns.size() - 1;
        }
      }
    }
    (void)plain_at;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (group_of[v] < 0) {
      images[v] = Polynomial::variable(new_cols, plain_position[v]);
      continue;
    }
    const auto& g = chart.groups[static_cast<std::size_t>(group_of[v])];
    std::size_t member = 0;
    for (std::size_t m = 0; m < g.member_columns.size(); ++m)
      if (g.member_columns[m] == v) member = m;
    const auto& row = g.coefficients[member];
    Polynomial img = Polynomial::constant(new_cols, row[0]);
    for (std::size_t j = 1; j < row.size(); ++j) {
      std::size_t zcol = group_start[static_cast<std::size_t>(group_of[v])] + (j - 1);
      img = img + Polynomial::variable(new_cols, zcol).scaled(row[j]);
    }
    images[v] = img;
  }
  for (std::size_t p = 0; p < sys.parameter_count(); ++p)
    images[nv + p] = Polynomial::variable(new_cols, new_vars.size() + p);

  std::vector<Polynomial> eqs;
  eqs.reserve(sys.equation_count());
  for (const auto& eq : sys.equations()) eqs.push_back(eq.substitute(new_cols, images));
  return PolySystem(new_vars, sys.parameters(), std::move(eqs));
}

}  // namespace galoscope
