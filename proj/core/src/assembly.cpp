#include "kuz/assembly.hpp"

#include <algorithm>
#include <string>

#include "kuz/errors.hpp"

namespace kuz {

SparsityPattern::SparsityPattern(const FeSpace& space, DofSet set)
    : set_(set), nloc_(space.dofs_per_cell()) {
  const std::size_t ncells = space.num_cells();
  n_ = set == DofSet::kAll ? space.num_dofs() : space.num_free();

  rows_.resize(ncells * nloc_);
  for (std::size_t c = 0; c < ncells; ++c) {
    const auto dofs = space.cell_dofs(c);
    for (int i = 0; i < nloc_; ++i) {
      rows_[c * nloc_ + i] = set == DofSet::kAll ? dofs[i] : space.free_index(dofs[i]);
    }
  }

  std::vector<std::vector<int>> adj(n_);
  for (std::size_t c = 0; c < ncells; ++c) {
    for (int i = 0; i < nloc_; ++i) {
      const int r = rows_[c * nloc_ + i];
      if (r < 0) continue;
      for (int j = 0; j < nloc_; ++j) {
        const int col = rows_[c * nloc_ + j];
        if (col >= 0) adj[r].push_back(col);
      }
    }
  }
  row_ptr_.assign(n_ + 1, 0);
  for (std::size_t r = 0; r < n_; ++r) {
    auto& a = adj[r];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    row_ptr_[r + 1] = row_ptr_[r] + static_cast<int>(a.size());
  }
  cols_.reserve(row_ptr_.back());
  for (auto& a : adj) cols_.insert(cols_.end(), a.begin(), a.end());

  slots_.assign(ncells * nloc_ * nloc_, -1);
  for (std::size_t c = 0; c < ncells; ++c) {
    for (int i = 0; i < nloc_; ++i) {
      const int r = rows_[c * nloc_ + i];
      if (r < 0) continue;
      const auto first = cols_.begin() + row_ptr_[r];
      const auto last = cols_.begin() + row_ptr_[r + 1];
      for (int j = 0; j < nloc_; ++j) {
        const int col = rows_[c * nloc_ + j];
        if (col < 0) continue;
        slots_[(c * nloc_ + i) * nloc_ + j] =
            static_cast<int>(std::lower_bound(first, last, col) - cols_.begin());
      }
    }
  }
}

SparseMatrix SparsityPattern::make_matrix(std::vector<double> values) const {
  return SparseMatrix(n_, row_ptr_, cols_, std::move(values));
}

namespace {

void check_field(const FeSpace& s, std::span<const double> f, const char* who) {
  if (f.size() != s.num_dofs()) {
    throw ConfigError(std::string(who) + ": field has " + std::to_string(f.size()) +
                      " coefficients, space has " + std::to_string(s.num_dofs()));
  }
}

/// Drive `local(cell, q, dx, grads, out)` over all cells and rule points,
/// where `out` is the nloc x nloc local matrix (row = test function).
template <class Local>
SparseMatrix assemble_matrix(const FeSpace& s, DofSet set, Local&& local) {
  const SparsityPattern pattern(s, set);
  const int nloc = s.dofs_per_cell();
  const auto& rule = s.rule();
  std::vector<double> values(pattern.nnz(), 0.0);
  std::vector<double> elem(nloc * nloc);
  std::vector<Vec2> grads(nloc);

  for (std::size_t c = 0; c < s.num_cells(); ++c) {
    const CellGeometry& g = s.geometry(c);
    std::fill(elem.begin(), elem.end(), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double dx = rule.weights[q] * g.det;
      for (int i = 0; i < nloc; ++i) grads[i] = g.push_gradient(s.dphi_ref(q, i));
      local(c, q, dx, grads, elem);
    }
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j) {
        const int slot = pattern.slot(c, i, j);
        if (slot >= 0) values[slot] += elem[i * nloc + j];
      }
    }
  }
  return pattern.make_matrix(std::move(values));
}

template <class Local>
std::vector<double> assemble_vector(const FeSpace& s, DofSet set, Local&& local) {
  const int nloc = s.dofs_per_cell();
  const auto& rule = s.rule();
  std::vector<double> b(set == DofSet::kAll ? s.num_dofs() : s.num_free(), 0.0);
  std::vector<double> elem(nloc);
  for (std::size_t c = 0; c < s.num_cells(); ++c) {
    const CellGeometry& g = s.geometry(c);
    std::fill(elem.begin(), elem.end(), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      local(c, q, rule.weights[q] * g.det, g, elem);
    }
    const auto dofs = s.cell_dofs(c);
    for (int i = 0; i < nloc; ++i) {
      const int r = set == DofSet::kAll ? dofs[i] : s.free_index(dofs[i]);
      if (r >= 0) b[r] += elem[i];
    }
  }
  return b;
}

}  // namespace

SparseMatrix assemble_mass(const FeSpace& s, std::optional<MassWeight> weight, DofSet set) {
  if (weight) check_field(s, weight->field, "assemble_mass");
  const int nloc = s.dofs_per_cell();
  return assemble_matrix(s, set, [&](std::size_t c, std::size_t q, double dx,
                                     const std::vector<Vec2>&, std::vector<double>& elem) {
    double w = 1.0;
    if (weight) {
      const auto dofs = s.cell_dofs(c);
      double fv = 0.0;
      for (int l = 0; l < nloc; ++l) fv += weight->field[dofs[l]] * s.phi(q, l);
      w = weight->a + weight->b * fv;
    }
    const double f = dx * w;
    for (int i = 0; i < nloc; ++i) {
      const double fi = f * s.phi(q, i);
      for (int j = 0; j < nloc; ++j) elem[i * nloc + j] += fi * s.phi(q, j);
    }
  });
}

SparseMatrix assemble_stiffness(const FeSpace& s, DofSet set) {
  const int nloc = s.dofs_per_cell();
  return assemble_matrix(s, set, [&](std::size_t, std::size_t, double dx,
                                     const std::vector<Vec2>& grads, std::vector<double>& elem) {
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j) elem[i * nloc + j] += dx * dot(grads[i], grads[j]);
    }
  });
}

SparseMatrix assemble_convection(const FeSpace& s, std::span<const double> w, DofSet set) {
  check_field(s, w, "assemble_convection");
  const int nloc = s.dofs_per_cell();
  return assemble_matrix(s, set, [&](std::size_t c, std::size_t q, double dx,
                                     const std::vector<Vec2>& grads, std::vector<double>& elem) {
    const auto dofs = s.cell_dofs(c);
    Vec2 gw;
    for (int l = 0; l < nloc; ++l) gw = gw + w[dofs[l]] * grads[l];
    for (int i = 0; i < nloc; ++i) {
      const double fi = dx * s.phi(q, i);
      for (int j = 0; j < nloc; ++j) elem[i * nloc + j] += fi * dot(gw, grads[j]);
    }
  });
}

std::vector<double> assemble_load(const FeSpace& s, const SpaceTimeFn& g, double t, DofSet set) {
  const int nloc = s.dofs_per_cell();
  return assemble_vector(s, set, [&](std::size_t, std::size_t q, double dx,
                                     const CellGeometry& geo, std::vector<double>& elem) {
    const double f = dx * g(geo.map(s.rule().points[q]), t);
    for (int i = 0; i < nloc; ++i) elem[i] += f * s.phi(q, i);
  });
}

std::vector<double> assemble_load(const FeSpace& s, const SpatialFn& g, DofSet set) {
  return assemble_load(s, [&g](Point2 x, double) { return g(x); }, 0.0, set);
}

std::vector<double> assemble_gradient_load(const FeSpace& s, const SpatialGradFn& grad_g,
                                           DofSet set) {
  const int nloc = s.dofs_per_cell();
  return assemble_vector(s, set, [&](std::size_t, std::size_t q, double dx,
                                     const CellGeometry& geo, std::vector<double>& elem) {
    const Vec2 G = grad_g(geo.map(s.rule().points[q]));
    for (int i = 0; i < nloc; ++i) {
      elem[i] += dx * dot(G, geo.push_gradient(s.dphi_ref(q, i)));
    }
  });
}

}  // namespace kuz
