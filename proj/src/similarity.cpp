#include "grocer/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "grocer/errors.hpp"
#include "grocer/util.hpp"

namespace grocer {

namespace {

using SparseRows = std::vector<std::vector<std::pair<int, double>>>;

// item-major view of a user-major matrix (or vice versa).
SparseRows transpose(const SparseRows& rows, int n_cols) {
  SparseRows cols(n_cols);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (const auto& [c, v] : rows[r]) cols[c].emplace_back(r, v);
  return cols;
}

}  // namespace

std::optional<int> SimilarityMatrix::node_index(const std::string& id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - ids.begin());
}

double SimilarityMatrix::value(int i, int j) const {
  if (i == j) return 1.0;
  const auto& row = neighbors[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& p, int n) { return p.first < n; });
  if (it == row.end() || it->first != j) return 0.0;
  return it->second;
}

std::size_t SimilarityMatrix::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : neighbors) n += row.size();
  return n / 2;
}

SimilarityMatrix SimilarityMatrix::restricted_to(const std::vector<std::string>& keep_ids) const {
  SimilarityMatrix out;
  out.exponent = exponent;
  std::vector<int> old_of_new;
  std::vector<int> new_of_old(ids.size(), -1);
  for (size_t i = 0; i < ids.size(); ++i) {
    if (std::binary_search(keep_ids.begin(), keep_ids.end(), ids[i])) {
      new_of_old[i] = static_cast<int>(old_of_new.size());
      old_of_new.push_back(static_cast<int>(i));
      out.ids.push_back(ids[i]);
    }
  }
  out.neighbors.resize(out.ids.size());
  for (size_t ni = 0; ni < old_of_new.size(); ++ni) {
    for (const auto& [j, v] : neighbors[old_of_new[ni]])
      if (new_of_old[j] >= 0) out.neighbors[ni].emplace_back(new_of_old[j], v);
  }
  return out;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DomainError("cosine_similarity: dimension mismatch");
  double dot = 0, nu = 0, nv = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw ZeroVector("cosine_similarity: zero-norm vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), 0.0, 1.0);
}

SimilarityMatrix build_similarity_matrix(const InteractionMatrix& m, SimilarityAxis axis,
                                         double exponent, std::optional<int> max_neighbors) {
  if (m.users.empty() || m.items.empty()) throw DataError("similarity over an empty matrix");
  if (!(exponent >= 1.0)) throw ConfigError("similarity exponent must be >= 1");
  if (max_neighbors && *max_neighbors < 1) throw ConfigError("max_neighbors must be >= 1");

  // Entities are the axis nodes; dims are the other side.
  const bool over_users = axis == SimilarityAxis::users;
  SparseRows cols = transpose(m.rows, static_cast<int>(m.items.size()));
  const SparseRows& entity = over_users ? m.rows : cols;
  const SparseRows& dims = over_users ? cols : m.rows;
  const int n = static_cast<int>(entity.size());

  std::vector<double> norm(n);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (const auto& [_, v] : entity[i]) s += v * v;
    norm[i] = std::sqrt(s);
  }

  // Per-node candidate lists; top-M when capped, all positive pairs otherwise.
  std::vector<std::vector<std::pair<int, double>>> kept(n);
  parallel_for(n, effective_threads(), [&](int i) {
    thread_local std::vector<double> acc;
    thread_local std::vector<int> touched;
    if (static_cast<int>(acc.size()) < n) acc.assign(n, 0.0);
    touched.clear();
    for (const auto& [d, x] : entity[i]) {
      for (const auto& [j, y] : dims[d]) {
        if (j == i) continue;
        if (acc[j] == 0.0) touched.push_back(j);
        acc[j] += x * y;
      }
    }
    auto& out = kept[i];
    if (norm[i] > 0.0) {
      for (int j : touched) {
        double sim = std::clamp(acc[j] / (norm[i] * norm[j]), 0.0, 1.0);
        if (exponent != 1.0) sim = std::pow(sim, exponent);
        if (sim > 0.0) out.emplace_back(j, sim);
      }
    }
    for (int j : touched) acc[j] = 0.0;
    if (max_neighbors && static_cast<int>(out.size()) > *max_neighbors) {
      std::nth_element(out.begin(), out.begin() + *max_neighbors, out.end(),
                       [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                       });
      std::sort(out.begin(), out.begin() + *max_neighbors,
                [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
                });
      out.resize(*max_neighbors);
    }
    std::sort(out.begin(), out.end());
  });

  SimilarityMatrix sim;
  sim.ids = over_users ? m.users : m.items;
  sim.exponent = exponent;
  sim.neighbors.resize(n);
  if (!max_neighbors) {
    sim.neighbors = std::move(kept);  // already symmetric: full rows computed
  } else {
    // A pair survives if either endpoint kept it.
    for (int i = 0; i < n; ++i)
      for (const auto& [j, v] : kept[i]) {
        sim.neighbors[i].emplace_back(j, v);
        if (!std::binary_search(kept[j].begin(), kept[j].end(), std::make_pair(i, 0.0),
                                [](const auto& a, const auto& b) { return a.first < b.first; }))
          sim.neighbors[j].emplace_back(i, v);
      }
    for (auto& row : sim.neighbors) std::sort(row.begin(), row.end());
  }
  return sim;
}

std::string serialize_similarity_csv(const SimilarityMatrix& sim) {
  std::ostringstream out;
  out << "id_a,id_b,similarity\n";
  for (size_t i = 0; i < sim.neighbors.size(); ++i)
    for (const auto& [j, v] : sim.neighbors[i])
      if (static_cast<int>(i) < j)
        out << sim.ids[i] << ',' << sim.ids[j] << ',' << format_sig12(v) << '\n';
  return out.str();
}

}  // namespace grocer
