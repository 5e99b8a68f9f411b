#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grocer/ingest.hpp"

namespace grocer {

/// Sparse symmetric similarity graph over one id space. Stored values are
/// already raised to `exponent` and lie in (0, 1]; the diagonal is implicit
/// (self-similarity 1). Neighbor lists are sorted by node index and mirror
/// each other exactly.
struct SimilarityMatrix {
  std::vector<std::string> ids;
  double exponent = 1.0;
  std::vector<std::vector<std::pair<int, double>>> neighbors;

  std::optional<int> node_index(const std::string& id) const;
  /// Stored value for (i, j); 1 when i == j, 0 when the pair is absent.
  double value(int i, int j) const;
  std::size_t edge_count() const;  // unordered pairs

  /// Copy with nodes restricted to `keep_ids` (edges between kept nodes
  /// survive). Used to align item similarities with a purchase matrix whose
  /// item set is narrower.
  SimilarityMatrix restricted_to(const std::vector<std::string>& keep_ids) const;
};

enum class SimilarityAxis { items, users };

/// Cosine of two dense nonnegative vectors, clamped into [0, 1].
/// Throws ZeroVector when either norm is zero.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// Pairwise cosine over matrix columns (items) or rows (users), every value
/// raised to `exponent` (>= 1). Zero similarities are never stored. When
/// `max_neighbors` is set, each node marks its top-M partners (value desc,
/// id asc) and a pair survives if either endpoint marked it, which keeps the
/// result symmetric while bounding edges by M * node count.
SimilarityMatrix build_similarity_matrix(const InteractionMatrix& m, SimilarityAxis axis,
                                         double exponent,
                                         std::optional<int> max_neighbors = 100);

/// CSV triples "id_a,id_b,similarity" (12 significant digits), each
/// unordered pair once with id_a < id_b.
std::string serialize_similarity_csv(const SimilarityMatrix& sim);

}  // namespace grocer
