#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grocer/ingest.hpp"
#include "grocer/ranking.hpp"
#include "grocer/similarity.hpp"

namespace grocer {

/// Weighted graph over user and item nodes: user-user similarity edges,
/// item-item similarity edges, and user-item purchase edges taken from the
/// user-(item)-matrix. Immutable after construction.
///
/// With `leave_one_out` set, an item is never its own evidence: the
/// (purchase(u,i), self-similarity) pair is dropped from the subnetwork of
/// any (u, i) the user already bought. Offline evaluation wants this; live
/// ranking does not, since re-purchases are the point of e-grocery.
struct HeterogeneousNetwork {
  SimilarityMatrix user_sim;
  SimilarityMatrix item_sim;
  InteractionMatrix purchases;
  bool leave_one_out = false;

  // purchase-row index per user_sim node / purchase-column index per
  // item_sim node, resolved once at build time.
  std::vector<int> user_node_row;
  std::vector<int> item_node_col;
  // inverse maps: -1 where the purchase axis has no similarity node.
  std::vector<int> row_user_node;
  std::vector<int> col_item_node;
};

/// Validates id consistency (every similarity node must exist on the
/// purchase matrix axes; IdMismatch otherwise) and resolves index maps.
HeterogeneousNetwork build_network(SimilarityMatrix user_sim, SimilarityMatrix item_sim,
                                   InteractionMatrix purchases, bool leave_one_out = false);

/// Regressor/response pairs of the (u, i) subnetwork, one per intermediate
/// node: for each similar user v, (user similarity, v's purchase of i); for
/// each item j the user bought, (purchase value, item similarity of j and i).
/// Similarity values come from the network already exponentiated.
struct EvidencePairs {
  std::vector<std::pair<double, double>> pairs;
};

/// Least-squares fit of y = b x and its overall F-test.
struct RegressionResult {
  double slope = 0;
  double f_statistic = 0;
  double df1 = 1;
  double df2 = 0;
  double p_value = 1;
  std::size_t n = 0;
};

/// Throws UnknownId when u or i is absent from the purchase matrix axes.
EvidencePairs extract_subnetwork(const HeterogeneousNetwork& net, const std::string& user_id,
                                 const std::string& item_id);

/// b = Sxy/Sxx; SSR = b^2 Sxx; SSE = Syy - SSR (clamped at 0);
/// F = SSR/(SSE/(n-1)); p is the upper tail of F(1, n-1). An exact fit
/// (SSE = 0, SSR > 0) scores p = 0; a flat fit (SSR = 0) scores p = 1.
/// Throws InsufficientEvidence when n < 2 or Sxx = 0.
RegressionResult regress_through_origin(const EvidencePairs& pairs);

/// Regression p-value of the (u, i) subnetwork; InsufficientEvidence maps
/// to the worst score 1.
double score_user_item(const HeterogeneousNetwork& net, const std::string& user_id,
                       const std::string& item_id);

/// p-values for every item on the network's purchase axis, in item-index
/// order. Single pass over the user's neighbors and purchases; identical to
/// calling score_user_item per item.
std::vector<double> score_all_items(const HeterogeneousNetwork& net, const std::string& user_id);

/// Full-assortment ranking for one user: up to n_prefix items with p < 1
/// sorted by (p asc, fallback position, item id), then the rest of the
/// fallback ordering. The universe is the fallback's item list; network
/// items must all appear in it (IdMismatch otherwise). Users without
/// purchase history get ColdStartUser.
FullRanking rank_items_for_user(const HeterogeneousNetwork& net, const std::string& user_id,
                                std::size_t n_prefix, const FallbackOrdering& fallback);

}  // namespace grocer
