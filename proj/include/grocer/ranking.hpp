#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace grocer {

/// Deterministic ordering of the full assortment used to complete every
/// personalized prefix (cluster-popularity by default).
class FallbackOrdering {
 public:
  FallbackOrdering() = default;
  explicit FallbackOrdering(std::vector<std::string> items);

  const std::vector<std::string>& items() const { return items_; }
  int size() const { return static_cast<int>(items_.size()); }
  /// 0-based shelf position, -1 when the item is unknown.
  int position(const std::string& id) const;

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, int> index_;
};

/// Per-user permutation of the entire assortment: a personalized prefix of
/// `prefix_len` items followed by the fallback ordering of the rest.
/// `prefix_scores`, when non-empty, carries one score per prefix item
/// (regression p-values for the network model).
struct FullRanking {
  std::string user_id;
  std::vector<std::string> items;
  std::size_t prefix_len = 0;
  std::vector<double> prefix_scores;

  /// item id -> 1-based rank over the full permutation.
  std::unordered_map<std::string, int> rank_index() const;
};

/// CSV rows "user_id,rank,item_id,score"; score is empty outside the prefix.
void append_ranking_csv(std::string& out, const FullRanking& r);
std::string ranking_csv_header();

}  // namespace grocer
