#include "grocer/ranking.hpp"

#include "grocer/errors.hpp"
#include "grocer/util.hpp"

namespace grocer {

FallbackOrdering::FallbackOrdering(std::vector<std::string> items) : items_(std::move(items)) {
  index_.reserve(items_.size());
  for (size_t i = 0; i < items_.size(); ++i) {
    auto [_, inserted] = index_.emplace(items_[i], static_cast<int>(i));
    if (!inserted) throw DataError("fallback ordering repeats item " + items_[i]);
  }
}

int FallbackOrdering::position(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

std::unordered_map<std::string, int> FullRanking::rank_index() const {
  std::unordered_map<std::string, int> idx;
  idx.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) idx.emplace(items[i], static_cast<int>(i) + 1);
  return idx;
}

std::string ranking_csv_header() { return "user_id,rank,item_id,score\n"; }

void append_ranking_csv(std::string& out, const FullRanking& r) {
  for (size_t i = 0; i < r.items.size(); ++i) {
    out += r.user_id;
    out += ',';
    out += std::to_string(i + 1);
    out += ',';
    out += r.items[i];
    out += ',';
    if (i < r.prefix_len && i < r.prefix_scores.size()) out += format_sig12(r.prefix_scores[i]);
    out += '\n';
  }
}

}  // namespace grocer
