#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grocer/calendar.hpp"

namespace grocer {

/// One purchased order line. `category` is the item's cluster id as recorded
/// by the shop; `quantity` is units bought (>= 1).
struct PurchaseEvent {
  std::string order_id;
  std::string user_id;
  std::string item_id;
  long long quantity = 1;
  EpochSeconds timestamp = 0;
  std::string category;

  friend bool operator==(const PurchaseEvent&, const PurchaseEvent&) = default;
};

/// Immutable purchase history. Construction validates that quantities are
/// positive and that each order id belongs to exactly one user.
class TransactionLog {
 public:
  TransactionLog() = default;
  explicit TransactionLog(std::vector<PurchaseEvent> events);

  const std::vector<PurchaseEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }

  /// Sorted distinct item ids; its size is the assortment size.
  std::vector<std::string> assortment() const;
  /// Sorted distinct user ids.
  std::vector<std::string> user_ids() const;
  /// Distinct order count.
  std::size_t order_count() const;

  EpochSeconds min_timestamp() const;  // throws NoOrders on empty log
  EpochSeconds max_timestamp() const;

  friend bool operator==(const TransactionLog&, const TransactionLog&) = default;

 private:
  std::vector<PurchaseEvent> events_;
};

enum class LogFormat { csv, jsonl };

/// Parses a transaction log. CSV requires a header naming the six fields
/// (any column order); JSONL is one event object per line. Input order is
/// preserved. Throws MalformedRow (with line number) or DuplicateOrderUser.
TransactionLog parse_transaction_log(std::istream& source, LogFormat format);

/// Inverse of parse_transaction_log; parse(serialize(log)) == log.
std::string serialize_transaction_log(const TransactionLog& log, LogFormat format);

enum class ValueMode { binary, count };

/// Window/meta-parameters for matrix extraction. `tau_days` bounds the
/// transaction window for the item matrix; unset means unbounded, in which
/// case no time filtering happens at all. `sigma_percent` is the order-count
/// quantile capping per-user history in the user matrix.
struct MatrixSpec {
  std::optional<int> tau_days;      // nullopt = unbounded
  double sigma_percent = 100.0;     // in (0, 100]
  EpochSeconds reference_date = 0;  // window end, inclusive
  ValueMode value_mode = ValueMode::binary;
};

/// Sparse user x item matrix. Users and items are sorted lexicographically;
/// each row is sorted by item index and stores only positive values (1 in
/// binary mode, event counts in count mode).
struct InteractionMatrix {
  std::vector<std::string> users;
  std::vector<std::string> items;
  std::vector<std::vector<std::pair<int, double>>> rows;

  std::optional<int> user_index(const std::string& id) const;
  std::optional<int> item_index(const std::string& id) const;
  double value(int user, int item) const;  // 0 when absent

  std::size_t stored_entries() const;

  friend bool operator==(const InteractionMatrix&, const InteractionMatrix&) = default;
};

/// Matrix over events in the half-open window
/// (reference_date - tau_days, reference_date]; unbounded tau keeps every
/// event. Throws EmptyWindow when nothing falls inside.
InteractionMatrix extract_item_matrix(const TransactionLog& log, const MatrixSpec& spec);

/// The global per-user order cap q: nearest-rank sigma-percentile of the
/// orders-per-user distribution, floored at 1.
long order_quantile_cap(const TransactionLog& log, double sigma_percent);

/// Matrix over each user's q most recent orders, q = order_quantile_cap.
/// Every user with at least one order keeps at least one, so user coverage
/// is 100%. Order recency is by earliest event timestamp, ties by order id.
InteractionMatrix extract_user_matrix(const TransactionLog& log, const MatrixSpec& spec);

}  // namespace grocer
