#include "grocer/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "grocer/errors.hpp"

namespace grocer {

namespace {

const char* kFieldNames[6] = {"order_id", "user_id", "item_id",
                              "quantity", "timestamp", "category"};

// Splits one CSV record. Double-quoted fields may contain commas and ""
// escapes; embedded newlines are not supported.
std::vector<std::string> split_csv_line(const std::string& line, long line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  size_t i = 0;
  bool in_field_quotes = false;
  while (i <= line.size()) {
    if (i == line.size()) {
      if (in_field_quotes) throw MalformedRow(line_no, "unterminated quoted field");
      fields.push_back(cur);
      break;
    }
    char c = line[i];
    if (in_field_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          in_field_quotes = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty() && !quoted) {
      in_field_quotes = true;
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
      quoted = false;
    } else {
      cur.push_back(c);
    }
    ++i;
  }
  return fields;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

long long parse_quantity(const std::string& s, long line_no) {
  if (s.empty() || s.size() > 18) throw MalformedRow(line_no, "bad quantity '" + s + "'");
  long long q = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw MalformedRow(line_no, "bad quantity '" + s + "'");
    q = q * 10 + (c - '0');
  }
  if (q < 1) throw MalformedRow(line_no, "quantity must be >= 1, got '" + s + "'");
  return q;
}

struct OrderKey {
  EpochSeconds first_ts;
  std::string order_id;
  bool operator<(const OrderKey& o) const {
    if (first_ts != o.first_ts) return first_ts < o.first_ts;
    return order_id < o.order_id;
  }
};

InteractionMatrix build_matrix(const std::vector<const PurchaseEvent*>& events,
                               ValueMode mode) {
  std::set<std::string> user_set, item_set;
  for (const auto* e : events) {
    user_set.insert(e->user_id);
    item_set.insert(e->item_id);
  }
  InteractionMatrix m;
  m.users.assign(user_set.begin(), user_set.end());
  m.items.assign(item_set.begin(), item_set.end());
  std::unordered_map<std::string, int> uidx, iidx;
  uidx.reserve(m.users.size());
  iidx.reserve(m.items.size());
  for (size_t i = 0; i < m.users.size(); ++i) uidx[m.users[i]] = static_cast<int>(i);
  for (size_t i = 0; i < m.items.size(); ++i) iidx[m.items[i]] = static_cast<int>(i);

  std::vector<std::map<int, double>> acc(m.users.size());
  for (const auto* e : events) {
    int u = uidx[e->user_id];
    int it = iidx[e->item_id];
    if (mode == ValueMode::binary) {
      acc[u][it] = 1.0;
    } else {
      acc[u][it] += 1.0;  // one count per purchase event
    }
  }
  m.rows.resize(m.users.size());
  for (size_t u = 0; u < acc.size(); ++u)
    m.rows[u].assign(acc[u].begin(), acc[u].end());
  return m;
}

}  // namespace

TransactionLog::TransactionLog(std::vector<PurchaseEvent> events)
    : events_(std::move(events)) {
  std::unordered_map<std::string, const std::string*> order_user;
  order_user.reserve(events_.size());
  for (const auto& e : events_) {
    if (e.quantity < 1) throw DataError("event with quantity < 1 in order " + e.order_id);
    auto [it, inserted] = order_user.try_emplace(e.order_id, &e.user_id);
    if (!inserted && *it->second != e.user_id)
      throw DuplicateOrderUser("order " + e.order_id + " carries users '" + *it->second +
                               "' and '" + e.user_id + "'");
  }
}

std::vector<std::string> TransactionLog::assortment() const {
  std::set<std::string> ids;
  for (const auto& e : events_) ids.insert(e.item_id);
  return {ids.begin(), ids.end()};
}

std::vector<std::string> TransactionLog::user_ids() const {
  std::set<std::string> ids;
  for (const auto& e : events_) ids.insert(e.user_id);
  return {ids.begin(), ids.end()};
}

std::size_t TransactionLog::order_count() const {
  std::set<std::string> ids;
  for (const auto& e : events_) ids.insert(e.order_id);
  return ids.size();
}

EpochSeconds TransactionLog::min_timestamp() const {
  if (events_.empty()) throw NoOrders("empty log has no timestamps");
  EpochSeconds t = events_.front().timestamp;
  for (const auto& e : events_) t = std::min(t, e.timestamp);
  return t;
}

EpochSeconds TransactionLog::max_timestamp() const {
  if (events_.empty()) throw NoOrders("empty log has no timestamps");
  EpochSeconds t = events_.front().timestamp;
  for (const auto& e : events_) t = std::max(t, e.timestamp);
  return t;
}

TransactionLog parse_transaction_log(std::istream& source, LogFormat format) {
  std::vector<PurchaseEvent> events;
  std::string line;
  long line_no = 0;

  if (format == LogFormat::csv) {
    if (!std::getline(source, line)) throw MalformedRow(1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line, line_no);
    if (header.size() != 6) throw MalformedRow(line_no, "header must declare the six fields");
    int col_of[6];
    for (int f = 0; f < 6; ++f) {
      auto it = std::find(header.begin(), header.end(), kFieldNames[f]);
      if (it == header.end())
        throw MalformedRow(line_no, std::string("header missing field '") + kFieldNames[f] + "'");
      col_of[f] = static_cast<int>(it - header.begin());
    }
    while (std::getline(source, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = split_csv_line(line, line_no);
      if (fields.size() != 6)
        throw MalformedRow(line_no, "expected 6 fields, got " + std::to_string(fields.size()));
      PurchaseEvent e;
      e.order_id = fields[col_of[0]];
      e.user_id = fields[col_of[1]];
      e.item_id = fields[col_of[2]];
      e.quantity = parse_quantity(fields[col_of[3]], line_no);
      try {
        e.timestamp = parse_iso8601(fields[col_of[4]]);
      } catch (const DataError& err) {
        throw MalformedRow(line_no, err.what());
      }
      e.category = fields[col_of[5]];
      if (e.order_id.empty() || e.user_id.empty() || e.item_id.empty())
        throw MalformedRow(line_no, "empty id field");
      events.push_back(std::move(e));
    }
  } else {
    while (std::getline(source, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
        PurchaseEvent e;
        e.order_id = j.at("order_id").get<std::string>();
        e.user_id = j.at("user_id").get<std::string>();
        e.item_id = j.at("item_id").get<std::string>();
        long long q = j.at("quantity").get<long long>();
        if (q < 1) throw MalformedRow(line_no, "quantity must be >= 1");
        e.quantity = q;
        e.timestamp = parse_iso8601(j.at("timestamp").get<std::string>());
        e.category = j.at("category").get<std::string>();
        if (e.order_id.empty() || e.user_id.empty() || e.item_id.empty())
          throw MalformedRow(line_no, "empty id field");
        events.push_back(std::move(e));
      } catch (const MalformedRow&) {
        throw;
      } catch (const std::exception& ex) {
        throw MalformedRow(line_no, ex.what());
      }
    }
  }
  return TransactionLog(std::move(events));
}

std::string serialize_transaction_log(const TransactionLog& log, LogFormat format) {
  std::ostringstream out;
  if (format == LogFormat::csv) {
    out << "order_id,user_id,item_id,quantity,timestamp,category\n";
    for (const auto& e : log.events()) {
      out << csv_escape(e.order_id) << ',' << csv_escape(e.user_id) << ','
          << csv_escape(e.item_id) << ',' << e.quantity << ',' << format_iso8601(e.timestamp)
          << ',' << csv_escape(e.category) << '\n';
    }
  } else {
    for (const auto& e : log.events()) {
      nlohmann::json j{{"order_id", e.order_id},   {"user_id", e.user_id},
                       {"item_id", e.item_id},     {"quantity", e.quantity},
                       {"timestamp", format_iso8601(e.timestamp)},
                       {"category", e.category}};
      out << j.dump() << '\n';
    }
  }
  return out.str();
}

std::optional<int> InteractionMatrix::user_index(const std::string& id) const {
  auto it = std::lower_bound(users.begin(), users.end(), id);
  if (it == users.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - users.begin());
}

std::optional<int> InteractionMatrix::item_index(const std::string& id) const {
  auto it = std::lower_bound(items.begin(), items.end(), id);
  if (it == items.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - items.begin());
}

double InteractionMatrix::value(int user, int item) const {
  const auto& row = rows[user];
  auto it = std::lower_bound(row.begin(), row.end(), item,
                             [](const auto& p, int i) { return p.first < i; });
  if (it == row.end() || it->first != item) return 0.0;
  return it->second;
}

std::size_t InteractionMatrix::stored_entries() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

InteractionMatrix extract_item_matrix(const TransactionLog& log, const MatrixSpec& spec) {
  std::vector<const PurchaseEvent*> included;
  if (!spec.tau_days.has_value()) {
    for (const auto& e : log.events()) included.push_back(&e);
  } else {
    if (*spec.tau_days < 1) throw ConfigError("tau_days must be >= 1");
    EpochSeconds lo = spec.reference_date - static_cast<EpochSeconds>(*spec.tau_days) * kSecondsPerDay;
    for (const auto& e : log.events())
      if (e.timestamp > lo && e.timestamp <= spec.reference_date) included.push_back(&e);
  }
  if (included.empty()) throw EmptyWindow("no events in the extraction window");
  return build_matrix(included, spec.value_mode);
}

long order_quantile_cap(const TransactionLog& log, double sigma_percent) {
  if (log.empty()) throw NoOrders("cannot take an order quantile of an empty log");
  if (!(sigma_percent > 0.0) || sigma_percent > 100.0)
    throw ConfigError("sigma_percent must be in (0, 100]");
  std::unordered_map<std::string, std::set<std::string>> orders_per_user;
  for (const auto& e : log.events()) orders_per_user[e.user_id].insert(e.order_id);
  std::vector<long> counts;
  counts.reserve(orders_per_user.size());
  for (const auto& [_, orders] : orders_per_user) counts.push_back(static_cast<long>(orders.size()));
  std::sort(counts.begin(), counts.end());
  // Nearest-rank (inclusive) percentile.
  auto n = static_cast<long>(counts.size());
  long rank = static_cast<long>(std::ceil(sigma_percent / 100.0 * static_cast<double>(n)));
  rank = std::clamp(rank, 1L, n);
  return std::max(1L, counts[rank - 1]);
}

InteractionMatrix extract_user_matrix(const TransactionLog& log, const MatrixSpec& spec) {
  long cap = order_quantile_cap(log, spec.sigma_percent);

  // Group events by order, remember each order's user and earliest timestamp.
  std::unordered_map<std::string, std::vector<const PurchaseEvent*>> order_events;
  for (const auto& e : log.events()) order_events[e.order_id].push_back(&e);

  std::unordered_map<std::string, std::vector<OrderKey>> user_orders;
  for (const auto& [oid, evs] : order_events) {
    EpochSeconds first_ts = evs.front()->timestamp;
    for (const auto* e : evs) first_ts = std::min(first_ts, e->timestamp);
    user_orders[evs.front()->user_id].push_back(OrderKey{first_ts, oid});
  }

  std::vector<const PurchaseEvent*> included;
  for (auto& [user, orders] : user_orders) {
    std::sort(orders.begin(), orders.end());
    size_t keep = std::min<size_t>(orders.size(), static_cast<size_t>(cap));
    for (size_t k = orders.size() - keep; k < orders.size(); ++k)
      for (const auto* e : order_events[orders[k].order_id]) included.push_back(e);
  }
  if (included.empty()) throw EmptyWindow("no events selected by the order cap");
  return build_matrix(included, spec.value_mode);
}

}  // namespace grocer
