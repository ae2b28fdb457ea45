#include "pncf/interactions.hpp"

#include <algorithm>
#include <set>

#include "pncf/rng.hpp"

namespace pncf {

std::size_t InteractionSet::interaction_count() const {
  std::size_t n = 0;
  for (const auto& items : items_by_user) n += items.size();
  return n;
}

std::size_t InteractionSet::add_user(const std::string& id) {
  auto [it, inserted] = user_index.try_emplace(id, user_ids.size());
  if (inserted) {
    user_ids.push_back(id);
    items_by_user.emplace_back();
    order_by_user.emplace_back();
  }
  return it->second;
}

std::size_t InteractionSet::add_item(const std::string& id) {
  auto [it, inserted] = item_index.try_emplace(id, item_ids.size());
  if (inserted) item_ids.push_back(id);
  return it->second;
}

void InteractionSet::add_interaction(std::size_t user, std::size_t item) {
  auto& items = items_by_user.at(user);
  const auto pos = std::lower_bound(items.begin(), items.end(), item);
  if (pos != items.end() && *pos == item) return;
  items.insert(pos, item);
  order_by_user[user].push_back(item);
}

bool InteractionSet::has(std::size_t user, std::size_t item) const {
  const auto& items = items_by_user.at(user);
  return std::binary_search(items.begin(), items.end(), item);
}

FilterResult filter_active(std::span<const ReviewRecord> records,
                           const FilterOptions& options) {
  struct UserAccum {
    std::string text;
    std::size_t qualifying = 0;
    std::size_t words = 0;
    std::set<std::string> qualifying_items;
    std::vector<std::pair<std::string, bool>> seen_items;  // (asin, first time)
  };

  std::vector<std::string> order;
  std::unordered_map<std::string, UserAccum> by_user;
  FilterResult result;
  result.counts.reviews_total = records.size();

  for (const ReviewRecord& rec : records) {
    auto [it, inserted] = by_user.try_emplace(rec.reviewer_id);
    if (inserted) order.push_back(rec.reviewer_id);
    UserAccum& acc = it->second;
    acc.seen_items.emplace_back(rec.asin, true);

    const std::size_t words = word_count(rec.review_text);
    if (words < options.min_words || words > options.max_words) continue;
    ++result.counts.reviews_qualifying;
    ++acc.qualifying;
    acc.words += words;
    acc.qualifying_items.insert(rec.asin);
    if (!acc.text.empty()) acc.text.push_back(' ');
    acc.text += rec.review_text;
  }

  result.counts.users_total = order.size();
  for (const std::string& user : order) {
    UserAccum& acc = by_user.at(user);
    if (acc.qualifying_items.size() < options.min_items) continue;
    ++result.counts.users_retained;

    UserDocument doc;
    doc.user_id = user;
    doc.text = std::move(acc.text);
    doc.qualifying_review_count = acc.qualifying;
    doc.total_words = acc.words;

    const std::size_t u = result.interactions.add_user(user);
    std::set<std::string> distinct;
    for (const auto& [asin, _] : acc.seen_items) {
      const std::size_t i = result.interactions.add_item(asin);
      result.interactions.add_interaction(u, i);
      distinct.insert(asin);
    }
    doc.reviewed_items.assign(distinct.begin(), distinct.end());
    result.documents.push_back(std::move(doc));
  }
  return result;
}

double density_percent(std::size_t users, std::size_t items,
                       std::size_t ratings) {
  if (users == 0 || items == 0) {
    throw DataError("density: empty dataset (users or items is zero)");
  }
  return 100.0 * static_cast<double>(ratings) /
         (static_cast<double>(users) * static_cast<double>(items));
}

DatasetStats dataset_stats(const InteractionSet& interactions,
                           std::span<const UserDocument> documents) {
  if (interactions.user_count() == 0 || interactions.item_count() == 0 ||
      interactions.interaction_count() == 0) {
    throw DataError("dataset_stats: empty dataset");
  }
  DatasetStats stats;
  stats.users = interactions.user_count();
  stats.items = interactions.item_count();
  stats.ratings = interactions.interaction_count();
  stats.density_percent = density_percent(stats.users, stats.items, stats.ratings);

  std::size_t total_words = 0;
  std::size_t total_reviews = 0;
  for (const UserDocument& doc : documents) {
    total_words += doc.total_words;
    total_reviews += doc.qualifying_review_count;
  }
  if (!documents.empty()) {
    stats.avg_words_per_user =
        static_cast<double>(total_words) / static_cast<double>(documents.size());
  }
  if (total_reviews > 0) {
    stats.avg_words_per_review =
        static_cast<double>(total_words) / static_cast<double>(total_reviews);
  }
  return stats;
}

std::size_t LeaveOneOutSplit::eligible_users() const {
  std::size_t n = 0;
  for (std::ptrdiff_t h : held_out) n += (h >= 0);
  return n;
}

LeaveOneOutSplit leave_one_out_split(const InteractionSet& interactions,
                                     std::uint64_t seed, HoldoutPolicy policy) {
  LeaveOneOutSplit split;
  split.seed = seed;
  split.train = interactions;
  split.held_out.assign(interactions.user_count(), -1);

  for (std::size_t u = 0; u < interactions.user_count(); ++u) {
    const auto& items = interactions.items_by_user[u];
    if (items.size() < 2) continue;

    std::size_t held;
    if (policy == HoldoutPolicy::last) {
      held = interactions.order_by_user[u].back();
    } else {
      rng::Stream stream(rng::key(seed, 0x686f6c64, u));
      held = items[stream.next_below(items.size())];
    }
    split.held_out[u] = static_cast<std::ptrdiff_t>(held);

    auto& train_items = split.train.items_by_user[u];
    train_items.erase(
        std::lower_bound(train_items.begin(), train_items.end(), held));
    auto& train_order = split.train.order_by_user[u];
    train_order.erase(
        std::find(train_order.begin(), train_order.end(), held));
  }
  return split;
}

NegativeSampleResult sample_train_negatives(const LeaveOneOutSplit& split,
                                            std::size_t ratio,
                                            std::uint64_t seed) {
  if (ratio < 1) throw ConfigError("sample_train_negatives: ratio must be >= 1");
  const InteractionSet& train = split.train;
  const std::size_t n_items = train.item_count();

  NegativeSampleResult result;
  for (std::size_t u = 0; u < train.user_count(); ++u) {
    const auto& positives = train.items_by_user[u];
    if (positives.empty()) continue;

    // forbidden candidates: train items plus the held-out item
    std::vector<std::size_t> forbidden = positives;
    if (split.held_out[u] >= 0) {
      const auto h = static_cast<std::size_t>(split.held_out[u]);
      forbidden.insert(std::lower_bound(forbidden.begin(), forbidden.end(), h), h);
    }
    const std::size_t free_items = n_items - forbidden.size();

    rng::Stream stream(rng::key(seed, 0x6e6567, u));
    if (free_items == 0) ++result.users_without_negatives;

    for (std::size_t pos : positives) {
      result.samples.push_back({u, pos, 1});
      if (free_items == 0) continue;
      for (std::size_t k = 0; k < ratio; ++k) {
        std::size_t candidate;
        if (free_items * 4 >= n_items) {
          do {
            candidate = stream.next_below(n_items);
          } while (std::binary_search(forbidden.begin(), forbidden.end(),
                                      candidate));
        } else {
          // sparse leftovers: index into the complement directly
          std::size_t want = stream.next_below(free_items);
          candidate = 0;
          for (std::size_t item = 0, skipped = 0; item < n_items; ++item) {
            if (std::binary_search(forbidden.begin(), forbidden.end(), item)) {
              ++skipped;
              continue;
            }
            if (item - skipped == want) {
              candidate = item;
              break;
            }
          }
        }
        result.samples.push_back({u, candidate, 0});
      }
    }
  }
  return result;
}

}  // namespace pncf
