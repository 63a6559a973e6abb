#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace partref {

// Counters accumulated by group_by_pmc.
struct GroupingStats {
    std::size_t calls = 0;
    std::size_t items = 0;
    std::size_t sorted_items = 0;  // items that went through the comparison sort
    std::size_t comparisons = 0;   // key comparisons performed by the sort
};

namespace detail {

// Boyer-Moore vote over items[begin, end) skipping index `skip`.
template <class T, class KeyFn>
std::string_view majority_vote(const std::vector<T>& items, KeyFn& key, std::size_t skip) {
    std::string_view candidate;
    std::size_t count = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i == skip) continue;
        std::string_view k = key(items[i]);
        if (count == 0) {
            candidate = k;
            count = 1;
        } else if (k == candidate) {
            ++count;
        } else {
            --count;
        }
    }
    return candidate;
}

template <class T, class KeyFn>
std::size_t frequency(const std::vector<T>& items, KeyFn& key, std::string_view k) {
    std::size_t n = 0;
    for (const T& item : items)
        if (key(item) == k) ++n;
    return n;
}

}  // namespace detail

/// Computes a possible majority candidate of the keys: a key held by at
/// least half of the items, or an arbitrary key when no such key exists.
///
/// A plain Boyer-Moore vote finds every strict majority but can miss a key
/// held by exactly half of the items; the two extra votes with one item left
/// out turn such a key into a strict majority of the remaining items.
/// All passes are linear.
template <class T, class KeyFn>
std::string_view possible_majority_candidate(const std::vector<T>& items, KeyFn key) {
    if (items.empty()) return {};
    const std::size_t none = items.size();
    std::string_view candidate = detail::majority_vote(items, key, none);
    if (2 * detail::frequency(items, key, candidate) >= items.size()) return candidate;

    // Any key with exactly n/2 occurrences: either it is not key(items[0]),
    // then skipping item 0 makes it a strict majority, or it is, then skipping
    // the first item with a different key does.
    std::string_view alt = detail::majority_vote(items, key, 0);
    if (2 * detail::frequency(items, key, alt) >= items.size()) return alt;
    const std::string_view first = key(items[0]);
    for (std::size_t i = 1; i < items.size(); ++i) {
        if (key(items[i]) != first) {
            alt = detail::majority_vote(items, key, i);
            if (2 * detail::frequency(items, key, alt) >= items.size()) return alt;
            break;
        }
    }
    return candidate;
}

/// Groups `items` by key: on return, items with equal keys are contiguous,
/// groups appear in ascending key order, and items inside a group keep their
/// input order. Returns the group start offsets followed by items.size().
///
/// Only the items whose key differs from a possible majority candidate are
/// sorted, so the sort cost is bounded by twice the number of items outside
/// the largest group.
template <class T, class KeyFn>
std::vector<std::size_t> group_by_pmc(std::vector<T>& items, KeyFn key, GroupingStats* stats = nullptr) {
    std::vector<std::size_t> bounds;
    if (stats) {
        ++stats->calls;
        stats->items += items.size();
    }
    if (items.empty()) {
        bounds.push_back(0);
        return bounds;
    }

    const std::string pmc(possible_majority_candidate(items, key));

    std::vector<T> majority;
    std::vector<T> rest;
    majority.reserve(items.size());
    for (T& item : items) {
        if (key(item) == pmc)
            majority.push_back(std::move(item));
        else
            rest.push_back(std::move(item));
    }

    std::size_t comparisons = 0;
    std::stable_sort(rest.begin(), rest.end(), [&](const T& a, const T& b) {
        ++comparisons;
        return key(a) < key(b);
    });
    if (stats) {
        stats->sorted_items += rest.size();
        stats->comparisons += comparisons;
    }

    // Merge the majority group into its key position among the sorted rest.
    auto insert_at = std::partition_point(rest.begin(), rest.end(), [&](const T& t) { return key(t) < pmc; });
    const std::size_t before = static_cast<std::size_t>(insert_at - rest.begin());

    items.clear();
    for (std::size_t i = 0; i < before; ++i) items.push_back(std::move(rest[i]));
    for (T& t : majority) items.push_back(std::move(t));
    for (std::size_t i = before; i < rest.size(); ++i) items.push_back(std::move(rest[i]));

    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i == 0 || key(items[i]) != key(items[i - 1])) bounds.push_back(i);
    }
    bounds.push_back(items.size());
    return bounds;
}

}  // namespace partref
