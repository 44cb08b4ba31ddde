#ifndef WIKIBIAS_FETCH_HPP
#define WIKIBIAS_FETCH_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "wikibias/corpus.hpp"

namespace wikibias {

/// One item to fetch: identity plus the metadata the summary endpoint
/// cannot supply.
struct FetchItem {
    std::string id;
    std::string title;  // page title for the summary endpoint
    Gender gender = Gender::Female;
    std::string occupation;
};

struct FetchOptions {
    std::string endpoint;  // e.g. https://en.wikipedia.org/api/rest_v1/page/summary
    std::filesystem::path cache_dir;
    double rate_limit_per_sec = 2.0;
    int max_retries = 3;
    bool offline = false;  // serve from cache only, never touch the network
};

struct FetchFailure {
    std::string id;
    std::string reason;
};

struct FetchResult {
    Corpus fragment;  // records in input id order, failures excluded
    std::vector<FetchFailure> failures;
};

/// Fetches page-summary extracts, caching raw response bodies one file
/// per id so reruns work offline. Item failures are collected, not fatal.
FetchResult fetch_overviews(const std::vector<FetchItem>& items,
                            const FetchOptions& options);

std::vector<FetchItem> load_fetch_items(const std::filesystem::path& path);

}  // namespace wikibias

#endif
