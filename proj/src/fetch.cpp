#include "wikibias/fetch.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "wikibias/common.hpp"

namespace wikibias {

namespace {

std::string cache_filename(const std::string& id) {
    std::string name;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '-' || c == '_';
        name.push_back(ok ? c : '_');
    }
    return name + ".json";
}

std::optional<std::string> read_cache(const std::filesystem::path& dir,
                                      const std::string& id) {
    std::ifstream in(dir / cache_filename(id), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void write_cache(const std::filesystem::path& dir, const std::string& id,
                 const std::string& body) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / cache_filename(id), std::ios::binary);
    if (!out) throw IoError("cannot write cache file for id " + id);
    out << body;
}

std::string url_encode_title(const std::string& title) {
    std::string out;
    for (char c : title) {
        if (c == ' ') {
            out.push_back('_');  // Wikipedia title convention
        } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                   (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' ||
                   c == '~') {
            out.push_back(c);
        } else {
            char buf[4];
            std::snprintf(buf, sizeof(buf), "%%%02X",
                          static_cast<unsigned char>(c));
            out += buf;
        }
    }
    return out;
}

struct Endpoint {
    std::string base;  // scheme://host[:port]
    std::string path_prefix;
};

Endpoint split_endpoint(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must include a scheme: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, ""};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::optional<std::string> extract_from_body(const std::string& body) {
    nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("extract") ||
        !j["extract"].is_string()) {
        return std::nullopt;
    }
    std::string extract = j["extract"].get<std::string>();
    return extract.empty() ? std::nullopt : std::optional<std::string>(extract);
}

}  // namespace

FetchResult fetch_overviews(const std::vector<FetchItem>& items,
                            const FetchOptions& options) {
    FetchResult result;
    result.fragment.provenance = "fetch " + options.endpoint;

    std::unique_ptr<httplib::Client> client;
    Endpoint ep;
    if (!options.offline) {
        ep = split_endpoint(options.endpoint);
        client = std::make_unique<httplib::Client>(ep.base);
        client->set_follow_location(true);
    }

    const auto pause = std::chrono::milliseconds(
        options.rate_limit_per_sec > 0
            ? static_cast<long>(1000.0 / options.rate_limit_per_sec)
            : 0);
    bool made_request = false;

    for (const auto& item : items) {
        std::optional<std::string> body = read_cache(options.cache_dir, item.id);
        if (!body) {
            if (options.offline) {
                result.failures.push_back({item.id, "not in cache (offline mode)"});
                continue;
            }
            if (made_request && pause.count() > 0) std::this_thread::sleep_for(pause);
            made_request = true;

            std::string path = ep.path_prefix + "/" + url_encode_title(item.title);
            std::string reason = "unreachable";
            for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
                auto res = client->Get(path);
                if (!res) {
                    reason = "transport error: " + httplib::to_string(res.error());
                } else if (res->status == 200) {
                    body = res->body;
                    break;
                } else if (res->status == 404) {
                    reason = "not found";
                    break;  // retrying a 404 is pointless
                } else {
                    reason = "HTTP " + std::to_string(res->status);
                }
                if (attempt < options.max_retries && pause.count() > 0) {
                    std::this_thread::sleep_for(pause);
                }
            }
            if (!body) {
                result.failures.push_back({item.id, reason});
                continue;
            }
            write_cache(options.cache_dir, item.id, *body);
        }

        auto extract = extract_from_body(*body);
        if (!extract) {
            result.failures.push_back({item.id, "malformed response body"});
            continue;
        }

        Biography bio;
        bio.id = item.id;
        bio.gender = item.gender;
        bio.occupation = to_lower_ascii(item.occupation);
        bio.overview = *extract;
        result.fragment.records.push_back(std::move(bio));
    }
    return result;
}

std::vector<FetchItem> load_fetch_items(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open fetch item list: " + path.string());

    std::vector<FetchItem> items;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw DataError("malformed fetch item at line " + std::to_string(lineno));
        }
        FetchItem item;
        item.id = j.value("id", "");
        item.title = j.value("title", item.id);
        item.occupation = j.value("occupation", "");
        std::string g = to_lower_ascii(j.value("gender", ""));
        if (item.id.empty() || (g != "female" && g != "male")) {
            throw DataError("fetch item at line " + std::to_string(lineno) +
                            " needs id and gender female/male");
        }
        item.gender = (g == "female") ? Gender::Female : Gender::Male;
        items.push_back(std::move(item));
    }
    return items;
}

}  // namespace wikibias
