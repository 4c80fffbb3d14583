#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace tw {

using Json = nlohmann::ordered_json;

struct CheckItem {
    std::string name;
    bool pass = false;
    Json detail;
    // the printed statement is false; the item certifies the exact discrepancy
    bool erratum = false;
};

struct AuditReport {
    std::string name;
    std::vector<CheckItem> items;

    CheckItem& add(const std::string& n, bool ok, Json detail = Json()) {
        items.push_back({n, ok, std::move(detail), false});
        return items.back();
    }
    bool pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    size_t failures() const {
        size_t n = 0;
        for (const auto& it : items) n += it.pass ? 0 : 1;
        return n;
    }
    void merge(const AuditReport& o, const std::string& prefix = "") {
        for (auto it : o.items) {
            if (!prefix.empty()) it.name = prefix + "." + it.name;
            items.push_back(std::move(it));
        }
    }
    Json json() const {
        Json j;
        j["name"] = name;
        j["pass"] = pass();
        Json arr = Json::array();
        for (const auto& it : items) {
            Json e;
            e["check"] = it.name;
            e["pass"] = it.pass;
            if (it.erratum) e["erratum"] = true;
            if (!it.detail.is_null()) e["detail"] = it.detail;
            arr.push_back(std::move(e));
        }
        j["checks"] = std::move(arr);
        return j;
    }
};

} // namespace tw
